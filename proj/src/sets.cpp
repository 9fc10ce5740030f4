#include "logcap/sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "logcap/errors.hpp"

namespace logcap {

BandSet::BandSet(std::vector<double> endpoints) : endpoints_(std::move(endpoints)) {
    if (endpoints_.empty() || endpoints_.size() % 2 != 0)
        throw input_error("BandSet needs a positive even number of endpoints");
    for (double e : endpoints_)
        if (!std::isfinite(e)) throw input_error("BandSet endpoints must be finite");
    for (std::size_t i = 1; i < endpoints_.size(); ++i)
        if (!(endpoints_[i - 1] < endpoints_[i]))
            throw input_error("BandSet endpoints must be strictly increasing");
}

BandSet BandSet::interval(double a, double b) { return BandSet({a, b}); }

std::pair<BandSet, std::vector<double>> BandSet::merged(std::vector<double> endpoints,
                                                        double tol) {
    std::sort(endpoints.begin(), endpoints.end());
    if (endpoints.empty() || endpoints.size() % 2 != 0)
        throw input_error("merged BandSet needs an even number of endpoints");
    std::vector<double> kept;
    std::vector<double> touched;
    // endpoints pair up as [e0,e1],[e2,e3],...; a shared endpoint between
    // consecutive bands (within tol) closes the gap
    for (std::size_t i = 0; i + 1 < endpoints.size(); i += 2) {
        const double lo = endpoints[i];
        const double hi = endpoints[i + 1];
        if (!kept.empty() && lo - kept.back() <= tol) {
            touched.push_back(0.5 * (lo + kept.back()));
            kept.pop_back();
            kept.push_back(hi);
        } else {
            kept.push_back(lo);
            kept.push_back(hi);
        }
    }
    return {BandSet(std::move(kept)), std::move(touched)};
}

std::pair<double, double> BandSet::band(std::size_t j) const {
    if (j >= band_count()) throw input_error("band index out of range");
    return {endpoints_[2 * j], endpoints_[2 * j + 1]};
}

double BandSet::total_length() const {
    double s = 0.0;
    for (std::size_t j = 0; j < band_count(); ++j) s += endpoints_[2 * j + 1] - endpoints_[2 * j];
    return s;
}

std::vector<std::pair<double, double>> BandSet::gaps() const {
    std::vector<std::pair<double, double>> out;
    for (std::size_t j = 0; j + 1 < band_count(); ++j)
        out.emplace_back(endpoints_[2 * j + 1], endpoints_[2 * j + 2]);
    return out;
}

bool BandSet::contains(double x, double tol) const {
    for (std::size_t j = 0; j < band_count(); ++j)
        if (x >= endpoints_[2 * j] - tol && x <= endpoints_[2 * j + 1] + tol) return true;
    return false;
}

double BandSet::distance(double x) const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < band_count(); ++j) {
        const double lo = endpoints_[2 * j], hi = endpoints_[2 * j + 1];
        double d = 0.0;
        if (x < lo)
            d = lo - x;
        else if (x > hi)
            d = x - hi;
        best = std::min(best, d);
    }
    return best;
}

double BandSet::distance(std::complex<double> z) const {
    const double d = distance(z.real());
    return std::hypot(d, z.imag());
}

bool BandSet::subset_of(const BandSet& other, double tol) const {
    for (std::size_t j = 0; j < band_count(); ++j) {
        const auto [lo, hi] = band(j);
        bool covered = false;
        for (std::size_t k = 0; k < other.band_count(); ++k) {
            const auto [olo, ohi] = other.band(k);
            if (lo >= olo - tol && hi <= ohi + tol) {
                covered = true;
                break;
            }
        }
        if (!covered) return false;
    }
    return true;
}

PointCloud::PointCloud(std::vector<std::complex<double>> pts, bool conj_sym)
    : points(std::move(pts)), conj_symmetric(conj_sym) {
    if (points.empty()) throw input_error("PointCloud must be non-empty");
    if (!conj_symmetric) return;
    std::map<std::pair<double, double>, int> count;
    for (const auto& p : points) ++count[{p.real(), p.imag()}];
    for (const auto& [key, c] : count) {
        if (key.second == 0.0) continue;
        auto it = count.find({key.first, -key.second});
        if (it == count.end() || it->second != c)
            throw input_error("conj_symmetric PointCloud lacks the conjugate of a point");
    }
}

namespace {

double directed_band_distance(const BandSet& a, const BandSet& b) {
    double worst = 0.0;
    for (double e : a.endpoints()) worst = std::max(worst, b.distance(e));
    // dist(., b) has interior local maxima only at b's gap midpoints
    for (const auto& [lo, hi] : b.gaps()) {
        const double mid = 0.5 * (lo + hi);
        if (a.contains(mid)) worst = std::max(worst, b.distance(mid));
    }
    return worst;
}

}  // namespace

double set_distance(const BandSet& a, const BandSet& b) {
    return std::max(directed_band_distance(a, b), directed_band_distance(b, a));
}

double set_distance(const PointCloud& a, const PointCloud& b) {
    auto directed = [](const PointCloud& from, const PointCloud& to) {
        double worst = 0.0;
        for (const auto& p : from.points) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& q : to.points) best = std::min(best, std::abs(p - q));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(directed(a, b), directed(b, a));
}

}  // namespace logcap

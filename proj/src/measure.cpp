#include "logcap/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "logcap/errors.hpp"
#include "logcap/kernels.hpp"
#include "logcap/roots.hpp"

namespace logcap {

DiscreteMeasure::DiscreteMeasure(std::vector<WeightedAtom> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw input_error("DiscreteMeasure must have at least one atom");
    double sum = 0.0;
    for (const auto& a : atoms_) {
        if (!(a.weight >= 0.0)) throw input_error("DiscreteMeasure weights must be >= 0");
        sum += a.weight;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw input_error("DiscreteMeasure weights must sum to 1 (got " + std::to_string(sum) +
                          ")");
    // pin the sum to exactly 1.0
    for (int pass = 0; pass < 5 && weight_sum() != 1.0; ++pass) {
        auto it = std::max_element(atoms_.begin(), atoms_.end(),
                                   [](const auto& a, const auto& b) { return a.weight < b.weight; });
        it->weight += 1.0 - weight_sum();
    }
}

DiscreteMeasure DiscreteMeasure::uniform(const std::vector<std::complex<double>>& points) {
    if (points.empty()) throw input_error("uniform measure needs points");
    std::vector<WeightedAtom> atoms;
    atoms.reserve(points.size());
    const double w = 1.0 / static_cast<double>(points.size());
    for (const auto& p : points) atoms.push_back({p, w});
    return DiscreteMeasure(std::move(atoms));
}

double DiscreteMeasure::weight_sum() const {
    double s = 0.0;
    for (const auto& a : atoms_) s += a.weight;
    return s;
}

std::vector<std::complex<double>> DiscreteMeasure::moments(std::size_t max_order) const {
    std::vector<std::complex<double>> out(max_order, {0.0, 0.0});
    for (const auto& a : atoms_) {
        std::complex<double> zk{1.0, 0.0};
        for (std::size_t k = 0; k < max_order; ++k) {
            zk *= a.point;
            out[k] += a.weight * zk;
        }
    }
    return out;
}

DiscreteMeasure counting_measure(const std::vector<std::complex<double>>& root_multiset,
                                 double merge_tol) {
    if (root_multiset.empty()) throw input_error("counting_measure needs at least one root");
    std::vector<std::complex<double>> sorted = root_multiset;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
    const std::size_t deg = sorted.size();
    std::vector<std::complex<double>> reps;
    std::vector<std::size_t> counts;
    for (const auto& z : sorted) {
        if (!reps.empty()) {
            const double scale = 1.0 + std::abs(z);
            if (std::abs(z - reps.back()) <= merge_tol * scale) {
                // running mean keeps the representative centered
                const double n = static_cast<double>(counts.back());
                reps.back() = (reps.back() * n + z) / (n + 1.0);
                ++counts.back();
                continue;
            }
        }
        reps.push_back(z);
        counts.push_back(1);
    }
    std::vector<WeightedAtom> atoms(reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i)
        atoms[i] = {reps[i], static_cast<double>(counts[i]) / static_cast<double>(deg)};
    return DiscreteMeasure(std::move(atoms));
}

DiscreteMeasure counting_measure(const RationalPoly& p, double root_tol, double merge_tol) {
    if (p.degree() < 1) throw input_error("counting_measure needs degree >= 1");
    return counting_measure(roots(p, root_tol), merge_tol);
}

double measure_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                        std::size_t max_order) {
    if (max_order == 0) throw input_error("measure_distance needs max_order >= 1");
    const auto a = mu.moments(max_order);
    const auto b = nu.moments(max_order);
    double worst = 0.0;
    for (std::size_t k = 0; k < max_order; ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
    return worst;
}

MeasureGapReport measure_distance_report(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                         std::size_t max_order) {
    MeasureGapReport rep;
    rep.moment_distance = measure_distance(mu, nu, max_order);

    std::complex<double> center{0.0, 0.0};
    std::size_t n = 0;
    for (const auto* m : {&mu, &nu})
        for (const auto& a : m->atoms()) {
            center += a.point;
            ++n;
        }
    center /= static_cast<double>(n);
    double radius = 0.0;
    for (const auto* m : {&mu, &nu})
        for (const auto& a : m->atoms()) radius = std::max(radius, std::abs(a.point - center));
    radius += 1.0;

    auto potential = [](const DiscreteMeasure& m, std::complex<double> z) {
        std::vector<double> re, im, w;
        re.reserve(m.size());
        im.reserve(m.size());
        w.reserve(m.size());
        for (const auto& a : m.atoms()) {
            re.push_back(a.point.real());
            im.push_back(a.point.imag());
            w.push_back(a.weight);
        }
        return -0.5 * kernels::active_kernels().wsum_log_dist2(re.data(), im.data(), w.data(),
                                                               re.size(), z.real(), z.imag());
    };

    double gap = 0.0;
    for (int k = 0; k < 64; ++k) {
        const double ang = 2.0 * std::numbers::pi * k / 64.0;
        const std::complex<double> z = center + radius * std::complex<double>{std::cos(ang),
                                                                              std::sin(ang)};
        gap = std::max(gap, std::abs(potential(mu, z) - potential(nu, z)));
    }
    rep.potential_gap = gap;
    return rep;
}

}  // namespace logcap

#include "logcap/diophantine.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <utility>

#include "logcap/errors.hpp"
#include "logcap/parallel.hpp"
#include "logcap/potential.hpp"
#include "logcap/roots.hpp"

namespace logcap {

namespace {

using cd = std::complex<double>;

constexpr double kEnumerationBudget = 1e7;

Integer binomial(unsigned n, unsigned k) {
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

void validate_box(const CoeffBox& box, int n) {
    if (box.n != n || box.bounds.size() != static_cast<std::size_t>(n) + 1)
        throw input_error("coefficient box does not match degree " + std::to_string(n));
    for (long b : box.bounds)
        if (b < 0) throw input_error("coefficient box bounds must be >= 0");
}

double horner_abs(const std::vector<double>& coeffs, double x) {
    double v = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) v = v * x + coeffs[k];
    return std::abs(v);
}

/// Golden-section maximization of |f| on [lo, hi].
template <class F>
double golden_max(F&& f, double lo, double hi) {
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = hi - phi * (hi - lo);
    double d = lo + phi * (hi - lo);
    double fc = f(c);
    double fd = f(d);
    for (int it = 0; it < 80 && hi - lo > 1e-13 * (1.0 + std::abs(lo) + std::abs(hi)); ++it) {
        if (fc < fd) {
            lo = c;
            c = d;
            fc = fd;
            d = lo + phi * (hi - lo);
            fd = f(d);
        } else {
            hi = d;
            d = c;
            fd = fc;
            c = hi - phi * (hi - lo);
            fc = f(c);
        }
    }
    return std::max(fc, fd);
}

/// Odometer over integer vectors a with |a[k]| <= bounds[k] for k < dims,
/// lowest index fastest. Returns false once every vector has been visited.
bool advance(std::vector<long>& a, const std::vector<long>& bounds, std::size_t dims) {
    for (std::size_t k = 0; k < dims; ++k) {
        if (a[k] < bounds[k]) {
            ++a[k];
            return true;
        }
        a[k] = -bounds[k];
    }
    return false;
}

template <class Sup>
std::vector<SmallNormEntry> small_norm_impl(int n, const CoeffBox& box, Sup&& sup) {
    if (n < 0) throw input_error("small_norm_search: negative degree");
    validate_box(box, n);
    if (box.candidate_count() > kEnumerationBudget)
        throw budget_error("small_norm_search: coefficient box exceeds the 10^7 candidate budget");

    std::vector<SmallNormEntry> out;
    std::vector<long> a(box.bounds.size());
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = -box.bounds[k];
    std::vector<double> coeffs(a.size());
    do {
        // One representative per {a, -a}: first nonzero entry positive.
        long first = 0;
        for (long v : a)
            if (v != 0) {
                first = v;
                break;
            }
        if (first <= 0) continue;
        for (std::size_t k = 0; k < a.size(); ++k) coeffs[k] = static_cast<double>(a[k]);
        double s = sup(coeffs);
        if (s < 1.0) out.push_back({a, s});
    } while (advance(a, box.bounds, a.size()));

    std::sort(out.begin(), out.end(), [](const SmallNormEntry& x, const SmallNormEntry& y) {
        if (x.sup != y.sup) return x.sup < y.sup;
        return x.coeffs < y.coeffs;
    });
    return out;
}

/// Row 1-norms of the inverse Vandermonde at n+1 Fekete points: coefficient
/// bounds for every polynomial with |values| < 1 on the set, so the sampled
/// box contains the unit-sup coefficient region.
std::vector<double> vandermonde_row_bounds(const BandSet& set, int n) {
    FeketeResult fek = fekete_points(set, n + 1);
    Eigen::MatrixXd v(n + 1, n + 1);
    for (int i = 0; i <= n; ++i) {
        double x = fek.points[static_cast<std::size_t>(i)].real();
        double p = 1.0;
        for (int j = 0; j <= n; ++j) {
            v(i, j) = p;
            p *= x;
        }
    }
    Eigen::MatrixXd inv = v.fullPivLu().inverse();
    std::vector<double> bounds(static_cast<std::size_t>(n) + 1, 0.0);
    for (int k = 0; k <= n; ++k) {
        double row = 0.0;
        for (int j = 0; j <= n; ++j) row += std::abs(inv(k, j));
        bounds[static_cast<std::size_t>(k)] = row;
    }
    return bounds;
}

/// SplitMix64 finalizer: decorrelates per-chunk stream seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t chunk) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (chunk + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

VolumeEstimate volume_mc_impl(const BandSet& set, int n, std::uint64_t samples,
                              std::uint64_t seed, const std::vector<double>& bounds) {
    if (n < 1) throw input_error("fn_volume_mc: degree must be >= 1");
    if (samples < 10000) throw input_error("fn_volume_mc: need at least 10^4 samples");
    double box_volume = 1.0;
    for (double b : bounds) {
        if (b <= 0.0) throw input_error("fn_volume_mc: degenerate sampling box");
        box_volume *= 2.0 * b;
    }

    // Fixed chunk grid with per-chunk seeded streams: the estimate depends
    // on (samples, seed) only, never on how many workers run the chunks.
    constexpr std::uint64_t kChunks = 64;
    std::uint64_t per_chunk[kChunks];
    std::uint64_t chunk_hits[kChunks] = {};
    for (std::uint64_t c = 0; c < kChunks; ++c)
        per_chunk[c] = samples / kChunks + (c < samples % kChunks ? 1 : 0);
    parallel_chunks(kChunks, [&](unsigned c) {
        std::mt19937_64 rng(mix_seed(seed, c));
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        std::vector<double> coeffs(bounds.size());
        std::uint64_t local = 0;
        for (std::uint64_t s = 0; s < per_chunk[c]; ++s) {
            for (std::size_t k = 0; k < bounds.size(); ++k) coeffs[k] = bounds[k] * unit(rng);
            if (sup_norm(set, coeffs) < 1.0) ++local;
        }
        chunk_hits[c] = local;
    });
    std::uint64_t hits = 0;
    for (std::uint64_t c = 0; c < kChunks; ++c) hits += chunk_hits[c];

    VolumeEstimate est;
    est.box_volume = box_volume;
    est.hits = hits;
    est.samples = samples;
    est.zero_hits = hits == 0;
    est.volume = box_volume * static_cast<double>(hits) / static_cast<double>(samples);
    est.normalized_log = hits == 0 ? -std::numeric_limits<double>::infinity()
                                   : 2.0 / (static_cast<double>(n) * n) * std::log(est.volume);
    return est;
}

template <class Member>
std::vector<GaussianIntPoly> totally_in_impl(double rho, int n, Member&& inside) {
    if (n < 1 || n > 8) throw input_error("totally_in_enumerate: degree must be in 1..8");
    CoeffBox box = CoeffBox::from_radius(n, rho);
    double candidates = 1.0;
    for (int k = 0; k < n; ++k) candidates *= 2.0 * static_cast<double>(box.bounds[static_cast<std::size_t>(k)]) + 1.0;
    if (candidates > kEnumerationBudget)
        throw budget_error("totally_in_enumerate: binomial-radius box exceeds the 10^7 budget");

    std::vector<GaussianIntPoly> out;
    std::vector<long> a(static_cast<std::size_t>(n) + 1, 0);
    for (int k = 0; k < n; ++k) a[static_cast<std::size_t>(k)] = -box.bounds[static_cast<std::size_t>(k)];
    a[static_cast<std::size_t>(n)] = 1; // monic
    std::vector<cd> coeffs(a.size());
    do {
        for (std::size_t k = 0; k < a.size(); ++k) coeffs[k] = static_cast<double>(a[k]);
        bool all_in = true;
        for (cd r : roots(coeffs))
            if (!inside(r)) {
                all_in = false;
                break;
            }
        if (!all_in) continue;
        std::vector<GaussianInt> ic(a.size());
        for (std::size_t k = 0; k < a.size(); ++k) ic[k] = {Integer(a[k]), Integer(0)};
        out.emplace_back(std::move(ic));
    } while (advance(a, box.bounds, static_cast<std::size_t>(n)));
    return out;
}

/// Exact quotient, or nothing when den does not divide num.
std::optional<RationalPoly> exact_divide(RationalPoly num, const RationalPoly& den) {
    if (den.is_zero() || num.degree() < den.degree()) return std::nullopt;
    std::vector<GaussianRational> q(static_cast<std::size_t>(num.degree() - den.degree()) + 1);
    while (!num.is_zero() && num.degree() >= den.degree()) {
        std::size_t shift = static_cast<std::size_t>(num.degree() - den.degree());
        GaussianRational factor = num.leading() / den.leading();
        q[shift] = factor;
        num -= den * RationalPoly::monomial(shift, factor);
    }
    if (!num.is_zero()) return std::nullopt;
    return RationalPoly(std::move(q));
}

std::vector<RationalPoly> cyclotomic_table() {
    auto make = [](std::vector<int> c) {
        std::vector<GaussianRational> g(c.size());
        for (std::size_t k = 0; k < c.size(); ++k) g[k] = GaussianRational(c[static_cast<std::size_t>(k)]);
        return RationalPoly(std::move(g));
    };
    // Cyclotomic polynomials of degree <= 4, ascending coefficients.
    return {
        make({-1, 1}),          // Phi_1
        make({1, 1}),           // Phi_2
        make({1, 1, 1}),        // Phi_3
        make({1, 0, 1}),        // Phi_4
        make({1, -1, 1}),       // Phi_6
        make({1, 1, 1, 1, 1}),  // Phi_5
        make({1, 0, 0, 0, 1}),  // Phi_8
        make({1, -1, 1, -1, 1}),// Phi_10
        make({1, 0, -1, 0, 1}), // Phi_12
    };
}

/// Min over root-to-target assignments of the max pair distance, by subset
/// dynamic programming (targets in popcount order).
double bottleneck_distance(const std::vector<cd>& targets, const std::vector<cd>& pts) {
    std::size_t n = targets.size();
    std::vector<double> d(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::abs(targets[i] - pts[j]);
    std::vector<double> dp(std::size_t{1} << n, std::numeric_limits<double>::infinity());
    dp[0] = 0.0;
    for (std::size_t mask = 1; mask < dp.size(); ++mask) {
        std::size_t i = static_cast<std::size_t>(std::popcount(mask)) - 1;
        for (std::size_t j = 0; j < n; ++j) {
            if (!(mask >> j & 1)) continue;
            double cand = std::max(dp[mask ^ (std::size_t{1} << j)], d[i * n + j]);
            dp[mask] = std::min(dp[mask], cand);
        }
    }
    return dp.back();
}

}  // namespace

CoeffBox CoeffBox::from_radius(int n, double rho) {
    if (n < 0 || !(rho >= 0.0)) throw input_error("CoeffBox::from_radius: need n >= 0, rho >= 0");
    CoeffBox box;
    box.n = n;
    box.bounds.resize(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        double b = binomial(static_cast<unsigned>(n), static_cast<unsigned>(k)).get_d() *
                   std::pow(rho, k);
        box.bounds[static_cast<std::size_t>(n - k)] = static_cast<long>(std::floor(b + 1e-9));
    }
    return box;
}

double CoeffBox::candidate_count() const {
    double count = 1.0;
    for (long b : bounds) count *= 2.0 * static_cast<double>(b) + 1.0;
    return count;
}

double sup_norm(const BandSet& set, const std::vector<double>& coeffs) {
    if (coeffs.empty()) return 0.0;
    if (set.band_count() == 0) throw input_error("sup_norm: empty band set");
    int n = static_cast<int>(coeffs.size()) - 1;
    int grid = 32 * std::max(n, 1) + 1;
    auto f = [&coeffs](double x) { return horner_abs(coeffs, x); };

    double best = 0.0;
    std::vector<double> xs(static_cast<std::size_t>(grid));
    std::vector<double> vs(static_cast<std::size_t>(grid));
    for (std::size_t j = 0; j < set.band_count(); ++j) {
        auto [lo, hi] = set.band(j);
        for (int i = 0; i < grid; ++i) {
            double x = lo + (hi - lo) * i / (grid - 1);
            xs[static_cast<std::size_t>(i)] = x;
            vs[static_cast<std::size_t>(i)] = f(x);
        }
        for (int i = 0; i < grid; ++i) {
            // Grid values always participate: refinement may only improve the
            // estimate, and exact values at grid nodes (e.g. integer points)
            // must not be replaced by nearby interior evaluations.
            double v = vs[static_cast<std::size_t>(i)];
            best = std::max(best, v);
            bool local_max = (i == 0 || vs[static_cast<std::size_t>(i) - 1] <= v) &&
                             (i == grid - 1 || vs[static_cast<std::size_t>(i) + 1] <= v);
            if (!local_max) continue;
            double a = xs[static_cast<std::size_t>(std::max(i - 1, 0))];
            double b = xs[static_cast<std::size_t>(std::min(i + 1, grid - 1))];
            if (a < b) best = std::max(best, golden_max(f, a, b));
        }
    }
    return best;
}

double sup_norm(const PointCloud& cloud, const std::vector<double>& coeffs) {
    if (cloud.points.empty()) throw input_error("sup_norm: empty point cloud");
    double best = 0.0;
    for (cd z : cloud.points) {
        cd v = 0.0;
        for (std::size_t k = coeffs.size(); k-- > 0;) v = v * z + coeffs[k];
        best = std::max(best, std::abs(v));
    }
    return best;
}

std::vector<SmallNormEntry> small_norm_search(const BandSet& set, int n, const CoeffBox& box) {
    return small_norm_impl(n, box, [&set](const std::vector<double>& c) { return sup_norm(set, c); });
}

std::vector<SmallNormEntry> small_norm_search(const PointCloud& cloud, int n, const CoeffBox& box) {
    return small_norm_impl(n, box,
                           [&cloud](const std::vector<double>& c) { return sup_norm(cloud, c); });
}

VolumeEstimate fn_volume_mc(const BandSet& set, int n, std::uint64_t samples, std::uint64_t seed) {
    if (n < 1) throw input_error("fn_volume_mc: degree must be >= 1");
    return volume_mc_impl(set, n, samples, seed, vandermonde_row_bounds(set, n));
}

VolumeEstimate fn_volume_mc(const BandSet& set, int n, std::uint64_t samples, std::uint64_t seed,
                            const CoeffBox& box) {
    validate_box(box, n);
    std::vector<double> bounds(box.bounds.size());
    for (std::size_t k = 0; k < bounds.size(); ++k) bounds[k] = static_cast<double>(box.bounds[k]);
    return volume_mc_impl(set, n, samples, seed, bounds);
}

std::vector<GaussianIntPoly> totally_in_enumerate(double disk_radius, int n) {
    if (!(disk_radius > 0.0)) throw input_error("totally_in_enumerate: disk radius must be > 0");
    return totally_in_impl(disk_radius, n,
                           [disk_radius](cd z) { return std::abs(z) <= disk_radius + 1e-9; });
}

std::vector<GaussianIntPoly> totally_in_enumerate(const BandSet& set, int n) {
    if (set.band_count() == 0) throw input_error("totally_in_enumerate: empty band set");
    double rho = std::max(std::abs(set.min()), std::abs(set.max()));
    return totally_in_impl(rho, n, [&set](cd z) { return set.distance(z) <= 1e-9; });
}

bool factors_into_z_and_cyclotomics(const GaussianIntPoly& p) {
    if (!p.is_real() || p.degree() < 0) return false;
    static const std::vector<RationalPoly> table = cyclotomic_table();
    RationalPoly rest = p.to_rational();
    while (rest.degree() > 0 && rest.coeff(0).is_zero()) {
        auto q = exact_divide(rest, RationalPoly::monomial(1));
        rest = std::move(*q);
    }
    bool progress = true;
    while (rest.degree() > 0 && progress) {
        progress = false;
        for (const RationalPoly& phi : table) {
            if (auto q = exact_divide(rest, phi)) {
                rest = std::move(*q);
                progress = true;
                break;
            }
        }
    }
    return rest == RationalPoly::constant(GaussianRational(1));
}

RationalPoly bernstein(const std::vector<Rational>& f_values, int n) {
    if (n < 1) throw input_error("bernstein: degree must be >= 1");
    if (f_values.size() != static_cast<std::size_t>(n) + 1)
        throw input_error("bernstein: expected " + std::to_string(n + 1) + " sampled values");
    // Coefficient of x^m in sum_v f_v C(n,v) x^v (1-x)^{n-v}, exact.
    std::vector<GaussianRational> coeffs(static_cast<std::size_t>(n) + 1);
    for (int m = 0; m <= n; ++m) {
        Rational c(0);
        for (int v = 0; v <= m; ++v) {
            Integer w = binomial(static_cast<unsigned>(n), static_cast<unsigned>(v)) *
                        binomial(static_cast<unsigned>(n - v), static_cast<unsigned>(m - v));
            if ((m - v) % 2 != 0) w = -w;
            c += f_values[static_cast<std::size_t>(v)] * Rational(w);
        }
        coeffs[static_cast<std::size_t>(m)] = GaussianRational(std::move(c));
    }
    return RationalPoly(std::move(coeffs));
}

NearestConjugateResult nearest_conjugate_set(const std::vector<cd>& targets, int n,
                                             const CoeffBox& box) {
    if (n < 1 || n > 8) throw input_error("nearest_conjugate_set: degree must be in 1..8");
    if (targets.size() != static_cast<std::size_t>(n))
        throw input_error("nearest_conjugate_set: need exactly n targets");
    validate_box(box, n);
    std::vector<bool> paired(targets.size(), false);
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (paired[i] || std::abs(targets[i].imag()) <= 1e-9) continue;
        bool found = false;
        for (std::size_t j = 0; j < targets.size(); ++j) {
            if (j == i || paired[j]) continue;
            if (std::abs(targets[j] - std::conj(targets[i])) <= 1e-9) {
                paired[i] = paired[j] = true;
                found = true;
                break;
            }
        }
        if (!found) throw input_error("nearest_conjugate_set: targets not closed under conjugation");
    }
    double candidates = 1.0;
    for (int k = 0; k < n; ++k) candidates *= 2.0 * static_cast<double>(box.bounds[static_cast<std::size_t>(k)]) + 1.0;
    if (candidates > kEnumerationBudget)
        throw budget_error("nearest_conjugate_set: coefficient box exceeds the 10^7 budget");

    std::vector<long> a(static_cast<std::size_t>(n) + 1, 0);
    for (int k = 0; k < n; ++k) a[static_cast<std::size_t>(k)] = -box.bounds[static_cast<std::size_t>(k)];
    a[static_cast<std::size_t>(n)] = 1;
    std::vector<cd> coeffs(a.size());
    double best = std::numeric_limits<double>::infinity();
    std::vector<long> best_coeffs;
    do {
        for (std::size_t k = 0; k < a.size(); ++k) coeffs[k] = static_cast<double>(a[k]);
        double dist = bottleneck_distance(targets, roots(coeffs));
        if (dist < best) {
            best = dist;
            best_coeffs = a;
        }
    } while (advance(a, box.bounds, static_cast<std::size_t>(n)));

    NearestConjugateResult result;
    std::vector<GaussianInt> ic(best_coeffs.size());
    for (std::size_t k = 0; k < best_coeffs.size(); ++k) ic[k] = {Integer(best_coeffs[k]), Integer(0)};
    result.poly = GaussianIntPoly(std::move(ic));
    result.distance = best;
    result.note = "distance assumes exactly n conjugates; an (n+1)-st conjugate escaping every "
                  "neighborhood of the targets can only lower the achievable distance";
    return result;
}

}  // namespace logcap

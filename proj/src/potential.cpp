#include "logcap/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "logcap/errors.hpp"
#include "logcap/kernels.hpp"

namespace logcap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct SplitPoints {
    std::vector<double> re;
    std::vector<double> im;
    std::vector<double> w;
};

SplitPoints split(const DiscreteMeasure& mu) {
    SplitPoints s;
    s.re.reserve(mu.size());
    s.im.reserve(mu.size());
    s.w.reserve(mu.size());
    for (const auto& a : mu.atoms()) {
        s.re.push_back(a.point.real());
        s.im.push_back(a.point.imag());
        s.w.push_back(a.weight);
    }
    return s;
}

}  // namespace

double log_potential(const DiscreteMeasure& mu, std::complex<double> z) {
    const auto s = split(mu);
    const double wsum = kernels::active_kernels().wsum_log_dist2(
        s.re.data(), s.im.data(), s.w.data(), s.w.size(), z.real(), z.imag());
    if (std::isnan(wsum) || std::isinf(wsum)) {
        // A zero-weight atom at z produces 0 * (-inf); redo carefully.
        double acc = 0.0;
        for (const auto& a : mu.atoms()) {
            if (a.weight == 0.0) continue;
            const double d = std::abs(z - a.point);
            if (d == 0.0) return kInf;
            acc += a.weight * std::log(d);
        }
        return -acc;
    }
    return -0.5 * wsum;
}

double energy(const DiscreteMeasure& mu) {
    if (mu.size() < 2) throw input_error("energy needs at least 2 atoms");
    const auto s = split(mu);
    const auto& k = kernels::active_kernels();
    const std::size_t n = s.w.size();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double zre = s.re[i];
        const double zim = s.im[i];
        const double head = k.wsum_log_dist2(s.re.data(), s.im.data(), s.w.data(), i, zre, zim);
        const double tail = k.wsum_log_dist2(s.re.data() + i + 1, s.im.data() + i + 1,
                                             s.w.data() + i + 1, n - i - 1, zre, zim);
        const double row = head + tail;
        if (std::isnan(row) || std::isinf(row)) {
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i && s.re[j] == zre && s.im[j] == zim)
                    throw input_error("energy: coincident atoms have infinite self-interaction");
            }
            throw input_error("energy: non-finite pair interaction");
        }
        total += s.w[i] * row;
    }
    return -0.5 * total;
}

namespace {

// Grid-restricted coordinate-exchange ascent on sum_{i<j} ln|z_i - z_j|.
struct ExchangeState {
    std::vector<std::size_t> idx;        // grid index of each configuration point
    double log_q2 = -kInf;               // 2 * sum_{i<j} ln|z_i - z_j| (= ln q_n)
};

std::vector<std::complex<double>> gather(const std::vector<double>& gre,
                                         const std::vector<double>& gim,
                                         const std::vector<std::size_t>& idx) {
    std::vector<std::complex<double>> pts;
    pts.reserve(idx.size());
    for (auto k : idx) pts.emplace_back(gre[k], gim[k]);
    return pts;
}

double config_log_q(const std::vector<double>& gre, const std::vector<double>& gim,
                    const std::vector<std::size_t>& idx) {
    double acc = 0.0;
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = i + 1; j < idx.size(); ++j) {
            const double dre = gre[idx[i]] - gre[idx[j]];
            const double dim = gim[idx[i]] - gim[idx[j]];
            acc += std::log(dre * dre + dim * dim);
        }
    return acc;  // equals ln q_n since q_n squares the i<j product
}

bool lex_less(const std::vector<std::complex<double>>& a,
              const std::vector<std::complex<double>>& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
        if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
    }
    return a.size() < b.size();
}

FeketeResult exchange_on_grid(const std::vector<double>& gre, const std::vector<double>& gim,
                              int n, const FeketeOptions& opts) {
    const std::size_t g = gre.size();
    if (n < 2) throw input_error("fekete_points: n must be >= 2");
    if (static_cast<std::size_t>(n) > g)
        throw input_error("fekete_points: n exceeds the candidate grid size");

    const auto& kt = kernels::active_kernels();
    std::vector<std::complex<double>> best_pts;
    double best_log_q = -kInf;

    std::vector<double> score(g);
    std::vector<char> taken(g);
    for (int restart = 0; restart < std::max(1, opts.restarts); ++restart) {
        std::mt19937_64 rng(opts.seed + 0x9e3779b97f4a7c15ULL * (restart + 1));
        // Sample n distinct grid indices.
        std::vector<std::size_t> idx(n);
        std::fill(taken.begin(), taken.end(), 0);
        if (restart == 0) {
            // First restart is deterministic equispaced-in-index: stable
            // baseline independent of the RNG.
            for (int i = 0; i < n; ++i) idx[i] = (g - 1) * static_cast<std::size_t>(i) / (n - 1);
            std::sort(idx.begin(), idx.end());
            idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
            while (idx.size() < static_cast<std::size_t>(n)) {
                const std::size_t cand = rng() % g;
                if (std::find(idx.begin(), idx.end(), cand) == idx.end()) idx.push_back(cand);
            }
        } else {
            std::size_t filled = 0;
            while (filled < static_cast<std::size_t>(n)) {
                const std::size_t cand = rng() % g;
                if (!taken[cand]) {
                    taken[cand] = 1;
                    idx[filled++] = cand;
                }
            }
        }

        bool moved = true;
        for (int sweep = 0; sweep < opts.max_sweeps && moved; ++sweep) {
            moved = false;
            for (int i = 0; i < n; ++i) {
                std::fill(score.begin(), score.end(), 0.0);
                for (int j = 0; j < n; ++j) {
                    if (j == i) continue;
                    kt.accum_log_dist2(gre.data(), gim.data(), g, gre[idx[j]], gim[idx[j]],
                                       score.data());
                }
                std::size_t bestk = idx[i];
                double bestv = score[idx[i]];
                for (std::size_t k = 0; k < g; ++k) {
                    if (score[k] > bestv + 1e-13 * std::abs(bestv)) {
                        bestv = score[k];
                        bestk = k;
                    }
                }
                if (bestk != idx[i]) {
                    idx[i] = bestk;
                    moved = true;
                }
            }
        }

        const double log_q = config_log_q(gre, gim, idx);
        auto pts = gather(gre, gim, idx);
        std::sort(pts.begin(), pts.end(), [](auto a, auto b) {
            return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
        });
        if (log_q > best_log_q + 1e-12 ||
            (std::abs(log_q - best_log_q) <= 1e-12 && lex_less(pts, best_pts))) {
            best_log_q = log_q;
            best_pts = std::move(pts);
        }
    }

    FeketeResult res;
    res.points = std::move(best_pts);
    res.log_pairwise_product = best_log_q;
    res.pairwise_product = std::exp(best_log_q);
    res.d_n = std::exp(best_log_q / (static_cast<double>(n) * (n - 1)));
    return res;
}

// Cosine-spaced nodes per band (endpoints always included, odd counts so the
// band midpoint is a node too).
void band_grid(const BandSet& set, std::size_t target, std::vector<double>& re,
               std::vector<double>& im) {
    const double len = set.total_length();
    for (std::size_t b = 0; b < set.band_count(); ++b) {
        const auto [lo, hi] = set.band(b);
        std::size_t m = std::max<std::size_t>(
            5, static_cast<std::size_t>(std::llround(static_cast<double>(target) * (hi - lo) /
                                                     len)));
        if (m % 2 == 0) ++m;
        const double mid = 0.5 * (lo + hi);
        const double rad = 0.5 * (hi - lo);
        for (std::size_t k = 0; k < m; ++k) {
            const double x = mid + rad * std::cos(static_cast<double>(k) * M_PI /
                                                  static_cast<double>(m - 1));
            re.push_back(x);
            im.push_back(0.0);
        }
    }
    // cos ordering is descending per band; ascending keeps the deterministic
    // equispaced seed spread across the whole set.
    std::vector<std::size_t> order(re.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return re[a] != re[b] ? re[a] < re[b] : im[a] < im[b];
    });
    std::vector<double> re2(re.size());
    std::vector<double> im2(im.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        re2[i] = re[order[i]];
        im2[i] = im[order[i]];
    }
    // Coincident nodes (band endpoints repeated by rounding) are dropped so
    // the exchange never scores a duplicate as an improvement.
    re.clear();
    im.clear();
    for (std::size_t i = 0; i < re2.size(); ++i) {
        if (!re.empty() && re2[i] == re.back() && im2[i] == im.back()) continue;
        re.push_back(re2[i]);
        im.push_back(im2[i]);
    }
}

}  // namespace

FeketeResult fekete_points(const BandSet& set, int n, const FeketeOptions& opts) {
    if (set.band_count() == 0) throw input_error("fekete_points: empty set");
    std::vector<double> re;
    std::vector<double> im;
    const std::size_t target =
        std::max<std::size_t>(static_cast<std::size_t>(n) + 1,
                              static_cast<std::size_t>(opts.grid_per_point) * n);
    band_grid(set, target, re, im);
    return exchange_on_grid(re, im, n, opts);
}

FeketeResult fekete_points(const PointCloud& cloud, int n, const FeketeOptions& opts) {
    if (cloud.points.empty()) throw input_error("fekete_points: empty cloud");
    std::vector<double> re;
    std::vector<double> im;
    re.reserve(cloud.points.size());
    im.reserve(cloud.points.size());
    for (auto z : cloud.points) {
        re.push_back(z.real());
        im.push_back(z.imag());
    }
    return exchange_on_grid(re, im, n, opts);
}

double transfinite_diameter(const BandSet& set, int n, const FeketeOptions& opts) {
    return fekete_points(set, n, opts).d_n;
}

double transfinite_diameter(const PointCloud& cloud, int n, const FeketeOptions& opts) {
    return fekete_points(cloud, n, opts).d_n;
}

namespace {

template <typename Domain>
CapacityEstimate fekete_extrapolate(const Domain& dom, int n_max, const FeketeOptions& opts) {
    if (n_max < 8) throw input_error("capacity_estimate: n_max must be >= 8");
    std::vector<int> ladder;
    for (int n = n_max; n >= 8 && ladder.size() < 6; n = (n * 5) / 7) ladder.push_back(n);
    std::reverse(ladder.begin(), ladder.end());

    std::vector<double> dn;
    dn.reserve(ladder.size());
    for (int n : ladder) dn.push_back(transfinite_diameter(dom, n, opts));

    for (std::size_t i = 1; i < dn.size(); ++i) {
        if (dn[i] > dn[i - 1] * (1.0 + 1e-6))
            throw convergence_error(
                "capacity_estimate: d_n sequence is not decreasing; the candidate grid is too "
                "coarse, increase grid_per_point",
                {}, dn[i] - dn[i - 1]);
    }

    // d_n carries a (ln n)/n correction (exact on the circle, observed on
    // intervals), so fit ln d_n ~ ln C + (ln n + g)/n over the largest n's:
    // linear in 1/n after subtracting the known (ln n)/n term.
    const std::size_t fit = std::min<std::size_t>(4, dn.size());
    double sx = 0;
    double sy = 0;
    double sxx = 0;
    double sxy = 0;
    for (std::size_t i = dn.size() - fit; i < dn.size(); ++i) {
        const double x = 1.0 / ladder[i];
        const double y = std::log(dn[i]) - std::log(static_cast<double>(ladder[i])) / ladder[i];
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double m = static_cast<double>(fit);
    const double denom = m * sxx - sx * sx;
    double cap = denom != 0.0 ? std::exp((sy * sxx - sx * sxy) / denom) : dn.back();
    // d_n decreases to the capacity, so the last rung is an upper bound.
    cap = std::min(cap, dn.back());

    CapacityEstimate est;
    est.value = cap;
    est.scheme = CapacityScheme::fekete_extrapolation;
    est.n_used = ladder.back();
    est.error_bound = dn.back() - cap;
    return est;
}

}  // namespace

// Defined in calibration.cpp.
double robin_constant(const BandSet& set);

CapacityEstimate capacity_estimate(const BandSet& set, CapacityScheme scheme, int n_max,
                                   const FeketeOptions& opts) {
    switch (scheme) {
        case CapacityScheme::fekete_extrapolation:
            return fekete_extrapolate(set, n_max, opts);
        case CapacityScheme::robin_constant: {
            CapacityEstimate est;
            est.value = std::exp(-robin_constant(set));
            est.scheme = CapacityScheme::robin_constant;
            est.n_used = 0;
            return est;
        }
        case CapacityScheme::jacobi_formula:
            throw input_error(
                "capacity_estimate: jacobi_formula applies to a PeriodicJacobi input (see "
                "jacobi_capacity)");
    }
    throw input_error("capacity_estimate: unknown scheme");
}

CapacityEstimate capacity_estimate(const PointCloud& cloud, CapacityScheme scheme, int n_max,
                                   const FeketeOptions& opts) {
    if (scheme != CapacityScheme::fekete_extrapolation)
        throw input_error("capacity_estimate: point clouds support fekete_extrapolation only");
    return fekete_extrapolate(cloud, n_max, opts);
}

}  // namespace logcap

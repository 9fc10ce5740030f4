#include "logcap/chebyshev.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "logcap/errors.hpp"
#include "logcap/kernels.hpp"

namespace logcap {

namespace {

using cd = std::complex<double>;

RationalPoly linear_minus(const GaussianRational& c) {
    return RationalPoly({-c, GaussianRational(1)});  // z - c
}

double eval_real(const std::vector<double>& coeffs, double x) {
    double v = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) v = v * x + coeffs[k];
    return v;
}

struct Extremum {
    double x = 0.0;
    double value = 0.0;  // signed f(x)
};

// Golden-section maximization of |f| on [lo, hi].
Extremum golden_max(const std::function<double(double)>& f, double lo, double hi) {
    constexpr double kInvPhi = 0.6180339887498949;
    double a = lo;
    double b = hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = std::abs(f(c));
    double fd = std::abs(f(d));
    for (int it = 0; it < 80 && (b - a) > 1e-15 * (1.0 + std::abs(a) + std::abs(b)); ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = std::abs(f(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = std::abs(f(d));
        }
    }
    const double x = 0.5 * (a + b);
    return {x, f(x)};
}

double bisect_zero(const std::function<double(double)>& f, double lo, double hi) {
    double flo = f(lo);
    for (int it = 0; it < 90; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((flo < 0.0) == (fm < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// All local extrema of |f| per band (band endpoints included), refined.
std::vector<std::vector<Extremum>> scan_extrema(const std::function<double(double)>& f,
                                                const BandSet& set, int grid) {
    std::vector<std::vector<Extremum>> per_band;
    const double total = set.total_length();
    for (std::size_t bi = 0; bi < set.band_count(); ++bi) {
        const auto [lo, hi] = set.band(bi);
        const int m = std::max(
            48, static_cast<int>(std::llround(static_cast<double>(grid) * (hi - lo) / total)));
        std::vector<double> xs(m + 1);
        std::vector<double> vs(m + 1);
        for (int i = 0; i <= m; ++i) {
            xs[i] = lo + (hi - lo) * static_cast<double>(i) / m;
            vs[i] = f(xs[i]);
        }
        std::vector<Extremum> ext;
        for (int i = 0; i <= m; ++i) {
            const double cur = std::abs(vs[i]);
            const bool left_ok = i == 0 || cur >= std::abs(vs[i - 1]);
            const bool right_ok = i == m || cur >= std::abs(vs[i + 1]);
            if (!(left_ok && right_ok)) continue;
            const double a = i == 0 ? xs[0] : xs[i - 1];
            const double b = i == m ? xs[m] : xs[i + 1];
            ext.push_back(golden_max(f, a, b));
        }
        // Band endpoints are always candidate alternation points.
        ext.push_back({lo, f(lo)});
        ext.push_back({hi, f(hi)});
        std::sort(ext.begin(), ext.end(), [](const Extremum& p, const Extremum& q) {
            return p.x < q.x;
        });
        std::vector<Extremum> dedup;
        const double tol = 1e-9 * (1.0 + std::abs(hi - lo));
        for (const auto& e : ext) {
            if (!dedup.empty() && e.x - dedup.back().x < tol) {
                if (std::abs(e.value) > std::abs(dedup.back().value)) dedup.back() = e;
            } else {
                dedup.push_back(e);
            }
        }
        per_band.push_back(std::move(dedup));
    }
    return per_band;
}

std::vector<std::vector<double>> scan_zeros(const std::function<double(double)>& f,
                                            const BandSet& set, int grid) {
    std::vector<std::vector<double>> per_band;
    const double total = set.total_length();
    for (std::size_t bi = 0; bi < set.band_count(); ++bi) {
        const auto [lo, hi] = set.band(bi);
        const int m = std::max(
            48, static_cast<int>(std::llround(static_cast<double>(grid) * (hi - lo) / total)));
        std::vector<double> zs;
        double xp = lo;
        double vp = f(lo);
        for (int i = 1; i <= m; ++i) {
            const double x = lo + (hi - lo) * static_cast<double>(i) / m;
            const double v = f(x);
            if (vp == 0.0) {
                zs.push_back(xp);
            } else if (v != 0.0 && (vp < 0.0) != (v < 0.0)) {
                zs.push_back(bisect_zero(f, xp, x));
            }
            xp = x;
            vp = v;
        }
        if (vp == 0.0) zs.push_back(xp);
        per_band.push_back(std::move(zs));
    }
    return per_band;
}

int alternations(const std::vector<const Extremum*>& pts) {
    int count = 0;
    int last = 0;
    for (const auto* e : pts) {
        const int s = e->value > 0.0 ? 1 : (e->value < 0.0 ? -1 : 0);
        if (s == 0) continue;
        if (count == 0 || s != last) {
            ++count;
            last = s;
        }
    }
    return count;
}

/// Exact solve of the levelled interpolation system
///   x_i^n + sum_k c_k x_i^k = sigma_i h,  i = 0..n,
/// over the dyadic rationals of the reference points. The monomial
/// Vandermonde is too ill-conditioned for doubles past degree ~12; exact
/// elimination makes the coefficients reference-limited instead.
/// Returns (c_0..c_{n-1}, signed h), empty on a singular system.
std::vector<Rational> levelled_solve_exact(const std::vector<double>& ref, int n) {
    const int m = n + 1;
    std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m + 1));
    for (int i = 0; i < m; ++i) {
        Rational xp(1);
        const Rational x(ref[static_cast<std::size_t>(i)]);
        for (int k = 0; k < n; ++k) {
            a[i][k] = xp;
            xp *= x;
        }
        a[i][n] = (i % 2 == 0) ? Rational(-1) : Rational(1);
        a[i][m] = -xp;
    }
    for (int col = 0; col < m; ++col) {
        int pivot = -1;
        for (int row = col; row < m; ++row)
            if (a[row][col] != 0 && (pivot < 0 || abs(a[row][col]) > abs(a[pivot][col])))
                pivot = row;
        if (pivot < 0) return {};
        std::swap(a[col], a[pivot]);
        for (int row = 0; row < m; ++row) {
            if (row == col || a[row][col] == 0) continue;
            const Rational factor = a[row][col] / a[col][col];
            for (int k = col; k <= m; ++k) a[row][k] -= factor * a[col][k];
        }
    }
    std::vector<Rational> sol(m);
    for (int i = 0; i < m; ++i) {
        sol[i] = a[i][m] / a[i][i];
        sol[i].canonicalize();
    }
    return sol;
}

}  // namespace

RationalPoly monic_chebyshev_interval(const Rational& a, const Rational& b, int n) {
    if (!(a < b)) throw input_error("monic_chebyshev_interval: need a < b");
    if (n < 1) throw input_error("monic_chebyshev_interval: need n >= 1");
    const GaussianRational c{Rational(a + b) / 2};
    const GaussianRational h2{Rational((b - a) * (b - a)) / 16};  // ((b-a)/4)^2
    const RationalPoly lin = linear_minus(c);
    RationalPoly prev = RationalPoly::constant(GaussianRational(1));
    RationalPoly cur = lin;
    for (int k = 1; k < n; ++k) {
        const GaussianRational factor = k == 1 ? GaussianRational(2) * h2 : h2;
        RationalPoly next = lin * cur - prev * factor;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

RationalPoly monic_chebyshev_interval(double a, double b, int n) {
    return monic_chebyshev_interval(rational_from_double(a), rational_from_double(b), n);
}

RationalPoly chebyshev_compose(const RationalPoly& p, const GaussianRational& b, int n) {
    if (n < 1) throw input_error("chebyshev_compose: need n >= 1");
    if (b.is_zero()) throw input_error("chebyshev_compose: modulus must be nonzero");
    const GaussianRational b2 = b * b;
    RationalPoly prev = RationalPoly::constant(GaussianRational(1));
    RationalPoly cur = p;
    for (int k = 1; k < n; ++k) {
        const GaussianRational factor = k == 1 ? GaussianRational(2) * b2 : b2;
        RationalPoly next = p * cur - prev * factor;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

RationalPoly chebyshev_compose(const PeriodicJacobi& j, int n) {
    const auto nm = naiman_polynomial(j);
    return chebyshev_compose(nm.p, nm.b, n);
}

std::function<double(double)> compose_evaluator(const RationalPoly& p, double b, int n) {
    if (n < 1) throw input_error("compose_evaluator: need n >= 1");
    const auto coeffs = p.to_real_coeffs();
    const double b2 = b * b;
    return [coeffs, b2, n](double x) {
        const double px = eval_real(coeffs, x);
        double prev = 1.0;
        double cur = px;
        for (int k = 1; k < n; ++k) {
            const double factor = k == 1 ? 2.0 * b2 : b2;
            const double next = px * cur - factor * prev;
            prev = cur;
            cur = next;
        }
        return cur;
    };
}

std::function<double(double)> compose_evaluator(const PeriodicJacobi& j, int n) {
    const auto nm = naiman_polynomial(j);
    if (!nm.b.is_real()) throw input_error("compose_evaluator: requires a real modulus");
    return compose_evaluator(nm.p, nm.b.re.get_d(), n);
}

EquioscillationReport equioscillation_check(const std::function<double(double)>& f, int degree,
                                            const BandSet& set, int grid) {
    if (set.band_count() == 0) throw input_error("equioscillation_check: empty set");
    grid = std::max(grid, 10 * std::max(degree, 1) + 1);
    const auto per_band = scan_extrema(f, set, grid);
    const auto zero_bands = scan_zeros(f, set, grid);

    EquioscillationReport rep;
    for (const auto& band : per_band)
        for (const auto& e : band) rep.norm = std::max(rep.norm, std::abs(e.value));

    const double cut = (1.0 - 1e-8) * rep.norm;
    std::vector<const Extremum*> global;
    for (const auto& band : per_band) {
        std::vector<const Extremum*> local;
        for (const auto& e : band) {
            if (std::abs(e.value) >= cut) {
                local.push_back(&e);
                global.push_back(&e);
                rep.alternation_points.push_back(e.x);
            }
        }
        rep.band_alternations.push_back(alternations(local));
    }
    rep.alternation_count = alternations(global);

    for (const auto& zs : zero_bands) {
        for (double z : zs) rep.zeros.push_back(z);
        for (std::size_t i = 1; i < zs.size(); ++i) rep.zero_gaps.push_back(zs[i] - zs[i - 1]);
    }
    return rep;
}

EquioscillationReport equioscillation_check(const RationalPoly& p, const BandSet& set, int grid) {
    const auto coeffs = p.to_real_coeffs();
    auto f = [coeffs](double x) { return eval_real(coeffs, x); };
    return equioscillation_check(f, p.degree(), set, grid);
}

RationalPoly remez_union(const BandSet& set, int n, int max_iters) {
    if (n < 1) throw input_error("remez_union: need n >= 1");
    if (set.band_count() == 0) throw input_error("remez_union: empty set");

    // Initial reference: n+1 cosine-spaced points distributed across bands
    // proportionally to length.
    std::vector<double> ref;
    {
        const double total = set.total_length();
        std::size_t remaining = static_cast<std::size_t>(n) + 1;
        for (std::size_t bi = 0; bi < set.band_count(); ++bi) {
            const auto [lo, hi] = set.band(bi);
            std::size_t m =
                bi + 1 == set.band_count()
                    ? remaining
                    : std::min(remaining, static_cast<std::size_t>(std::llround(
                                              (static_cast<double>(n) + 1) * (hi - lo) / total)));
            if (bi + 1 < set.band_count() && remaining > 0 && m == 0) m = 1;
            remaining -= m;
            const double mid = 0.5 * (lo + hi);
            const double rad = 0.5 * (hi - lo);
            for (std::size_t k = 0; k < m; ++k) {
                const double t = m == 1 ? 0.0
                                        : std::cos(static_cast<double>(k) * M_PI /
                                                   static_cast<double>(m - 1));
                ref.push_back(mid + rad * t);
            }
        }
        std::sort(ref.begin(), ref.end());
    }
    if (ref.size() != static_cast<std::size_t>(n) + 1)
        throw input_error("remez_union: could not seed a reference of size n+1");

    std::vector<double> coeffs(n + 1, 0.0);
    coeffs[n] = 1.0;
    double best_spread = std::numeric_limits<double>::infinity();
    std::vector<Rational> best_exact;
    int polish = 0;  // iterations without improvement once below the gate

    for (int iter = 0; iter < max_iters; ++iter) {
        // Levelled interpolation: x_i^n + sum c_k x_i^k = sigma_i * h.
        const std::vector<Rational> sol = levelled_solve_exact(ref, n);
        if (sol.empty())
            throw convergence_error("remez_union: singular reference system", {}, best_spread);
        for (int k = 0; k < n; ++k) coeffs[static_cast<std::size_t>(k)] = sol[k].get_d();
        const double h = std::abs(sol[static_cast<std::size_t>(n)].get_d());

        auto f = [&coeffs](double x) { return eval_real(coeffs, x); };
        const auto per_band = scan_extrema(f, set, std::max(4000, 40 * n));
        double norm = 0.0;
        for (const auto& band : per_band)
            for (const auto& e : band) norm = std::max(norm, std::abs(e.value));

        const double spread = norm > 0.0 ? (norm - h) / norm : 1.0;
        if (spread < best_spread) {
            best_spread = spread;
            best_exact = sol;
            polish = 0;
        } else if (best_spread <= 1e-8) {
            ++polish;
        }
        // The contract is spread <= 1e-8; polishing past it until the spread
        // stops improving leaves the coefficients reference-limited, which the
        // high-degree agreement checks against exact compositions rely on.
        if (spread <= 1e-13 || (best_spread <= 1e-8 && polish >= 6)) {
            std::vector<GaussianRational> rat(static_cast<std::size_t>(n) + 1);
            for (int k = 0; k < n; ++k)
                rat[static_cast<std::size_t>(k)] = GaussianRational(best_exact[static_cast<std::size_t>(k)]);
            rat[static_cast<std::size_t>(n)] = GaussianRational(1);
            return RationalPoly(std::move(rat));
        }

        // Exchange: collapse same-sign runs of extrema keeping the largest,
        // then thin to n+1 preserving alternation.
        std::vector<Extremum> cand;
        for (const auto& band : per_band)
            for (const auto& e : band)
                if (e.value != 0.0) cand.push_back(e);
        std::sort(cand.begin(), cand.end(),
                  [](const Extremum& p, const Extremum& q) { return p.x < q.x; });
        std::vector<Extremum> alt;
        for (const auto& e : cand) {
            if (!alt.empty() && (alt.back().value > 0.0) == (e.value > 0.0)) {
                if (std::abs(e.value) > std::abs(alt.back().value)) alt.back() = e;
            } else {
                alt.push_back(e);
            }
        }
        while (alt.size() > static_cast<std::size_t>(n) + 1) {
            std::size_t worst = 0;
            for (std::size_t i = 1; i < alt.size(); ++i)
                if (std::abs(alt[i].value) < std::abs(alt[worst].value)) worst = i;
            if (worst == 0) {
                alt.erase(alt.begin());
            } else if (worst + 1 == alt.size()) {
                alt.pop_back();
            } else {
                // Interior removal leaves equal signs adjacent; keep the
                // stronger neighbor and drop the weaker one too.
                const std::size_t weaker_nb =
                    std::abs(alt[worst - 1].value) < std::abs(alt[worst + 1].value) ? worst - 1
                                                                                    : worst + 1;
                const std::size_t hi_idx = std::max(worst, weaker_nb);
                const std::size_t lo_idx = std::min(worst, weaker_nb);
                alt.erase(alt.begin() + static_cast<std::ptrdiff_t>(hi_idx));
                alt.erase(alt.begin() + static_cast<std::ptrdiff_t>(lo_idx));
            }
        }
        if (alt.size() < static_cast<std::size_t>(n) + 1) {
            std::vector<cd> best(best_coeffs.begin(), best_coeffs.end());
            throw convergence_error(
                "remez_union: exchange produced fewer than n+1 alternation points", best,
                best_spread);
        }
        std::vector<double> new_ref;
        new_ref.reserve(alt.size());
        for (const auto& e : alt) new_ref.push_back(e.x);
        if (new_ref == ref && spread > 1e-8) {
            std::vector<cd> best(best_coeffs.begin(), best_coeffs.end());
            throw convergence_error("remez_union: exchange stagnated", best, best_spread);
        }
        ref = std::move(new_ref);
    }
    std::vector<cd> best(best_coeffs.begin(), best_coeffs.end());
    throw convergence_error("remez_union: no convergence within max_iters", best, best_spread);
}

}  // namespace logcap

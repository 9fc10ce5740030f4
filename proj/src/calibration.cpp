#include "logcap/calibration.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "logcap/errors.hpp"
#include "logcap/quadrature.hpp"
#include "logcap/roots.hpp"

namespace logcap {

namespace {

using cd = std::complex<double>;

double eval_real(const std::vector<double>& coeffs, double x) {
    double v = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) v = v * x + coeffs[k];
    return v;
}

cd eval_complex(const std::vector<double>& coeffs, cd z) {
    cd v = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) v = v * z + coeffs[k];
    return v;
}

std::vector<double> expand_roots(const std::vector<double>& roots) {
    std::vector<double> c{1.0};
    for (double r : roots) {
        c.push_back(0.0);
        for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - r * c[k];
        c[0] *= -r;
    }
    return c;
}

/// Principal-branch product sqrt(q(z)) = prod sqrt(z - e_i): real positive for
/// x > e_{2r}, cut exactly on the bands.
cd sqrt_q(const std::vector<double>& endpoints, cd z) {
    cd w = 1.0;
    for (double e : endpoints) w *= std::sqrt(z - e);
    return w;
}

/// Integral over segment (endpoints[ia], endpoints[ib]) of f(t)/sqrt|q(t)| dt.
/// Substitution t = c + h*cos(theta) absorbs both endpoint singularities:
/// the integrand becomes f(t)/sqrt(prod over the remaining |t - e_i|).
double segment_integral(const std::vector<double>& endpoints, std::size_t ia, std::size_t ib,
                        const std::function<double(double)>& f) {
    const double a = endpoints[ia];
    const double b = endpoints[ib];
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    auto integrand = [&](double theta) {
        const double t = c + h * std::cos(theta);
        double rest = 1.0;
        for (std::size_t i = 0; i < endpoints.size(); ++i) {
            if (i == ia || i == ib) continue;
            rest *= std::abs(t - endpoints[i]);
        }
        return f(t) / std::sqrt(rest);
    };
    const double pi = std::acos(-1.0);
    return integrate_adaptive(integrand, 0.0, pi, 1e-13);
}

/// Node-doubling Gauss-Legendre for a complex-valued parametrized integrand
/// over [0,1].
cd integrate_param(const std::function<cd(double)>& f, double tol) {
    cd prev{std::numeric_limits<double>::quiet_NaN(), 0.0};
    for (std::size_t n = 32; n <= (1u << 14); n *= 2) {
        const GaussLegendreRule& rule = gauss_legendre(n);
        cd acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double u = 0.5 * (rule.nodes[i] + 1.0);
            acc += rule.weights[i] * f(u);
        }
        acc *= 0.5;
        if (!std::isnan(prev.real()) && std::abs(acc - prev) <= tol * (1.0 + std::abs(acc)))
            return acc;
        prev = acc;
    }
    throw convergence_error("green path quadrature did not converge");
}

struct Differential {
    const std::vector<double>* endpoints;
    const std::vector<double>* r_coeffs;

    cd operator()(cd z) const { return eval_complex(*r_coeffs, z) / sqrt_q(*endpoints, z); }

    /// R(z) / prod over i != skip of sqrt(z - e_i): the integrand with the
    /// singular factor at endpoint `skip` removed analytically.
    cd reduced(cd z, std::size_t skip) const {
        cd w = 1.0;
        for (std::size_t i = 0; i < endpoints->size(); ++i) {
            if (i == skip) continue;
            w *= std::sqrt(z - (*endpoints)[i]);
        }
        return eval_complex(*r_coeffs, z) / w;
    }
};

/// Straight leg leaving the branch point endpoints[ie] toward p1. With
/// t = e + d*s^2 the factor sqrt(t - e) = sqrt(d)*s cancels against dt,
/// so the integrand never forms the vanishing difference t - e.
cd branch_leg(const Differential& f, std::size_t ie, cd p1) {
    const double e = (*f.endpoints)[ie];
    const cd d = p1 - e;
    if (d == cd(0.0)) return 0.0;
    const cd rd = std::sqrt(d);
    return integrate_param(
        [&](double s) { return 2.0 * rd * f.reduced(e + d * (s * s), ie); }, 1e-12);
}

/// Straight leg between two regular points.
cd plain_leg(const Differential& f, cd p0, cd p1) {
    if (p0 == p1) return 0.0;
    const cd d = p1 - p0;
    return integrate_param([&](double u) { return f(p0 + d * u) * d; }, 1e-12);
}

/// Real-axis integral of the differential from e_{2r} out to X > e_{2r}:
/// branch leg at the base, then a logarithmic stretch t = sigma + e^w that
/// keeps the ~1/t tail resolved out to X ~ 1e6.
double real_axis_green(const CalibrationData& data, double x) {
    const std::vector<double>& e = data.set.endpoints();
    const double e2r = e.back();
    const double span = std::max(e2r - e.front(), 1.0);
    Differential f{&e, &data.r_coeffs};
    const double mid = std::min(x, e2r + 2.0 * span);
    double total = branch_leg(f, e.size() - 1, cd(mid, 0.0)).real();
    if (x > mid) {
        const double sigma = e2r - span;
        auto integrand = [&](double w) {
            const double t = sigma + std::exp(w);
            return f(cd(t, 0.0)).real() * (t - sigma);
        };
        total += integrate_adaptive(integrand, std::log(mid - sigma), std::log(x - sigma), 1e-12);
    }
    return total;
}

/// Index of an endpoint the target coincides with (within snapping distance),
/// or endpoint count when z is a regular point.
std::size_t snap_branch_point(const std::vector<double>& endpoints, cd z) {
    for (std::size_t i = 0; i < endpoints.size(); ++i)
        if (std::abs(z - endpoints[i]) <= 1e-12 * (1.0 + std::abs(z))) return i;
    return endpoints.size();
}

void validate_calibrated(const CalibrationData& data, int n, std::vector<long>& split) {
    const std::size_t r = data.set.band_count();
    if (data.omega.size() != r) throw input_error("cosh_polynomial: harmonic measures missing");
    if (n < static_cast<int>(r)) throw input_error("cosh_polynomial: order below band count");
    split.resize(r);
    long total = 0;
    for (std::size_t j = 0; j < r; ++j) {
        split[j] = std::lround(n * data.omega[j]);
        if (split[j] < 1 || std::abs(data.omega[j] - double(split[j]) / n) > 1e-8)
            throw input_error("cosh_polynomial: set is not calibrated at this order");
        total += split[j];
    }
    if (total != n) throw input_error("cosh_polynomial: set is not calibrated at this order");
}

}  // namespace

CalibrationData solve_R(const BandSet& set) {
    const std::vector<double>& e = set.endpoints();
    const std::size_t r = set.band_count();
    CalibrationData data;
    data.set = set;
    data.q_coeffs = expand_roots(e);

    if (r == 1) {
        data.r_coeffs = {1.0};
        return data;
    }

    // Gap k lies between endpoints 2k+1 and 2k+2; moment j integrates t^j/sqrt|q|.
    const std::size_t m = r - 1;
    Eigen::MatrixXd a(m, m);
    Eigen::VectorXd rhs(m);
    for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t j = 0; j < r; ++j) {
            const double mom = segment_integral(
                e, 2 * k + 1, 2 * k + 2, [&](double t) { return std::pow(t, double(j)); });
            if (j < m)
                a(k, j) = mom;
            else
                rhs(k) = -mom;
        }
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (!lu.isInvertible()) throw convergence_error("solve_R: singular gap moment matrix");
    Eigen::VectorXd sol = lu.solve(rhs);

    data.r_coeffs.assign(m + 1, 1.0);
    for (std::size_t j = 0; j < m; ++j) data.r_coeffs[j] = sol(j);

    std::vector<cd> coeffs(data.r_coeffs.begin(), data.r_coeffs.end());
    std::vector<cd> raw = roots(coeffs, 1e-10);
    for (cd z : raw) {
        if (std::abs(z.imag()) > 1e-7 * (1.0 + std::abs(z.real())))
            throw convergence_error("solve_R: complex root of R");
        data.lambda.push_back(z.real());
    }
    std::sort(data.lambda.begin(), data.lambda.end());
    for (std::size_t k = 0; k < m; ++k) {
        if (!(data.lambda[k] > e[2 * k + 1] && data.lambda[k] < e[2 * k + 2]))
            throw convergence_error("solve_R: root of R escaped its gap");
    }
    return data;
}

CalibrationData harmonic_measures(const BandSet& set) {
    CalibrationData data = solve_R(set);
    const std::vector<double>& e = set.endpoints();
    const double pi = std::acos(-1.0);
    for (std::size_t j = 0; j < set.band_count(); ++j) {
        const double period = segment_integral(
            e, 2 * j, 2 * j + 1, [&](double t) { return eval_real(data.r_coeffs, t); });
        data.omega.push_back(std::abs(period) / pi);
        data.period_signs.push_back(period >= 0.0 ? 1 : -1);
    }
    return data;
}

std::complex<double> green_complex(const CalibrationData& data, std::complex<double> z) {
    const std::vector<double>& e = data.set.endpoints();
    const double e2r = e.back();
    if (z.imag() == 0.0 && data.set.distance(z.real()) <= 1e-12 * (1.0 + std::abs(z)))
        return 0.0;
    if (z.imag() == 0.0 && z.real() > e2r) return real_axis_green(data, z.real());

    const double span = std::max(e2r - e.front(), 1.0);
    const double height = std::max(1.0, 0.5 * span);
    const double ys = z.imag() >= 0.0 ? height : -height;
    Differential f{&e, &data.r_coeffs};

    // Up from the rightmost endpoint, across at fixed height, then down to z;
    // the path never crosses the bands (the only cut of sqrt(q)).
    const cd corner1(e2r, ys);
    const cd corner2(z.real(), ys);
    cd total = branch_leg(f, e.size() - 1, corner1);
    total += plain_leg(f, corner1, corner2);
    const std::size_t snap = snap_branch_point(e, z);
    if (snap < e.size())
        total -= branch_leg(f, snap, corner2);  // reversed: leg runs down onto e_i
    else
        total += plain_leg(f, corner2, z);
    return total;
}

GreenEvaluation green_eval(const CalibrationData& data, std::complex<double> z) {
    GreenEvaluation out;
    out.z = z;
    out.g = green_complex(data, z).real();
    if (out.g < 0.0 && out.g > -1e-10) out.g = 0.0;
    out.robin = robin_constant(data);
    return out;
}

GreenEvaluation green_eval(const BandSet& set, std::complex<double> z) {
    return green_eval(harmonic_measures(set), z);
}

double robin_constant(const CalibrationData& data) {
    const std::vector<double>& e = data.set.endpoints();
    const double big = std::max(1e6, 10.0 * std::abs(e.back()));
    const double g = real_axis_green(data, big);
    double tail = 0.0;
    for (double ei : e) tail += 0.5 * ei;
    for (double l : data.lambda) tail -= l;
    return g - std::log(big) + tail / big;
}

double robin_constant(const BandSet& set) { return robin_constant(harmonic_measures(set)); }

CalibrateResult calibrate(const BandSet& set, int m) {
    const std::size_t r = set.band_count();
    if (m < static_cast<int>(r))
        throw input_error("calibrate: order too small to give every band a positive share");

    CalibrationData base = harmonic_measures(set);
    std::vector<long> k(r);
    long total = 0;
    for (std::size_t j = 0; j < r; ++j) {
        k[j] = std::max<long>(1, std::lround(m * base.omega[j]));
        total += k[j];
    }
    // Repair the sum by shifting units against the largest rounding excess,
    // never dropping a band below 1.
    while (total != m) {
        std::size_t pick = r;
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < r; ++j) {
            const double excess = double(k[j]) - m * base.omega[j];
            if (total > m) {
                if (k[j] > 1 && excess > best) best = excess, pick = j;
            } else {
                if (-excess > best) best = -excess, pick = j;
            }
        }
        if (pick == r) throw input_error("calibrate: no valid integer split");
        k[pick] += total > m ? -1 : 1;
        total += total > m ? -1 : 1;
    }

    CalibrateResult out;
    out.m = m;
    out.k = k;
    if (r == 1) {
        out.set = set;
        out.data = std::move(base);
        out.data.order = m;
        out.data.order_split = k;
        return out;
    }

    // Knobs only ever grow bands: w[0] extends the leftmost edge outward,
    // w[r] the rightmost, and each gap knob w[1..r-1] is signed (positive
    // advances the gap's left flank, negative retreats its right flank,
    // capped at the gap midpoint so gaps stay open). r+1 knobs against r-1
    // measure targets: the minimal-norm Gauss-Newton step picks the smallest
    // total inflation.
    const std::vector<double>& e0 = set.endpoints();
    const double span = e0.back() - e0.front();
    std::vector<double> gap_width(r - 1);
    for (std::size_t j = 0; j + 1 < r; ++j) gap_width[j] = e0[2 * j + 2] - e0[2 * j + 1];

    const std::size_t nk = r + 1;
    auto apply = [&](const std::vector<double>& w) {
        std::vector<double> e = e0;
        e.front() -= w[0];
        e.back() += w[nk - 1];
        for (std::size_t j = 0; j + 1 < r; ++j) {
            if (w[j + 1] >= 0.0)
                e[2 * j + 1] += w[j + 1];
            else
                e[2 * j + 2] += w[j + 1];
        }
        return BandSet(e);
    };
    auto clamp = [&](std::vector<double>& w) {
        w[0] = std::min(2.0 * span, std::max(0.0, w[0]));
        w[nk - 1] = std::min(2.0 * span, std::max(0.0, w[nk - 1]));
        for (std::size_t j = 0; j + 1 < r; ++j) {
            const double cap = 0.5 * gap_width[j] * (1.0 - 1e-9);
            w[j + 1] = std::min(cap, std::max(-cap, w[j + 1]));
        }
    };
    auto residual = [&](const std::vector<double>& w) {
        CalibrationData d = harmonic_measures(apply(w));
        Eigen::VectorXd f(r - 1);
        for (std::size_t j = 0; j + 1 < r; ++j) f(j) = d.omega[j] - double(k[j]) / m;
        return f;
    };

    std::vector<double> w(nk, 0.0);
    Eigen::VectorXd f = residual(w);
    for (int iter = 0; iter < 50; ++iter) {
        if (f.lpNorm<Eigen::Infinity>() <= 1e-10) {
            BandSet e_m = apply(w);
            out.set = e_m;
            out.data = harmonic_measures(e_m);
            out.data.order = m;
            out.data.order_split = k;
            for (double wj : w) out.max_inflation = std::max(out.max_inflation, std::abs(wj));
            return out;
        }
        Eigen::MatrixXd jac(r - 1, nk);
        for (std::size_t j = 0; j < nk; ++j) {
            const double scale =
                (j == 0 || j == nk - 1) ? span : gap_width[j - 1];
            std::vector<double> wp = w;
            wp[j] += 1e-6 * scale;
            clamp(wp);
            double dh = wp[j] - w[j];
            if (dh == 0.0) {  // pinned at a cap from above; probe downward
                wp = w;
                wp[j] -= 1e-6 * scale;
                clamp(wp);
                dh = wp[j] - w[j];
            }
            if (dh == 0.0) throw convergence_error("calibrate: jacobian step pinned at cap");
            jac.col(j) = (residual(wp) - f) / dh;
        }
        Eigen::VectorXd dw = jac.completeOrthogonalDecomposition().solve(-f);
        bool improved = false;
        for (double damp = 1.0; damp >= 1.0 / 256.0; damp *= 0.5) {
            std::vector<double> wn = w;
            for (std::size_t j = 0; j < nk; ++j) wn[j] += damp * dw(j);
            clamp(wn);
            Eigen::VectorXd fn = residual(wn);
            if (fn.lpNorm<Eigen::Infinity>() < f.lpNorm<Eigen::Infinity>()) {
                w = wn;
                f = fn;
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }
    if (f.lpNorm<Eigen::Infinity>() <= 1e-10) {
        BandSet e_m = apply(w);
        out.set = e_m;
        out.data = harmonic_measures(e_m);
        out.data.order = m;
        out.data.order_split = k;
        for (double wj : w) out.max_inflation = std::max(out.max_inflation, std::abs(wj));
        return out;
    }
    std::vector<cd> last;
    for (double ei : apply(w).endpoints()) last.emplace_back(ei, 0.0);
    throw convergence_error("calibrate: Newton did not reach tolerance", last,
                            f.lpNorm<Eigen::Infinity>());
}

CoshResult cosh_polynomial(const CalibrationData& data, int n) {
    std::vector<long> split;
    validate_calibrated(data, n, split);

    const std::vector<double>& e = data.set.endpoints();
    const double e2r = e.back();
    const double scale = std::max(e2r - e.front(), 1.0);
    const double len = 0.75 * scale;
    const double pi = std::acos(-1.0);

    // cosh(n*G) agrees with a degree-n polynomial everywhere once the set is
    // calibrated, so n+1 Chebyshev-spaced nodes right of e_{2r} determine it.
    std::vector<double> x(n + 1), h(n + 1);
    for (int i = 0; i <= n; ++i) {
        x[i] = e2r + 0.05 * len + 0.5 * len * (1.0 + std::cos(pi * i / n));
        h[i] = std::cosh(n * real_axis_green(data, x[i]));
    }

    // Newton divided differences, then expansion to the monomial basis.
    std::vector<double> dd = h;
    for (int level = 1; level <= n; ++level)
        for (int i = n; i >= level; --i) dd[i] = (dd[i] - dd[i - 1]) / (x[i] - x[i - level]);
    std::vector<double> coeffs{dd[n]};
    for (int i = n - 1; i >= 0; --i) {
        coeffs.push_back(0.0);
        for (std::size_t j = coeffs.size() - 1; j > 0; --j)
            coeffs[j] = coeffs[j - 1] - x[i] * coeffs[j];
        coeffs[0] = dd[i] - x[i] * coeffs[0];
    }

    double max_abs = 0.0;
    for (std::size_t j = 0; j < data.set.band_count(); ++j) {
        auto [lo, hi] = data.set.band(j);
        for (int s = 0; s <= 96; ++s)
            max_abs = std::max(max_abs, std::abs(eval_real(coeffs, lo + (hi - lo) * s / 96.0)));
    }
    if (!(max_abs <= 1.0 + 1e-6)) {
        std::vector<cd> best(coeffs.begin(), coeffs.end());
        throw convergence_error("cosh_polynomial: interpolant exceeds 1 on the set", best,
                                max_abs - 1.0);
    }

    CoshResult out;
    out.max_abs_on_set = max_abs;
    std::vector<GaussianRational> fc;
    fc.reserve(coeffs.size());
    for (double c : coeffs) fc.push_back(GaussianRational::from_double(c));
    out.f = RationalPoly(fc);
    const GaussianRational lead = out.f.coeff(n);
    if (lead.is_zero()) throw convergence_error("cosh_polynomial: degenerate leading coefficient");
    std::vector<GaussianRational> tc;
    for (int j = 0; j <= n; ++j) tc.push_back(out.f.coeff(j) / lead);
    tc[n] = GaussianRational(1);
    out.t = RationalPoly(tc);
    return out;
}

CoshResult cosh_polynomial(const BandSet& set, int n) {
    return cosh_polynomial(harmonic_measures(set), n);
}

}  // namespace logcap

#include "logcap/jacobi.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <stdexcept>

#include "logcap/errors.hpp"
#include "logcap/roots.hpp"

namespace logcap {

namespace {

using cd = std::complex<double>;

GaussianRational square(const GaussianRational& v) { return v * v; }

// 2x2 matrix of polynomials, used for the transfer-matrix route.
struct PolyMat {
    RationalPoly m00, m01, m10, m11;
};

PolyMat mat_mul(const PolyMat& a, const PolyMat& b) {
    PolyMat r;
    r.m00 = a.m00 * b.m00 + a.m01 * b.m10;
    r.m01 = a.m00 * b.m01 + a.m01 * b.m11;
    r.m10 = a.m10 * b.m00 + a.m11 * b.m10;
    r.m11 = a.m10 * b.m01 + a.m11 * b.m11;
    return r;
}

// One-step transfer factor at index n (1-based): [[z - a_n, -b_{n-1}], [b_n, 0]]
// with b_0 = b_r closing the period.
PolyMat transfer_factor(const PeriodicJacobi& j, std::size_t n) {
    const std::size_t r = j.period();
    const GaussianRational& a_n = j.diag()[n - 1];
    const GaussianRational& b_n = j.offdiag()[n - 1];
    const GaussianRational& b_prev = j.offdiag()[(n + r - 2) % r];
    PolyMat f;
    f.m00 = RationalPoly({-a_n, GaussianRational(1)});
    f.m01 = RationalPoly::constant(-b_prev);
    f.m10 = RationalPoly::constant(b_n);
    f.m11 = RationalPoly::constant(GaussianRational(0));
    return f;
}

// Same factor evaluated at an exact scalar z.
struct ScalarMat {
    GaussianRational m00, m01, m10, m11;
};

ScalarMat scalar_factor(const PeriodicJacobi& j, std::size_t n, const GaussianRational& z) {
    const std::size_t r = j.period();
    ScalarMat f;
    f.m00 = z - j.diag()[n - 1];
    f.m01 = -j.offdiag()[(n + r - 2) % r];
    f.m10 = j.offdiag()[n - 1];
    f.m11 = GaussianRational(0);
    return f;
}

ScalarMat scalar_mul(const ScalarMat& a, const ScalarMat& b) {
    ScalarMat r;
    r.m00 = a.m00 * b.m00 + a.m01 * b.m10;
    r.m01 = a.m00 * b.m01 + a.m01 * b.m11;
    r.m10 = a.m10 * b.m00 + a.m11 * b.m10;
    r.m11 = a.m10 * b.m01 + a.m11 * b.m11;
    return r;
}

GaussianRational trace_at(const PeriodicJacobi& j, const GaussianRational& z) {
    ScalarMat m = scalar_factor(j, j.period(), z);
    for (std::size_t n = j.period(); n-- > 1;) m = scalar_mul(m, scalar_factor(j, n, z));
    return m.m00 + m.m11;
}

// Characteristic polynomial of the tridiagonal principal block with diagonal
// z - a_i .. z - a_j and couplings b_i .. b_{j-1}. Empty range gives 1.
RationalPoly block_charpoly(const PeriodicJacobi& j, std::size_t i, std::size_t jj) {
    RationalPoly prev2 = RationalPoly::constant(GaussianRational(1));  // D(i, k-2)
    if (jj + 1 == i) return prev2;
    RationalPoly prev1 =
        RationalPoly({-j.diag()[i - 1], GaussianRational(1)});  // D(i, i) = z - a_i
    for (std::size_t k = i + 1; k <= jj; ++k) {
        RationalPoly cur = RationalPoly({-j.diag()[k - 1], GaussianRational(1)}) * prev1 -
                           RationalPoly::constant(square(j.offdiag()[k - 2])) * prev2;
        prev2 = std::move(prev1);
        prev1 = std::move(cur);
    }
    return prev1;
}

double eval_real(const std::vector<double>& coeffs, double x) {
    double v = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) v = v * x + coeffs[k];
    return v;
}

// Newton polish on real coefficients; returns the refined point.
double newton_polish(const std::vector<double>& coeffs, const std::vector<double>& dcoeffs,
                     double x, int iters) {
    for (int it = 0; it < iters; ++it) {
        const double f = eval_real(coeffs, x);
        const double df = eval_real(dcoeffs, x);
        if (df == 0.0) break;
        const double step = f / df;
        x -= step;
        if (std::abs(step) <= 1e-16 * (1.0 + std::abs(x))) break;
    }
    return x;
}

std::vector<double> derivative_coeffs(const std::vector<double>& coeffs) {
    std::vector<double> d;
    if (coeffs.size() <= 1) return {0.0};
    d.resize(coeffs.size() - 1);
    for (std::size_t k = 1; k < coeffs.size(); ++k) d[k - 1] = coeffs[k] * static_cast<double>(k);
    return d;
}

// Real roots of an exact real polynomial, polished; complex residue beyond
// tolerance is a numerical failure for the spectra handled here.
std::vector<double> real_roots_polished(const RationalPoly& p) {
    const auto raw = roots(p, 1e-8);
    const auto coeffs = p.to_real_coeffs();
    const auto dcoeffs = derivative_coeffs(coeffs);
    const auto ddcoeffs = derivative_coeffs(dcoeffs);
    std::vector<double> out;
    out.reserve(raw.size());
    for (auto z : raw) {
        if (std::abs(z.imag()) > 1e-6 * (1.0 + std::abs(z.real())))
            throw convergence_error("spectrum_bands: complex root of the edge polynomial", raw,
                                    std::abs(z.imag()));
        out.push_back(z.real());
    }
    std::sort(out.begin(), out.end());
    // Tangency pairs (closed gaps) stall plain Newton at sqrt(eps); collapse
    // each near-double pair onto the critical point instead.
    for (std::size_t i = 0; i + 1 < out.size(); ++i) {
        if (out[i + 1] - out[i] < 1e-6 * (1.0 + std::abs(out[i]))) {
            double c = newton_polish(dcoeffs, ddcoeffs, 0.5 * (out[i] + out[i + 1]), 60);
            out[i] = c;
            out[i + 1] = c;
            ++i;
        }
    }
    for (auto& x : out) {
        const double before = x;
        const double polished = newton_polish(coeffs, dcoeffs, x, 60);
        // Keep the tangency collapse: accept the polish only if it stayed put.
        if (std::abs(polished - before) < 1e-5 * (1.0 + std::abs(before))) x = polished;
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

PeriodicJacobi::PeriodicJacobi(std::vector<GaussianRational> diag,
                               std::vector<GaussianRational> offdiag)
    : diag_(std::move(diag)), offdiag_(std::move(offdiag)) {
    if (diag_.empty() || diag_.size() != offdiag_.size())
        throw input_error("PeriodicJacobi: need r >= 1 diagonal and r off-diagonal entries");
    for (const auto& b : offdiag_)
        if (b.is_zero()) throw input_error("PeriodicJacobi: off-diagonal entries must be nonzero");
}

PeriodicJacobi PeriodicJacobi::from_double(const std::vector<double>& diag,
                                           const std::vector<double>& offdiag) {
    std::vector<GaussianRational> a;
    std::vector<GaussianRational> b;
    a.reserve(diag.size());
    b.reserve(offdiag.size());
    for (double v : diag) a.push_back(GaussianRational::from_double(v));
    for (double v : offdiag) b.push_back(GaussianRational::from_double(v));
    return {std::move(a), std::move(b)};
}

bool PeriodicJacobi::is_real() const {
    for (const auto& v : diag_)
        if (!v.is_real()) return false;
    for (const auto& v : offdiag_)
        if (!v.is_real()) return false;
    return true;
}

GaussianRational PeriodicJacobi::modulus() const {
    GaussianRational b(1);
    for (const auto& v : offdiag_) b = b * v;
    return b;
}

RationalPoly naiman_trace_polynomial(const PeriodicJacobi& j) {
    PolyMat m = transfer_factor(j, j.period());
    for (std::size_t n = j.period(); n-- > 1;) m = mat_mul(m, transfer_factor(j, n));
    return m.m00 + m.m11;
}

NaimanResult naiman_polynomial(const PeriodicJacobi& j) {
    const std::size_t r = j.period();
    RationalPoly p;
    if (r == 1) {
        p = RationalPoly({-j.diag()[0], GaussianRational(1)});
    } else {
        // Determinant route: D(1,r) - b_r^2 D(2,r-1) equals the transfer trace.
        p = block_charpoly(j, 1, r) -
            RationalPoly::constant(square(j.offdiag()[r - 1])) * block_charpoly(j, 2, r - 1);
    }

    // The two routes must agree exactly; a mismatch means the determinant
    // transcription broke and results cannot be trusted.
    std::mt19937_64 rng(0x6a61636f62690001ULL);
    for (int k = 0; k < 20; ++k) {
        const long num = static_cast<long>(rng() % 1999) - 999;
        const long den = static_cast<long>(rng() % 97) + 1;
        GaussianRational z{Rational(num, den)};
        z.re.canonicalize();
        if (p.eval_exact(z) != trace_at(j, z))
            throw std::logic_error("naiman_polynomial: determinant and trace routes disagree");
    }

    NaimanResult res;
    res.b = j.modulus();
    res.p_tilde = p * (GaussianRational(1) / res.b);
    res.p = std::move(p);
    return res;
}

BandSpectrum spectrum_bands(const PeriodicJacobi& j) {
    if (!j.is_real()) throw input_error("spectrum_bands: requires real Jacobi entries");
    const auto nm = naiman_polynomial(j);
    const GaussianRational two_b = GaussianRational(2) * nm.b;

    RationalPoly plus = nm.p - RationalPoly::constant(two_b);   // P - 2B: preimage of +2
    RationalPoly minus = nm.p + RationalPoly::constant(two_b);  // P + 2B: preimage of -2

    const auto top = real_roots_polished(plus);
    const auto bot = real_roots_polished(minus);

    BandSpectrum spec;
    std::vector<std::pair<double, int>> labeled;
    labeled.reserve(top.size() + bot.size());
    for (double x : top) labeled.emplace_back(x, +2);
    for (double x : bot) labeled.emplace_back(x, -2);
    std::sort(labeled.begin(), labeled.end());

    double scale = 1.0;
    for (const auto& [x, lv] : labeled) scale = std::max(scale, std::abs(x));
    std::vector<double> edges;
    for (const auto& [x, lv] : labeled) {
        edges.push_back(x);
        spec.band_edges.push_back(x);
        spec.edge_levels.push_back(lv);
    }

    auto [bands, touches] = BandSet::merged(edges, 1e-9 * scale);
    spec.bands = std::move(bands);
    spec.touch_points = std::move(touches);

    spec.band_zeros = real_roots_polished(nm.p);
    return spec;
}

double jacobi_capacity(const PeriodicJacobi& j) {
    const Rational norm2 = j.modulus().norm();  // |B|^2, exact
    return std::pow(norm2.get_d(), 1.0 / (2.0 * static_cast<double>(j.period())));
}

CapacityEstimate capacity_estimate(const PeriodicJacobi& j) {
    CapacityEstimate est;
    est.value = jacobi_capacity(j);
    est.scheme = CapacityScheme::jacobi_formula;
    est.n_used = static_cast<int>(j.period());
    est.error_bound = 0.0;
    return est;
}

RationalizeResult rationalize(const PeriodicJacobi& j, unsigned long denom_bound) {
    if (denom_bound < 1) throw input_error("rationalize: denom_bound must be >= 1");
    const Integer q(denom_bound);
    double worst = 0.0;
    auto round_entry = [&](const GaussianRational& v) {
        GaussianRational r{round_to_denominator(v.re, q), round_to_denominator(v.im, q)};
        const GaussianRational diff = v - r;
        worst = std::max(worst, std::abs(diff.to_complex()));
        return r;
    };
    std::vector<GaussianRational> a;
    std::vector<GaussianRational> b;
    for (const auto& v : j.diag()) a.push_back(round_entry(v));
    for (const auto& v : j.offdiag()) {
        auto r = round_entry(v);
        if (r.is_zero())
            throw input_error("rationalize: an off-diagonal entry rounded to zero; increase "
                              "denom_bound");
        b.push_back(r);
    }
    RationalizeResult res{PeriodicJacobi(std::move(a), std::move(b)), worst,
                          3.0 / static_cast<double>(denom_bound)};
    return res;
}

}  // namespace logcap

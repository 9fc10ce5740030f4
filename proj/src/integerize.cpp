#include "logcap/integerize.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "logcap/calibration.hpp"
#include "logcap/chebyshev.hpp"
#include "logcap/errors.hpp"
#include "logcap/measure.hpp"
#include "logcap/potential.hpp"
#include "logcap/roots.hpp"

namespace logcap {

namespace {

using cd = std::complex<double>;

cd pow_int(cd base, long e) {
    cd acc{1.0, 0.0};
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

cd horner(const std::vector<cd>& coeffs, cd z) {
    cd acc{0.0, 0.0};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

void horner2(const std::vector<cd>& coeffs, cd z, cd& value, cd& deriv) {
    value = cd{0.0, 0.0};
    deriv = cd{0.0, 0.0};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        deriv = deriv * z + value;
        value = value * z + *it;
    }
}

/// Gamma through the lambda table: Gamma(z) = P(z)^c + sum_i I_i(z) P(z)^{c-a-i}
/// with I_i(z) = sum_j lambda_j^(i) z^{K-j}. Evaluating this form costs the
/// conditioning of P alone; the expanded coefficients of Gamma are useless in
/// doubles once K*c is moderate.
struct StructuredLift {
    std::vector<cd> pc;
    int k = 0, a = 0, c = 0;
    std::vector<std::vector<cd>> inner;  // ascending coefficients of I_i
    std::vector<bool> has_inner;

    StructuredLift(const RationalPoly& p, const LiftCertificate& cert)
        : pc(p.to_complex_coeffs()),
          k(cert.params.k_deg),
          a(cert.params.a),
          c(cert.params.c) {
        const int rows = static_cast<int>(cert.lambdas.size());
        inner.assign(rows, {});
        has_inner.assign(rows, false);
        for (int i = 0; i < rows; ++i) {
            std::vector<cd> ci(static_cast<std::size_t>(k), cd{0.0, 0.0});
            for (int j = 1; j <= k; ++j) {
                const GaussianRational& lam = cert.lambdas[i][j - 1];
                if (!lam.is_zero()) {
                    ci[static_cast<std::size_t>(k - j)] = lam.to_complex();
                    has_inner[i] = true;
                }
            }
            inner[i] = std::move(ci);
        }
    }

    [[nodiscard]] cd inner_value(int row, cd z) const { return horner(inner[row], z); }

    /// value, derivative and sum of term magnitudes (residual scale) at z.
    void eval(cd z, cd& value, cd& deriv, double& scale) const {
        cd pv{0.0, 0.0}, pd{0.0, 0.0};
        horner2(pc, z, pv, pd);
        value = cd{0.0, 0.0};
        deriv = cd{0.0, 0.0};
        scale = 0.0;
        const int rows = static_cast<int>(inner.size());
        cd pe{1.0, 0.0};       // pv^e
        cd pe_prev{0.0, 0.0};  // pv^{e-1}
        for (int e = 0; e < rows; ++e) {
            const int row = rows - 1 - e;  // exponent e pairs with i = c-a-e
            if (has_inner[row]) {
                cd iv, idv;
                horner2(inner[row], z, iv, idv);
                value += iv * pe;
                deriv += idv * pe;
                if (e > 0) deriv += iv * static_cast<double>(e) * pe_prev * pd;
                scale += std::abs(iv) * std::abs(pe);
            }
            pe_prev = pe;
            pe *= pv;
        }
        const cd top = pow_int(pv, c);
        value += top;
        deriv += static_cast<double>(c) * pow_int(pv, c - 1) * pd;
        scale += std::abs(top);
    }
};

/// Simultaneous root iteration on the structured form. Initial points sit on
/// the c-th-root circles around each zero zeta of P: P(z)^c ~ (P'(zeta)(z-zeta))^c
/// must cancel -I_{c-a}(zeta), fixing radius and phase of the cluster.
std::vector<cd> structured_roots(const RationalPoly& p, const LiftCertificate& cert) {
    const int c = cert.params.c;
    const StructuredLift s(p, cert);
    const RationalPoly pd = p.derivative();
    std::vector<cd> zs;
    zs.reserve(static_cast<std::size_t>(cert.params.k_deg) * c);
    for (cd zeta : roots(p)) {
        const cd delta = s.inner_value(static_cast<int>(cert.lambdas.size()) - 1, zeta);
        const cd dpv = pd.eval(zeta);
        const double local = 1.0 + std::abs(zeta);
        double radius = 1e-3 * local;
        double phase = 0.0;
        if (delta != cd{0.0, 0.0} && dpv != cd{0.0, 0.0}) {
            radius = std::exp((std::log(std::abs(delta)) - c * std::log(std::abs(dpv))) / c);
            phase = (std::arg(-delta) - c * std::arg(dpv)) / c;
            radius = std::clamp(radius, 1e-8 * local, 1e3 * local);
        }
        for (int l = 0; l < c; ++l)
            zs.push_back(zeta + std::polar(radius, phase + 2.0 * std::numbers::pi * l / c));
    }

    const std::size_t total = zs.size();
    std::vector<cd> next(total);
    for (int iter = 0; iter < 400; ++iter) {
        double worst_step = 0.0;
        for (std::size_t i = 0; i < total; ++i) {
            cd v, d;
            double scale = 0.0;
            s.eval(zs[i], v, d, scale);
            cd w = (d == cd{0.0, 0.0}) ? cd{1e-12, 0.0} : v / d;
            cd repel{0.0, 0.0};
            for (std::size_t j = 0; j < total; ++j) {
                if (j == i) continue;
                const cd diff = zs[i] - zs[j];
                if (std::abs(diff) > 1e-300) repel += 1.0 / diff;
            }
            const cd denom = 1.0 - w * repel;
            cd step = w;
            if (std::isfinite(denom.real()) && std::isfinite(denom.imag()) &&
                std::abs(denom) > 1e-12)
                step = w / denom;
            next[i] = zs[i] - step;
            worst_step = std::max(worst_step, std::abs(step) / (1.0 + std::abs(zs[i])));
        }
        zs.swap(next);
        if (worst_step < 1e-13) break;
    }

    double worst = 0.0;
    for (cd z : zs) {
        cd v, d;
        double scale = 0.0;
        s.eval(z, v, d, scale);
        if (scale > 0.0) worst = std::max(worst, std::abs(v) / scale);
    }
    if (worst > 1e-8)
        throw convergence_error("zero_localization: structured root iteration did not converge",
                                zs, worst);
    return zs;
}

std::vector<long> band_counts(const std::vector<cd>& points, const BandSet& bands) {
    std::vector<long> counts(bands.band_count(), 0);
    for (cd z : points) {
        std::size_t best = 0;
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < bands.band_count(); ++j) {
            const auto [lo, hi] = bands.band(j);
            const double dx = std::max({lo - z.real(), 0.0, z.real() - hi});
            const double dist = std::hypot(dx, z.imag());
            if (dist < best_dist) {
                best_dist = dist;
                best = j;
            }
        }
        ++counts[best];
    }
    return counts;
}

bool identity_lift(const LiftCertificate& cert) {
    for (const auto& row : cert.lambdas)
        for (const auto& lam : row)
            if (!lam.is_zero()) return false;
    return true;
}

std::vector<GaussianRational> truncated_product(const std::vector<GaussianRational>& x,
                                                const std::vector<GaussianRational>& y,
                                                std::size_t s) {
    std::vector<GaussianRational> out(s, GaussianRational(0));
    for (std::size_t i = 0; i < s && i < x.size(); ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; i + j < s && j < y.size(); ++j) {
            if (y[j].is_zero()) continue;
            out[i + j] += x[i] * y[j];
        }
    }
    return out;
}

/// Smallest power c <= 128 (and deg Gamma <= 8192) whose top protected block
/// of P^c is Gaussian-integral, with the deepest admissible a <= 4. Works on
/// the reversed polynomial mod z^{4K+1}, so only the top coefficients of each
/// power are ever formed.
std::optional<std::pair<int, int>> scan_lift_parameters(const RationalPoly& pn) {
    constexpr int c_cap = 128;
    constexpr int a_cap = 4;
    constexpr long gamma_degree_cap = 8192;
    const int k = pn.degree();
    const std::size_t window = static_cast<std::size_t>(a_cap) * k + 1;
    std::vector<GaussianRational> rev(window, GaussianRational(0));
    for (std::size_t t = 0; t < window && t <= static_cast<std::size_t>(k); ++t)
        rev[t] = pn.coeff(static_cast<std::size_t>(k) - t);
    std::vector<GaussianRational> rev_pow = rev;
    for (int c = 2; c <= c_cap; ++c) {
        if (static_cast<long>(k) * c > gamma_degree_cap) break;
        rev_pow = truncated_product(rev_pow, rev, window);
        std::size_t bad = window;  // first non-integer offset from the top
        const std::size_t usable = std::min<std::size_t>(window - 1, static_cast<std::size_t>(k) * c);
        for (std::size_t t = 1; t <= usable; ++t) {
            if (!rev_pow[t].is_gaussian_integer()) {
                bad = t;
                break;
            }
        }
        const int a_best = std::min({a_cap, c - 1, static_cast<int>((bad - 1) / k)});
        if (a_best >= 1) return std::make_pair(a_best, c);
    }
    return std::nullopt;
}

BandSet discriminant_bands(const RationalPoly& p, const GaussianRational& b) {
    std::vector<double> edges;
    double span = 0.0;
    for (const double sign : {-1.0, 1.0}) {
        auto coeffs = p.to_complex_coeffs();
        coeffs[0] -= 2.0 * sign * b.to_complex();
        for (cd z : roots(coeffs)) {
            if (std::abs(z.imag()) > 1e-7 * (1.0 + std::abs(z)))
                throw input_error(
                    "pipeline: rationalized polynomial is not a real discriminant "
                    "(denominator bound too coarse)");
            edges.push_back(z.real());
            span = std::max(span, std::abs(z.real()));
        }
    }
    return BandSet::merged(std::move(edges), 1e-8 * (1.0 + span)).first;
}

PipelineResult run_pipeline(BandSet working_set, RationalPoly p, GaussianRational modulus,
                            const BandSet& reference_set, int degree_budget, double r2) {
    const int period = p.degree();
    PipelineResult out;
    out.set = std::move(working_set);
    out.capacity = std::pow(std::abs(modulus.to_complex()), 1.0 / period);
    if (out.capacity < 1.0 - 1e-9)
        throw refusal_error(
            "pipeline: capacity of the working set is at most 1; only finitely many monic "
            "integer polynomials keep all zeros near such a set, so the sequence cannot exist");
    if (r2 <= 0.0) r2 = 1.0 + 1.0 / period;
    if (!(r2 > 1.0)) throw input_error("pipeline: R2 must exceed 1");
    out.r2 = r2;

    const FeketeOptions fopts;  // seed 0: the reference configuration is deterministic
    const DiscreteMeasure mu_ref =
        DiscreteMeasure::uniform(fekete_points(reference_set, 48, fopts).points);

    const double babs = std::abs(modulus.to_complex());
    for (int n = 1; static_cast<long>(n) * period <= degree_budget; ++n) {
        PipelineEntry ent;
        ent.n = n;
        ent.degree = n * period;
        ent.capacity_estimate = std::pow(2.0 * std::pow(babs, n), 1.0 / ent.degree);
        const RationalPoly pn = chebyshev_compose(p, modulus, n);
        if (pn.is_gaussian_integer()) {
            ent.gamma = GaussianIntPoly::from_rational(pn);
            ent.lifted = true;
            ent.certified = true;
            ent.rouche_margin = 0.0;
            ent.roots = composition_roots(p, modulus, n);
            ent.zero_counts = band_counts(ent.roots, out.set);
        } else if (const auto params = scan_lift_parameters(pn)) {
            LiftCertificate cert = integer_lift(pn, params->first, params->second);
            cert = rouche_certify(pn, std::move(cert), r2, 128);
            ent.a = params->first;
            ent.c = params->second;
            ent.lifted = true;
            ent.rouche_margin = cert.rouche_margin;
            ent.certified = cert.certified;
            ent.gamma = cert.gamma;
            if (cert.certified) {
                cert = zero_localization(std::move(cert), pn, r2, &out.set);
                ent.roots = cert.roots;
                ent.zero_counts = cert.zero_counts;
            }
        } else {
            ent.rouche_margin = -1.0;
        }
        if (ent.roots.empty())  // counting measure of P_n equals that of P_n^c
            ent.roots = composition_roots(p, modulus, n);
        ent.moment_distance = measure_distance(counting_measure(ent.roots), mu_ref, 4);
        out.entries.push_back(std::move(ent));
    }
    out.p = std::move(p);
    out.modulus = std::move(modulus);
    return out;
}

}  // namespace

LiftCertificate integer_lift(const RationalPoly& p, int a, int c, std::size_t degree_budget) {
    if (p.degree() < 1) throw input_error("integer_lift: P must be nonconstant");
    if (!p.is_monic()) throw input_error("integer_lift: P must be monic");
    if (a < 1 || a >= c) throw input_error("integer_lift: parameters must satisfy 1 <= a < c");
    const int k = p.degree();
    if (static_cast<std::size_t>(k) * static_cast<std::size_t>(c) > degree_budget)
        throw budget_error("integer_lift: degree of P^c exceeds the budget");

    std::vector<RationalPoly> powers;  // P^0 .. P^{c-a-1}
    powers.reserve(static_cast<std::size_t>(c - a));
    powers.push_back(RationalPoly::constant(GaussianRational(1)));
    RationalPoly pc = powers.front();
    for (int e = 1; e <= c; ++e) {
        pc = pc * p;
        if (e <= c - a - 1) powers.push_back(pc);
    }

    for (long d = static_cast<long>(k) * c - 1; d >= static_cast<long>(k) * (c - a); --d) {
        if (!pc.coeff(static_cast<std::size_t>(d)).is_gaussian_integer())
            throw input_error("integer_lift: coefficient of z^" + std::to_string(d) +
                              " in P^c is not a Gaussian integer (protected degrees z^" +
                              std::to_string(static_cast<long>(k) * (c - a)) + "..z^" +
                              std::to_string(static_cast<long>(k) * c - 1) + ")");
    }

    RationalPoly gamma = pc;
    std::vector<std::vector<GaussianRational>> lambdas(
        static_cast<std::size_t>(c - a), std::vector<GaussianRational>(static_cast<std::size_t>(k)));
    for (int i = 1; i <= c - a; ++i) {
        for (int j = 1; j <= k; ++j) {
            const long d = static_cast<long>(k) * (c - a - i + 1) - j;
            const GaussianRational& g = gamma.coeff(static_cast<std::size_t>(d));
            const GaussianRational lam = nearest_gaussian_integer(g) - g;
            lambdas[i - 1][j - 1] = lam;
            if (lam.is_zero()) continue;
            if (lam.norm() > Rational(1, 2))
                throw std::logic_error("integer_lift: residue exceeds the nearest-integer bound");
            gamma += powers[static_cast<std::size_t>(c - a - i)] *
                     RationalPoly::monomial(static_cast<std::size_t>(k - j), lam);
        }
    }

    LiftCertificate cert;
    try {
        cert.gamma = GaussianIntPoly::from_rational(gamma);
    } catch (const input_error&) {
        throw std::logic_error("integer_lift: elimination left a non-integer coefficient");
    }
    if ((gamma - pc).degree() >= static_cast<int>(k) * (c - a))
        throw std::logic_error("integer_lift: correction reached a protected degree");
    cert.lambdas = std::move(lambdas);
    cert.params = {k, p.common_denominator(), a, c, 0.0};
    return cert;
}

LiftSchedule lift_schedule(int a, int k_deg, const Integer& denom, const Integer& c_budget) {
    if (a < 1 || k_deg < 1 || denom < 1)
        throw input_error("lift_schedule: need a >= 1, K >= 1, denominator >= 1");
    Integer b;
    mpz_pow_ui(b.get_mpz_t(), Integer(a).get_mpz_t(), static_cast<unsigned long>(k_deg));
    if (b > 100000) throw budget_error("lift_schedule: b = a^K is too large to evaluate b!");
    Integer fact;
    mpz_fac_ui(fact.get_mpz_t(), b.get_ui());
    Integer mb;
    mpz_pow_ui(mb.get_mpz_t(), denom.get_mpz_t(), b.get_ui());
    const Integer c = fact * mb;
    if (c > c_budget) throw budget_error("lift_schedule: c = b! * m^b exceeds the budget");
    return {a, b, c};
}

LiftCertificate rouche_certify(const RationalPoly& p, LiftCertificate cert, double r2,
                               int n_samples) {
    if (!(r2 > 1.0)) throw input_error("rouche_certify: R2 must exceed 1");
    if (n_samples < 64) throw input_error("rouche_certify: need at least 64 samples");
    if (p.degree() != cert.params.k_deg)
        throw input_error("rouche_certify: polynomial degree does not match the certificate");
    const int k = cert.params.k_deg;
    const int a = cert.params.a;
    const StructuredLift s(p, cert);
    const auto base = p.to_complex_coeffs();
    const int rows = static_cast<int>(cert.lambdas.size());

    double margin = 0.0;
    double m_max = 0.0;
    for (int t = 0; t < n_samples; ++t) {
        const double theta = 2.0 * std::numbers::pi * t / n_samples;
        auto coeffs = base;
        coeffs[0] -= std::polar(r2, theta);
        for (cd z : roots(coeffs)) {
            const cd pv = p.eval(z);
            // |Gamma - P^c| / |P|^c = |sum_i I_i(z) pv^{1-i}| / |pv|^{a+1}:
            // only non-positive powers of pv appear, so nothing blows up.
            cd acc{0.0, 0.0};
            cd w{1.0, 0.0};
            const cd inv = 1.0 / pv;
            for (int i = 0; i < rows; ++i) {
                if (s.has_inner[i]) acc += s.inner_value(i, z) * w;
                w *= inv;
            }
            margin = std::max(margin, std::abs(acc) / std::pow(std::abs(pv), a + 1));
            double msum = 0.0;
            double zp = 1.0;
            for (int j = 0; j < k; ++j) {
                msum += zp;
                zp *= std::abs(z);
            }
            m_max = std::max(m_max, msum);
        }
    }
    cert.rouche_margin = margin;
    cert.analytic_margin = 2.0 * m_max / (std::pow(r2, a > 0 ? a : 1) * (r2 - 1.0));
    cert.below_half = margin <= 0.5;
    cert.certified = margin < 1.0;
    cert.params.r2 = r2;
    return cert;
}

LiftCertificate zero_localization(LiftCertificate cert, const RationalPoly& p, double r2,
                                  const BandSet* bands) {
    if (!cert.certified) throw input_error("zero_localization: certificate is not certified");
    if (!(r2 > 1.0)) throw input_error("zero_localization: R2 must exceed 1");
    if (p.degree() != cert.params.k_deg)
        throw input_error("zero_localization: polynomial degree does not match the certificate");
    const int c = cert.params.c;

    std::vector<cd> zs;
    if (identity_lift(cert)) {
        for (cd z : roots(p))
            for (int l = 0; l < c; ++l) zs.push_back(z);
    } else {
        zs = structured_roots(p, cert);
    }

    double worst = 0.0;
    for (cd z : zs) worst = std::max(worst, std::abs(p.eval(z)));
    if (!(worst < r2))
        throw convergence_error(
            "zero_localization: a root of Gamma has |P(root)| >= R2, inconsistent with the "
            "certificate (lemniscate sampling too sparse)",
            zs, worst);

    if (bands != nullptr && bands->band_count() > 0)
        cert.zero_counts = band_counts(zs, *bands);
    else
        cert.zero_counts = {static_cast<long>(zs.size())};
    cert.roots = std::move(zs);
    return cert;
}

std::vector<cd> composition_roots(const RationalPoly& p, const GaussianRational& b, int n) {
    if (n < 1) throw input_error("composition_roots: need n >= 1");
    if (p.degree() < 1 || !p.is_monic())
        throw input_error("composition_roots: generator must be monic and nonconstant");
    const auto base = p.to_complex_coeffs();
    const cd bv = b.to_complex();
    std::vector<cd> out;
    out.reserve(static_cast<std::size_t>(p.degree()) * n);
    for (int k = 1; k <= n; ++k) {
        const double tau = 2.0 * std::cos((2.0 * k - 1.0) * std::numbers::pi / (2.0 * n));
        auto coeffs = base;
        coeffs[0] -= bv * tau;
        for (cd z : roots(coeffs)) out.push_back(z);
    }
    return out;
}

PipelineResult pipeline(const BandSet& set, int degree_budget, unsigned long denom_bound,
                        double r2) {
    if (set.band_count() == 0) throw input_error("pipeline: empty band set");
    if (degree_budget < 1) throw input_error("pipeline: degree budget must be positive");
    if (denom_bound < 1) throw input_error("pipeline: denominator bound must be positive");
    const Integer db(static_cast<unsigned long>(denom_bound));

    RationalPoly p;
    GaussianRational modulus;
    if (set.band_count() == 1) {
        const auto [lo, hi] = set.band(0);
        const Rational mid =
            round_to_denominator((rational_from_double(lo) + rational_from_double(hi)) / 2, db);
        const Rational quarter =
            round_to_denominator((rational_from_double(hi) - rational_from_double(lo)) / 4, db);
        p = RationalPoly({GaussianRational(-mid), GaussianRational(1)});
        modulus = GaussianRational(quarter);
    } else {
        // Calibrate at the smallest admissible period, then read off the
        // Chebyshev polynomial of the calibrated cover from the cosh form.
        const int r = static_cast<int>(set.band_count());
        CoshResult cosh;
        bool built = false;
        std::string last_failure;
        for (int m = r; m <= r + 8 && !built; ++m) {
            try {
                const CalibrateResult cal = calibrate(set, m);
                cosh = cosh_polynomial(cal.data, m);
                built = true;
            } catch (const convergence_error& e) {
                last_failure = e.what();
            }
        }
        if (!built)
            throw convergence_error("pipeline: calibration failed for every admissible period: " +
                                    last_failure);
        const Rational b_exact = Rational(1) / (Rational(2) * cosh.f.leading().re);
        std::vector<GaussianRational> rounded;
        rounded.reserve(cosh.t.coeffs().size());
        for (const auto& coeff : cosh.t.coeffs())
            rounded.emplace_back(round_to_denominator(coeff.re, db));
        rounded.back() = GaussianRational(1);
        p = RationalPoly(std::move(rounded));
        modulus = GaussianRational(round_to_denominator(b_exact, db));
    }

    BandSet working = discriminant_bands(p, modulus);
    return run_pipeline(std::move(working), std::move(p), std::move(modulus), set, degree_budget,
                        r2);
}

PipelineResult pipeline(const PeriodicJacobi& j, int degree_budget, double r2) {
    if (!j.is_real()) throw input_error("pipeline: Jacobi matrix must have real entries");
    if (degree_budget < 1) throw input_error("pipeline: degree budget must be positive");
    const NaimanResult nm = naiman_polynomial(j);
    const BandSpectrum spec = spectrum_bands(j);
    return run_pipeline(spec.bands, nm.p, nm.b, spec.bands, degree_budget, r2);
}

}  // namespace logcap

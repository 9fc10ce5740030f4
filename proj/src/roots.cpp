#include "logcap/roots.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "logcap/errors.hpp"

namespace logcap {

namespace {

using cd = std::complex<double>;

/// p(z) and p'(z) by a fused Horner pass.
std::pair<cd, cd> eval_with_derivative(const std::vector<cd>& c, cd z) {
    cd p{0.0, 0.0};
    cd dp{0.0, 0.0};
    for (std::size_t k = c.size(); k-- > 0;) {
        dp = dp * z + p;
        p = p * z + c[k];
    }
    return {p, dp};
}

double max_abs(const std::vector<cd>& c) {
    double m = 0.0;
    for (const auto& a : c) m = std::max(m, std::abs(a));
    return m;
}

bool residuals_ok(const std::vector<cd>& c, const std::vector<cd>& zs, double bound) {
    for (const auto& z : zs) {
        cd p{0.0, 0.0};
        for (std::size_t k = c.size(); k-- > 0;) p = p * z + c[k];
        if (!(std::abs(p) <= bound)) return false;
    }
    return true;
}

void polish(const std::vector<cd>& c, std::vector<cd>& zs, int iters) {
    for (auto& z : zs) {
        for (int it = 0; it < iters; ++it) {
            auto [p, dp] = eval_with_derivative(c, z);
            if (std::abs(dp) == 0.0) break;
            cd step = p / dp;
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
            z -= step;
        }
    }
}

std::vector<cd> aberth(const std::vector<cd>& c, int max_sweeps) {
    const std::size_t n = c.size() - 1;
    const double an = std::abs(c.back());
    double radius = 0.0;
    for (std::size_t i = 0; i < n; ++i) radius = std::max(radius, std::abs(c[i]) / an);
    radius = 1.0 + radius;

    std::vector<cd> z(n);
    const double two_pi = 2.0 * std::numbers::pi;
    for (std::size_t k = 0; k < n; ++k) {
        const double ang = two_pi * (static_cast<double>(k) / n) + 0.4;
        z[k] = 0.7 * radius * cd{std::cos(ang), std::sin(ang)};
    }

    std::vector<bool> frozen(n, false);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double max_step = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (frozen[k]) continue;
            auto [p, dp] = eval_with_derivative(c, z[k]);
            if (std::abs(p) == 0.0) {
                frozen[k] = true;
                continue;
            }
            cd w;
            if (std::abs(dp) == 0.0) {
                w = cd{1e-8, 1e-8};
            } else {
                w = p / dp;
            }
            cd s{0.0, 0.0};
            for (std::size_t j = 0; j < n; ++j) {
                if (j == k) continue;
                cd d = z[k] - z[j];
                if (std::abs(d) < 1e-300) d = cd{1e-300, 0.0};
                s += 1.0 / d;
            }
            const cd denom = 1.0 - w * s;
            cd step = (std::abs(denom) < 1e-300) ? w : w / denom;
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) step = w;
            z[k] -= step;
            max_step = std::max(max_step, std::abs(step) / (1.0 + std::abs(z[k])));
        }
        if (max_step < 1e-15) break;
    }
    return z;
}

}  // namespace

std::vector<cd> companion_roots(const std::vector<cd>& coeffs) {
    std::vector<cd> c = coeffs;
    while (!c.empty() && std::abs(c.back()) == 0.0) c.pop_back();
    if (c.size() <= 1) return {};
    const std::size_t n = c.size() - 1;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t i = 0; i + 1 < n; ++i) m(i + 1, i) = 1.0;
    for (std::size_t i = 0; i < n; ++i) m(i, n - 1) = -c[i] / c[n];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
    std::vector<cd> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = solver.eigenvalues()(static_cast<long>(i));
    return out;
}

std::vector<cd> roots(std::vector<cd> coeffs, double tol) {
    while (!coeffs.empty() && std::abs(coeffs.back()) == 0.0) coeffs.pop_back();
    if (coeffs.empty()) throw input_error("roots: zero polynomial");
    if (coeffs.size() == 1) return {};

    std::vector<cd> out;
    // exact zero roots
    std::size_t lead_zeros = 0;
    while (lead_zeros < coeffs.size() - 1 && std::abs(coeffs[lead_zeros]) == 0.0) ++lead_zeros;
    if (lead_zeros > 0) {
        out.assign(lead_zeros, cd{0.0, 0.0});
        coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<long>(lead_zeros));
    }
    if (coeffs.size() == 1) return out;

    const double scale = max_abs(coeffs);
    std::vector<cd> c = coeffs;
    for (auto& a : c) a /= scale;
    const double bound = tol * 1.0;  // coefficients normalized to max 1

    const std::size_t n = c.size() - 1;
    std::vector<cd> zs;
    if (n == 1) {
        zs = {-c[0] / c[1]};
    } else if (n == 2) {
        const cd a = c[2], b = c[1], cc = c[0];
        const cd disc = std::sqrt(b * b - 4.0 * a * cc);
        // sign choice avoiding cancellation
        const cd q = (std::real(std::conj(b) * disc) >= 0.0) ? -0.5 * (b + disc)
                                                             : -0.5 * (b - disc);
        if (std::abs(q) > 0.0) {
            zs = {q / a, cc / q};
        } else {
            zs = {cd{0.0, 0.0}, -b / a};
        }
    } else {
        zs = aberth(c, 400);
        polish(c, zs, 3);
    }

    if (!residuals_ok(c, zs, bound)) {
        auto alt = companion_roots(c);
        polish(c, alt, 8);
        if (residuals_ok(c, alt, bound)) {
            zs = alt;
        } else if (!residuals_ok(c, zs, bound)) {
            // report whichever iterate has the smaller worst residual
            auto worst = [&](const std::vector<cd>& v) {
                double m = 0.0;
                for (const auto& z : v) {
                    cd p{0.0, 0.0};
                    for (std::size_t k = c.size(); k-- > 0;) p = p * z + c[k];
                    m = std::max(m, std::abs(p));
                }
                return m;
            };
            const double wa = worst(zs), wb = worst(alt);
            const auto& best = (wb < wa) ? alt : zs;
            std::vector<cd> full = out;
            full.insert(full.end(), best.begin(), best.end());
            throw convergence_error("roots: residual contract not met", full,
                                    std::min(wa, wb) * scale);
        }
    }

    out.insert(out.end(), zs.begin(), zs.end());
    return out;
}

std::vector<cd> roots(const RationalPoly& p, double tol) {
    if (p.is_zero()) throw input_error("roots: zero polynomial");
    // rescale exactly when coefficients overflow double range
    std::size_t max_bits = 0;
    for (const auto& c : p.coeffs()) {
        const Rational parts[2] = {c.re, c.im};
        for (const auto& r : parts) {
            if (r == 0) continue;
            const std::size_t nb = mpz_sizeinbase(r.get_num().get_mpz_t(), 2);
            const std::size_t db = mpz_sizeinbase(r.get_den().get_mpz_t(), 2);
            max_bits = std::max(max_bits, nb > db ? nb - db : 0);
        }
    }
    RationalPoly q = p;
    if (max_bits > 900) {
        Rational s(1);
        mpz_mul_2exp(mpq_denref(s.get_mpq_t()), mpq_denref(s.get_mpq_t()),
                     static_cast<mp_bitcnt_t>(max_bits - 500));
        q = p * GaussianRational(s);
    }
    return roots(q.to_complex_coeffs(), tol);
}

}  // namespace logcap

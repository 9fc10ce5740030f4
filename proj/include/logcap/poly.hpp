#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "logcap/rational.hpp"

namespace logcap {

/// Dense univariate polynomial over the Gaussian rationals, coefficients
/// ascending by degree. Trailing zero coefficients are trimmed; the zero
/// polynomial is an empty coefficient vector with degree() == -1.
class RationalPoly {
  public:
    RationalPoly() = default;
    explicit RationalPoly(std::vector<GaussianRational> coeffs);

    static RationalPoly constant(GaussianRational c);
    /// x^n with coefficient c.
    static RationalPoly monomial(std::size_t n, GaussianRational c = GaussianRational(1));

    [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }
    [[nodiscard]] bool is_monic() const;
    [[nodiscard]] bool is_real() const;
    [[nodiscard]] bool is_gaussian_integer() const;

    [[nodiscard]] const std::vector<GaussianRational>& coeffs() const { return coeffs_; }
    /// Coefficient of z^k (zero beyond the degree).
    [[nodiscard]] const GaussianRational& coeff(std::size_t k) const;
    void set_coeff(std::size_t k, GaussianRational value);

    [[nodiscard]] GaussianRational leading() const;
    /// lcm of all coefficient denominators (real and imaginary parts).
    [[nodiscard]] Integer common_denominator() const;

    RationalPoly& operator+=(const RationalPoly& o);
    RationalPoly& operator-=(const RationalPoly& o);
    friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
    friend RationalPoly operator-(RationalPoly a, const RationalPoly& b) { return a -= b; }
    friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b);
    RationalPoly& operator*=(const RationalPoly& o) { return *this = *this * o; }
    friend RationalPoly operator*(const RationalPoly& a, const GaussianRational& s);
    friend bool operator==(const RationalPoly& a, const RationalPoly& b) {
        return a.coeffs_ == b.coeffs_;
    }

    [[nodiscard]] RationalPoly derivative() const;

    /// Exact evaluation (Horner).
    [[nodiscard]] GaussianRational eval_exact(const GaussianRational& z) const;
    /// Double-precision evaluation (Horner over complex doubles).
    [[nodiscard]] std::complex<double> eval(std::complex<double> z) const;

    /// Coefficients converted to complex doubles, ascending.
    [[nodiscard]] std::vector<std::complex<double>> to_complex_coeffs() const;
    /// Real parts as doubles, ascending. Throws input_error if not real.
    [[nodiscard]] std::vector<double> to_real_coeffs() const;

  private:
    void normalize();
    std::vector<GaussianRational> coeffs_;
};

/// p^k by repeated exact multiplication. degree(p)*k above degree_budget
/// raises budget_error.
RationalPoly poly_pow_exact(const RationalPoly& p, unsigned k, std::size_t degree_budget = 1 << 16);

/// Alias of RationalPoly::eval for spec-facing call sites.
std::complex<double> poly_eval(const RationalPoly& p, std::complex<double> z);

struct GaussianInt {
    Integer re{0};
    Integer im{0};

    friend bool operator==(const GaussianInt& a, const GaussianInt& b) {
        return a.re == b.re && a.im == b.im;
    }
};

/// Polynomial over the Gaussian integers, coefficients ascending.
class GaussianIntPoly {
  public:
    GaussianIntPoly() = default;
    explicit GaussianIntPoly(std::vector<GaussianInt> coeffs);

    /// Exact conversion; throws input_error on a non-integer coefficient.
    static GaussianIntPoly from_rational(const RationalPoly& p);

    [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    [[nodiscard]] const std::vector<GaussianInt>& coeffs() const { return coeffs_; }
    [[nodiscard]] bool is_real() const;
    [[nodiscard]] RationalPoly to_rational() const;

    friend bool operator==(const GaussianIntPoly& a, const GaussianIntPoly& b) {
        return a.coeffs_ == b.coeffs_;
    }

  private:
    std::vector<GaussianInt> coeffs_;
};

}  // namespace logcap

#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>

namespace logcap {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parse "p/q" or "p" (arbitrary precision). Throws input_error on junk.
Rational parse_rational(const std::string& text);

/// Canonical "p/q" (or "p" when the denominator is 1).
std::string format_rational(const Rational& value);

/// Exact rational from a double (every finite double is rational).
Rational rational_from_double(double value);

/// Nearest integer; half-integer ties round away from zero.
Integer nearest_integer(const Rational& value);

/// Complex scalar with exact rational real and imaginary parts.
struct GaussianRational {
    Rational re{0};
    Rational im{0};

    GaussianRational() = default;
    GaussianRational(Rational real) : re(std::move(real)) {}
    GaussianRational(Rational real, Rational imag) : re(std::move(real)), im(std::move(imag)) {}
    GaussianRational(int real) : re(real) {}

    static GaussianRational from_double(double real, double imag = 0.0);

    [[nodiscard]] bool is_zero() const { return re == 0 && im == 0; }
    [[nodiscard]] bool is_real() const { return im == 0; }
    [[nodiscard]] bool is_gaussian_integer() const;
    [[nodiscard]] GaussianRational conj() const { return {re, -im}; }
    /// |z|^2, exact.
    [[nodiscard]] Rational norm() const { return re * re + im * im; }
    [[nodiscard]] std::complex<double> to_complex() const {
        return {re.get_d(), im.get_d()};
    }

    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
};

/// Componentwise nearest Gaussian integer (ties away from zero).
GaussianRational nearest_gaussian_integer(const GaussianRational& z);

/// Parse "p/q" or "p/q+r/s i" (space before i optional).
GaussianRational parse_gaussian_rational(const std::string& text);

/// Inverse of parse_gaussian_rational; real values omit the imaginary part.
std::string format_gaussian_rational(const GaussianRational& z);

/// Nearest rational with denominator <= denom_bound: round(x*q)/q.
Rational round_to_denominator(const Rational& value, const Integer& denom_bound);

}  // namespace logcap

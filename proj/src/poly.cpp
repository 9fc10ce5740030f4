#include "logcap/poly.hpp"

#include <utility>

#include "logcap/errors.hpp"

namespace logcap {

RationalPoly::RationalPoly(std::vector<GaussianRational> coeffs) : coeffs_(std::move(coeffs)) {
    normalize();
}

RationalPoly RationalPoly::constant(GaussianRational c) {
    return RationalPoly(std::vector<GaussianRational>{std::move(c)});
}

RationalPoly RationalPoly::monomial(std::size_t n, GaussianRational c) {
    std::vector<GaussianRational> v(n + 1);
    v[n] = std::move(c);
    return RationalPoly(std::move(v));
}

void RationalPoly::normalize() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

bool RationalPoly::is_monic() const {
    return !coeffs_.empty() && coeffs_.back() == GaussianRational(1);
}

bool RationalPoly::is_real() const {
    for (const auto& c : coeffs_)
        if (!c.is_real()) return false;
    return true;
}

bool RationalPoly::is_gaussian_integer() const {
    for (const auto& c : coeffs_)
        if (!c.is_gaussian_integer()) return false;
    return true;
}

const GaussianRational& RationalPoly::coeff(std::size_t k) const {
    static const GaussianRational zero{};
    return k < coeffs_.size() ? coeffs_[k] : zero;
}

void RationalPoly::set_coeff(std::size_t k, GaussianRational value) {
    if (k >= coeffs_.size()) coeffs_.resize(k + 1);
    coeffs_[k] = std::move(value);
    normalize();
}

GaussianRational RationalPoly::leading() const {
    return coeffs_.empty() ? GaussianRational(0) : coeffs_.back();
}

Integer RationalPoly::common_denominator() const {
    Integer l = 1;
    for (const auto& c : coeffs_) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.re.get_den().get_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.im.get_den().get_mpz_t());
    }
    return l;
}

RationalPoly& RationalPoly::operator+=(const RationalPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    normalize();
    return *this;
}

RationalPoly& RationalPoly::operator-=(const RationalPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    normalize();
    return *this;
}

RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<GaussianRational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            if (b.coeffs_[j].is_zero()) continue;
            out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return RationalPoly(std::move(out));
}

RationalPoly operator*(const RationalPoly& a, const GaussianRational& s) {
    if (s.is_zero()) return {};
    std::vector<GaussianRational> out = a.coeffs_;
    for (auto& c : out) c *= s;
    return RationalPoly(std::move(out));
}

RationalPoly RationalPoly::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<GaussianRational> out(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        out[i - 1] = coeffs_[i] * GaussianRational(Rational(static_cast<long>(i)));
    return RationalPoly(std::move(out));
}

GaussianRational RationalPoly::eval_exact(const GaussianRational& z) const {
    GaussianRational acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

std::complex<double> RationalPoly::eval(std::complex<double> z) const {
    std::complex<double> acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + it->to_complex();
    return acc;
}

std::vector<std::complex<double>> RationalPoly::to_complex_coeffs() const {
    std::vector<std::complex<double>> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(c.to_complex());
    return out;
}

std::vector<double> RationalPoly::to_real_coeffs() const {
    std::vector<double> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) {
        if (!c.is_real()) throw input_error("polynomial has non-real coefficients");
        out.push_back(c.re.get_d());
    }
    return out;
}

RationalPoly poly_pow_exact(const RationalPoly& p, unsigned k, std::size_t degree_budget) {
    if (k == 0) return RationalPoly::constant(GaussianRational(1));
    if (p.is_zero()) return {};
    const std::size_t final_degree = static_cast<std::size_t>(p.degree()) * k;
    if (final_degree > degree_budget)
        throw budget_error("poly_pow_exact: result degree " + std::to_string(final_degree) +
                           " exceeds budget " + std::to_string(degree_budget));
    // binary powering
    RationalPoly base = p;
    RationalPoly acc = RationalPoly::constant(GaussianRational(1));
    unsigned e = k;
    while (e > 0) {
        if (e & 1u) acc *= base;
        e >>= 1u;
        if (e > 0) base *= base;
    }
    return acc;
}

std::complex<double> poly_eval(const RationalPoly& p, std::complex<double> z) { return p.eval(z); }

GaussianIntPoly::GaussianIntPoly(std::vector<GaussianInt> coeffs) : coeffs_(std::move(coeffs)) {
    while (!coeffs_.empty() && coeffs_.back().re == 0 && coeffs_.back().im == 0)
        coeffs_.pop_back();
}

GaussianIntPoly GaussianIntPoly::from_rational(const RationalPoly& p) {
    std::vector<GaussianInt> out;
    out.reserve(p.coeffs().size());
    for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
        const auto& c = p.coeffs()[k];
        if (!c.is_gaussian_integer())
            throw input_error("coefficient of z^" + std::to_string(k) +
                              " is not a Gaussian integer: " + format_gaussian_rational(c));
        out.push_back({c.re.get_num(), c.im.get_num()});
    }
    return GaussianIntPoly(std::move(out));
}

bool GaussianIntPoly::is_real() const {
    for (const auto& c : coeffs_)
        if (c.im != 0) return false;
    return true;
}

RationalPoly GaussianIntPoly::to_rational() const {
    std::vector<GaussianRational> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back({Rational(c.re), Rational(c.im)});
    return RationalPoly(std::move(out));
}

}  // namespace logcap

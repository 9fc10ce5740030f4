#include "logcap/rational.hpp"

#include <cctype>
#include <cmath>

#include "logcap/errors.hpp"

namespace logcap {

namespace {

bool valid_rational_text(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (s[i] == '+' || s[i] == '-') ++i;
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    bool seen_slash = false;
    for (; i < s.size(); ++i) {
        if (s[i] == '/') {
            if (seen_slash || i + 1 >= s.size()) return false;
            seen_slash = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (!valid_rational_text(s)) throw input_error("cannot parse rational: '" + text + "'");
    Rational r;
    if (r.set_str(s, 10) != 0) throw input_error("cannot parse rational: '" + text + "'");
    r.canonicalize();
    if (r.get_den() == 0) throw input_error("zero denominator in rational: '" + text + "'");
    return r;
}

std::string format_rational(const Rational& value) { return value.get_str(); }

Rational rational_from_double(double value) {
    if (!std::isfinite(value)) throw input_error("non-finite double is not rational");
    Rational r(value);
    r.canonicalize();
    return r;
}

Integer nearest_integer(const Rational& value) {
    // floor(2*value) bias-free split: n = floor(value), frac decides.
    Integer num = value.get_num();
    Integer den = value.get_den();
    Integer q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    // value = q + r/den with 0 <= r < den. Round up when 2r >= den,
    // except exact halves of negative values round away (down).
    Integer twice = 2 * r;
    if (twice > den) return q + 1;
    if (twice < den) return q;
    // tie: away from zero
    return (value >= 0) ? q + 1 : q;
}

GaussianRational GaussianRational::from_double(double real, double imag) {
    return {rational_from_double(real), rational_from_double(imag)};
}

bool GaussianRational::is_gaussian_integer() const {
    return re.get_den() == 1 && im.get_den() == 1;
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    Rational n = o.norm();
    if (n == 0) throw input_error("division by zero GaussianRational");
    Rational r = (re * o.re + im * o.im) / n;
    Rational i = (im * o.re - re * o.im) / n;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

GaussianRational nearest_gaussian_integer(const GaussianRational& z) {
    return {Rational(nearest_integer(z.re)), Rational(nearest_integer(z.im))};
}

GaussianRational parse_gaussian_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw input_error("empty gaussian rational");
    if (s.back() == 'i') {
        s.pop_back();
        if (s.empty()) return {Rational(0), Rational(1)};
        // split at the last sign that is not the leading one
        std::size_t split = std::string::npos;
        for (std::size_t i = 1; i < s.size(); ++i)
            if (s[i] == '+' || s[i] == '-') split = i;
        if (split == std::string::npos) {
            // pure imaginary "r/s i"
            return {Rational(0), parse_rational(s)};
        }
        std::string re_part = s.substr(0, split);
        std::string im_part = s.substr(split);
        if (im_part == "+") im_part = "1";
        if (im_part == "-") im_part = "-1";
        return {parse_rational(re_part), parse_rational(im_part)};
    }
    return {parse_rational(s), Rational(0)};
}

std::string format_gaussian_rational(const GaussianRational& z) {
    if (z.im == 0) return format_rational(z.re);
    std::string out = format_rational(z.re);
    std::string ims = format_rational(z.im);
    if (!ims.empty() && ims[0] != '-') out += '+';
    out += ims;
    out += " i";
    return out;
}

Rational round_to_denominator(const Rational& value, const Integer& denom_bound) {
    if (denom_bound < 1) throw input_error("denominator bound must be >= 1");
    Rational scaled = value * Rational(denom_bound);
    Rational r(nearest_integer(scaled), denom_bound);
    r.canonicalize();
    return r;
}

}  // namespace logcap

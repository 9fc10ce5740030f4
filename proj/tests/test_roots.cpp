#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "logcap/errors.hpp"
#include "logcap/poly.hpp"
#include "logcap/roots.hpp"

using namespace logcap;
using cd = std::complex<double>;

namespace {

std::vector<cd> expand(const std::vector<cd>& rs) {
    std::vector<cd> c{1.0};
    for (const auto& r : rs) {
        std::vector<cd> next(c.size() + 1, cd{0.0, 0.0});
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i];
            next[i] -= r * c[i];
        }
        c = next;
    }
    return c;  // already ascending
}

double match_distance(std::vector<cd> found, const std::vector<cd>& expected) {
    double worst = 0.0;
    for (const auto& e : expected) {
        auto it = std::min_element(found.begin(), found.end(), [&](const cd& a, const cd& b) {
            return std::abs(a - e) < std::abs(b - e);
        });
        REQUIRE(it != found.end());
        worst = std::max(worst, std::abs(*it - e));
        found.erase(it);
    }
    return worst;
}

}  // namespace

TEST_CASE("closed forms: linear and quadratic") {
    CHECK(match_distance(roots({cd{-6.0}, cd{2.0}}), {cd{3.0}}) < 1e-14);
    // z^2 - z - 6 = (z-3)(z+2)
    CHECK(match_distance(roots({cd{-6.0}, cd{-1.0}, cd{1.0}}), {cd{3.0}, cd{-2.0}}) < 1e-13);
    // z^2 + 1
    CHECK(match_distance(roots({cd{1.0}, cd{0.0}, cd{1.0}}), {cd{0.0, 1.0}, cd{0.0, -1.0}}) <
          1e-13);
}

TEST_CASE("zero roots are stripped exactly") {
    // z^3 (z - 2)
    const auto rs = roots({cd{0.0}, cd{0.0}, cd{0.0}, cd{-2.0}, cd{1.0}});
    CHECK(rs.size() == 4);
    int zeros = 0;
    for (const auto& r : rs)
        if (r == cd{0.0, 0.0}) ++zeros;
    CHECK(zeros == 3);
    CHECK(match_distance(rs, {cd{0.0}, cd{0.0}, cd{0.0}, cd{2.0}}) < 1e-12);
}

TEST_CASE("chebyshev-style roots at degree 12") {
    // monic chebyshev of [-2,2]: roots 2cos((2k-1)pi/24)
    std::vector<cd> expected;
    for (int k = 1; k <= 12; ++k)
        expected.push_back(cd{2.0 * std::cos((2.0 * k - 1.0) * std::numbers::pi / 24.0), 0.0});
    const auto coeffs = expand(expected);
    const auto rs = roots(coeffs, 1e-10);
    CHECK(rs.size() == 12);
    CHECK(match_distance(rs, expected) < 1e-9);
}

TEST_CASE("residual contract on a double root") {
    // (z-1)^2: residual-based acceptance tolerates the cluster radius
    const auto rs = roots({cd{1.0}, cd{-2.0}, cd{1.0}}, 1e-10);
    CHECK(rs.size() == 2);
    for (const auto& r : rs) {
        const cd p = (r - 1.0) * (r - 1.0);
        CHECK(std::abs(p) <= 1e-10 * 2.0);
    }
}

TEST_CASE("roots re-expand to the original coefficients (property)") {
    std::mt19937_64 rng(2026);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 25; ++trial) {
        const int deg = 3 + static_cast<int>(rng() % 10);
        std::vector<cd> c(deg + 1);
        for (auto& a : c) a = cd{u(rng), u(rng)};
        c[deg] = cd{1.0, 0.0};  // monic
        const auto rs = roots(c, 1e-10);
        REQUIRE(static_cast<int>(rs.size()) == deg);
        const auto back = expand(rs);
        double scale = 0.0;
        for (const auto& a : c) scale = std::max(scale, std::abs(a));
        for (std::size_t i = 0; i < c.size(); ++i)
            CHECK(std::abs(back[i] - c[i]) <= 1e-10 * deg * scale * 10.0);
    }
}

TEST_CASE("companion route agrees with the iterative route") {
    const std::vector<cd> c{cd{-1.0}, cd{0.0}, cd{0.0}, cd{0.0}, cd{1.0}};  // z^4 - 1
    auto a = roots(c);
    auto b = companion_roots(c);
    CHECK(match_distance(a, {cd{1.0}, cd{-1.0}, cd{0.0, 1.0}, cd{0.0, -1.0}}) < 1e-12);
    CHECK(match_distance(b, {cd{1.0}, cd{-1.0}, cd{0.0, 1.0}, cd{0.0, -1.0}}) < 1e-8);
}

TEST_CASE("rational polynomial overload with huge coefficients rescales") {
    // (z - 1/2)^40 has denominators ~2^40; also exercise giant numerators
    RationalPoly p = RationalPoly::constant(GaussianRational(1));
    std::vector<GaussianRational> lin{GaussianRational(Rational(-1, 2)), GaussianRational(1)};
    p = poly_pow_exact(RationalPoly(lin), 12);
    const auto rs = roots(p, 1e-6);
    CHECK(rs.size() == 12);
    // multiplicity-12 cluster radius scales like cond^(1/12); 0.3 is the honest bound
    for (const auto& r : rs) CHECK(std::abs(r - cd{0.5, 0.0}) < 0.3);
}

TEST_CASE("degenerate inputs") {
    CHECK_THROWS_AS(roots(std::vector<cd>{}), input_error);
    CHECK_THROWS_AS(roots(std::vector<cd>{cd{0.0}}), input_error);
    CHECK(roots(std::vector<cd>{cd{5.0}}).empty());
}

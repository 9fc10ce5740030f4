#include <doctest.h>

#include <cmath>
#include <complex>

#include "logcap/errors.hpp"
#include "logcap/measure.hpp"

using namespace logcap;
using cd = std::complex<double>;

namespace {

RationalPoly real_poly(std::vector<Rational> cs) {
    std::vector<GaussianRational> g;
    for (auto& c : cs) g.emplace_back(std::move(c));
    return RationalPoly(std::move(g));
}

}  // namespace

TEST_CASE("counting measure merges multiplicities and pins the weight sum") {
    // (z-1)^2 (z+2) = z^3 - 3z + 2
    const auto p = real_poly({Rational(2), Rational(-3), Rational(0), Rational(1)});
    const auto mu = counting_measure(p, 1e-9, 1e-4);
    REQUIRE(mu.size() == 2);
    CHECK(mu.weight_sum() == 1.0);
    // sorted by real part: -2 first
    CHECK(mu.atoms()[0].point.real() == doctest::Approx(-2.0));
    CHECK(mu.atoms()[0].weight == doctest::Approx(1.0 / 3.0));
    CHECK(mu.atoms()[1].point.real() == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(mu.atoms()[1].weight == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("weights sum to exactly 1.0 even for 1/3 triples") {
    const auto mu = counting_measure({cd{0.0}, cd{1.0}, cd{2.0}});
    CHECK(mu.weight_sum() == 1.0);
}

TEST_CASE("moments and measure distance") {
    const auto mu = DiscreteMeasure::uniform({cd{1.0, 0.0}, cd{-1.0, 0.0}});
    const auto nu = DiscreteMeasure::uniform({cd{0.0, 0.0}});
    const auto m = mu.moments(2);
    CHECK(std::abs(m[0]) < 1e-15);
    CHECK(m[1].real() == doctest::Approx(1.0));
    CHECK(measure_distance(mu, nu, 2) == doctest::Approx(1.0));
    CHECK(measure_distance(mu, mu, 4) == 0.0);

    const auto rep = measure_distance_report(mu, nu, 2);
    CHECK(rep.moment_distance == doctest::Approx(1.0));
    CHECK(rep.potential_gap > 0.0);
    CHECK(std::isfinite(rep.potential_gap));
}

TEST_CASE("measure validation") {
    CHECK_THROWS_AS(DiscreteMeasure({}), input_error);
    CHECK_THROWS_AS(DiscreteMeasure({{cd{0.0}, 0.5}, {cd{1.0}, 0.6}}), input_error);
    CHECK_THROWS_AS(DiscreteMeasure({{cd{0.0}, -0.1}, {cd{1.0}, 1.1}}), input_error);
}

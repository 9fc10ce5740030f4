#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "logcap/chebyshev.hpp"
#include "logcap/errors.hpp"

using namespace logcap;
using cd = std::complex<double>;

namespace {

GaussianRational grat(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return GaussianRational(r);
}

PeriodicJacobi two_band() { return PeriodicJacobi::from_double({0.0, 0.0}, {1.0, 2.0}); }

double max_abs_coeff_diff(const RationalPoly& a, const RationalPoly& b) {
    double worst = 0.0;
    const int deg = std::max(a.degree(), b.degree());
    for (int k = 0; k <= deg; ++k)
        worst = std::max(worst, std::abs((a.coeff(k) - b.coeff(k)).to_complex()));
    return worst;
}

}  // namespace

TEST_CASE("monic chebyshev closed forms on [-2,2]") {
    CHECK(monic_chebyshev_interval(-2.0, 2.0, 1) == RationalPoly({grat(0), grat(1)}));
    CHECK(monic_chebyshev_interval(-2.0, 2.0, 2) == RationalPoly({grat(-2), grat(0), grat(1)}));
    CHECK(monic_chebyshev_interval(-2.0, 2.0, 3) ==
          RationalPoly({grat(0), grat(-3), grat(0), grat(1)}));
    CHECK(monic_chebyshev_interval(-1.0, 1.0, 1) == RationalPoly({grat(0), grat(1)}));
}

TEST_CASE("monic chebyshev of [-2,2] keeps integer coefficients") {
    for (int n : {4, 7, 11, 16}) {
        const auto p = monic_chebyshev_interval(-2.0, 2.0, n);
        CHECK(p.is_monic());
        CHECK(p.degree() == n);
        CHECK(p.is_gaussian_integer());
    }
}

TEST_CASE("monic chebyshev sup norm matches 2((b-a)/4)^n") {
    for (const auto& [a, b] : std::vector<std::pair<double, double>>{{-2.0, 2.0},
                                                                     {-1.0, 1.0},
                                                                     {0.25, 3.5}}) {
        for (int n : {1, 2, 3, 5, 8}) {
            const auto p = monic_chebyshev_interval(a, b, n);
            const auto rep = equioscillation_check(p, BandSet::interval(a, b), 20 * n + 11);
            const double expect = 2.0 * std::pow((b - a) / 4.0, n);
            CHECK(std::abs(rep.norm - expect) / expect < 1e-10);
            CHECK(rep.alternation_count >= n + 1);
        }
    }
}

TEST_CASE("composition closed forms for b=(1,2)") {
    const auto s1 = chebyshev_compose(two_band(), 1);
    CHECK(s1 == RationalPoly({grat(-5), grat(0), grat(1)}));
    const auto s2 = chebyshev_compose(two_band(), 2);
    // (z^2-5)^2 - 8 = z^4 - 10 z^2 + 17
    CHECK(s2 == RationalPoly({grat(17), grat(0), grat(-10), grat(0), grat(1)}));
}

TEST_CASE("free case composition reduces to the interval Chebyshev") {
    const auto j = PeriodicJacobi::from_double({0.0, 0.0}, {1.0, 1.0});
    for (int k : {1, 2, 3, 5}) {
        CHECK(chebyshev_compose(j, k) == monic_chebyshev_interval(-2.0, 2.0, 2 * k));
    }
}

TEST_CASE("composition norm is 2|B|^n with banded equioscillation") {
    const auto spec = spectrum_bands(two_band());
    for (int n : {1, 2, 3, 5, 8}) {
        const auto f = compose_evaluator(two_band(), n);
        const auto rep = equioscillation_check(f, 2 * n, spec.bands, 40 * n + 11);
        const double expect = 2.0 * std::pow(2.0, n);
        CHECK(std::abs(rep.norm - expect) / expect < 1e-12);
        // n*r+1 alternations certified band-wise
        int total = 0;
        for (int c : rep.band_alternations) total += c;
        CHECK(total >= 2 * n + 1);
    }
}

TEST_CASE("evaluator agrees with exact coefficients at moderate degree") {
    const auto p = chebyshev_compose(two_band(), 4);
    const auto f = compose_evaluator(two_band(), 4);
    for (double x : {-2.9, -1.3, 0.0, 1.1, 2.4, 3.0}) {
        CHECK(f(x) == doctest::Approx(p.eval(cd{x, 0.0}).real()).epsilon(1e-11));
    }
}

TEST_CASE("evaluator stays bounded at degree 64 where monomial eval explodes") {
    const auto f = compose_evaluator(two_band(), 32);  // degree 64
    const auto spec = spectrum_bands(two_band());
    const double bound = 2.0 * std::pow(2.0, 32);
    for (std::size_t b = 0; b < spec.bands.band_count(); ++b) {
        const auto [lo, hi] = spec.bands.band(b);
        for (int i = 0; i <= 200; ++i) {
            const double x = lo + (hi - lo) * i / 200.0;
            CHECK(std::abs(f(x)) <= bound * (1.0 + 1e-10));
        }
    }
}

TEST_CASE("zero gaps shrink like O(1/n)") {
    const auto spec = spectrum_bands(two_band());
    auto max_gap = [&](int n) {
        const auto f = compose_evaluator(two_band(), n);
        const auto rep = equioscillation_check(f, 2 * n, spec.bands, 80 * n);
        double worst = 0.0;
        for (double g : rep.zero_gaps) worst = std::max(worst, g);
        return worst;
    };
    const double g8 = max_gap(8);
    const double g32 = max_gap(32);
    CHECK(g32 / g8 <= 0.35);
}

TEST_CASE("one zero between consecutive extremum preimages") {
    const auto spec = spectrum_bands(two_band());
    const int n = 6;
    const auto f = compose_evaluator(two_band(), n);
    const auto rep = equioscillation_check(f, 2 * n, spec.bands, 100 * n);
    // Between consecutive alternation points inside a band there is exactly
    // one zero: zeros and extrema interlace.
    std::size_t zi = 0;
    std::vector<double> alt = rep.alternation_points;
    for (std::size_t i = 1; i < alt.size(); ++i) {
        const double lo = alt[i - 1];
        const double hi = alt[i];
        if (!spec.bands.contains(0.5 * (lo + hi), 1e-12)) continue;  // gap crossing
        int count = 0;
        while (zi < rep.zeros.size() && rep.zeros[zi] < hi) {
            if (rep.zeros[zi] > lo) ++count;
            ++zi;
        }
        CHECK(count == 1);
    }
}

TEST_CASE("remez reproduces closed forms") {
    const auto r3 = remez_union(BandSet::interval(-2.0, 2.0), 3);
    CHECK(max_abs_coeff_diff(r3, monic_chebyshev_interval(-2.0, 2.0, 3)) < 1e-8);

    const auto spec = spectrum_bands(two_band());
    const auto r2 = remez_union(spec.bands, 2);
    CHECK(max_abs_coeff_diff(r2, chebyshev_compose(two_band(), 1)) < 1e-8);

    const auto r4 = remez_union(spec.bands, 4);
    CHECK(max_abs_coeff_diff(r4, chebyshev_compose(two_band(), 2)) < 1e-6);
}

TEST_CASE("remez and composition agree beyond the closed-form pairs") {
    const auto spec = spectrum_bands(two_band());
    const auto r8 = remez_union(spec.bands, 8);
    CHECK(max_abs_coeff_diff(r8, chebyshev_compose(two_band(), 4)) < 1e-6);
}

TEST_CASE("remez on a non-jacobi union returns a certified equioscillant") {
    const BandSet e({-2.0, -0.5, 0.75, 2.25});
    const int n = 5;
    const auto p = remez_union(e, n);
    CHECK(p.is_monic());
    CHECK(p.degree() == n);
    const auto rep = equioscillation_check(p, e, 60 * n);
    int total = 0;
    for (int c : rep.band_alternations) total += c;
    CHECK(total >= n + 1);
}

TEST_CASE("norm ratio to capacity power lies in [1, 2^{1/deg}]") {
    const auto spec = spectrum_bands(two_band());
    const double cap = jacobi_capacity(two_band());
    for (int n : {2, 4, 6}) {
        const auto f = compose_evaluator(two_band(), n);
        const auto rep = equioscillation_check(f, 2 * n, spec.bands, 50 * n);
        const double ratio = std::pow(rep.norm, 1.0 / (2.0 * n)) / cap;
        CHECK(ratio >= 1.0 - 1e-12);
        CHECK(ratio <= std::pow(2.0, 1.0 / (2.0 * n)) + 1e-12);
    }
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(monic_chebyshev_interval(1.0, 1.0, 2), input_error);
    CHECK_THROWS_AS(monic_chebyshev_interval(-1.0, 1.0, 0), input_error);
    CHECK_THROWS_AS(chebyshev_compose(RationalPoly({grat(0), grat(1)}), grat(0), 1), input_error);
    CHECK_THROWS_AS(remez_union(BandSet::interval(0.0, 1.0), 0), input_error);
}

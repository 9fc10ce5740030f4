#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "logcap/chebyshev.hpp"
#include "logcap/errors.hpp"
#include "logcap/integerize.hpp"
#include "logcap/jacobi.hpp"
#include "logcap/measure.hpp"
#include "logcap/poly.hpp"
#include "logcap/roots.hpp"
#include "logcap/sets.hpp"

using namespace logcap;
using cd = std::complex<double>;

namespace {

GaussianRational grat(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return GaussianRational(r);
}

RationalPoly rp(std::vector<GaussianRational> coeffs) { return RationalPoly(std::move(coeffs)); }

std::vector<double> sorted_reals(const std::vector<cd>& zs) {
    std::vector<double> out;
    out.reserve(zs.size());
    for (cd z : zs) out.push_back(z.real());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("integer lift: hand examples") {
    // z - 1/2, a=1, c=2: P^2 = z^2 - z + 1/4, one residue 1/4 at degree 0.
    const RationalPoly p = rp({grat(-1, 2), grat(1)});
    const auto cert = integer_lift(p, 1, 2);
    CHECK(cert.gamma == GaussianIntPoly::from_rational(rp({grat(0), grat(-1), grat(1)})));
    REQUIRE(cert.lambdas.size() == 1);
    REQUIRE(cert.lambdas[0].size() == 1);
    CHECK(cert.lambdas[0][0] == grat(-1, 4));
    CHECK(cert.params.k_deg == 1);
    CHECK(cert.params.denom == 2);
    CHECK(cert.params.a == 1);
    CHECK(cert.params.c == 2);

    // z - 1/3 cannot absorb c=2 (coefficient -2/3 at the protected z^1)
    // but lifts at c=3: Gamma = z^3 - z^2 with residues -1/3 then -2/27.
    const RationalPoly p3 = rp({grat(-1, 3), grat(1)});
    CHECK_THROWS_WITH_AS(integer_lift(p3, 1, 2), doctest::Contains("z^1"), input_error);
    const auto cert3 = integer_lift(p3, 1, 3);
    CHECK(cert3.gamma == GaussianIntPoly::from_rational(rp({grat(0), grat(0), grat(-1), grat(1)})));
    REQUIRE(cert3.lambdas.size() == 2);
    CHECK(cert3.lambdas[0][0] == grat(-1, 3));
    CHECK(cert3.lambdas[1][0] == grat(-2, 27));

    // K=2 with denominator 3: protected coefficients of P^3 are -3 and 4.
    const RationalPoly q = rp({grat(1, 3), grat(-1), grat(1)});
    const RationalPoly qc = poly_pow_exact(q, 3);
    CHECK(qc.coeff(5) == grat(-3));
    CHECK(qc.coeff(4) == grat(4));
    const auto certq = integer_lift(q, 1, 3);
    const RationalPoly diff = certq.gamma.to_rational() - qc;
    CHECK(diff.degree() <= 3);
    CHECK(certq.gamma.is_real());
}

TEST_CASE("integer lift: integer input is the identity lift") {
    const RationalPoly p = rp({grat(-5), grat(0), grat(1)});
    const auto cert = integer_lift(p, 2, 5);
    CHECK(cert.gamma == GaussianIntPoly::from_rational(poly_pow_exact(p, 5)));
    for (const auto& row : cert.lambdas)
        for (const auto& lam : row) CHECK(lam.is_zero());
}

TEST_CASE("integer lift: validation") {
    const RationalPoly p = rp({grat(-1, 2), grat(1)});
    CHECK_THROWS_AS(integer_lift(p, 0, 2), input_error);
    CHECK_THROWS_AS(integer_lift(p, 2, 2), input_error);
    CHECK_THROWS_AS(integer_lift(p, 3, 2), input_error);
    CHECK_THROWS_AS(integer_lift(rp({grat(1), grat(2)}), 1, 2), input_error);   // not monic
    CHECK_THROWS_AS(integer_lift(rp({grat(7)}), 1, 2), input_error);            // constant
    CHECK_THROWS_AS(integer_lift(p, 1, 200, std::size_t{64}), budget_error);
}

TEST_CASE("integer lift: exact integrality decided on random rationals") {
    std::mt19937_64 rng(20260814u);
    int lifted = 0;
    int rejected = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const int k = 1 + static_cast<int>(rng() % 3);
        std::vector<GaussianRational> coeffs(static_cast<std::size_t>(k) + 1);
        coeffs.back() = grat(1);
        for (int i = 0; i < k; ++i)
            coeffs[static_cast<std::size_t>(i)] =
                grat(static_cast<long>(rng() % 41) - 20, 1 + static_cast<long>(rng() % 6));
        const RationalPoly p = rp(coeffs);
        const int c = 2 + static_cast<int>(rng() % 23);
        const int a = 1 + static_cast<int>(rng() % static_cast<unsigned>(std::min(3, c - 1)));
        const RationalPoly pc = poly_pow_exact(p, static_cast<unsigned>(c));
        bool pre = true;
        for (long d = static_cast<long>(k) * c - 1; d >= static_cast<long>(k) * (c - a); --d)
            if (!pc.coeff(static_cast<std::size_t>(d)).is_gaussian_integer()) {
                pre = false;
                break;
            }
        if (!pre) {
            CHECK_THROWS_AS(integer_lift(p, a, c), input_error);
            ++rejected;
            continue;
        }
        ++lifted;
        const auto cert = integer_lift(p, a, c);
        // reconstruct Gamma from the lambda table: the certificate must be
        // exactly the structured correction of P^c
        RationalPoly recon = pc;
        for (int i = 1; i <= c - a; ++i)
            for (int j = 1; j <= k; ++j) {
                const GaussianRational& lam = cert.lambdas[i - 1][j - 1];
                if (lam.is_zero()) continue;
                CHECK(lam.norm() <= Rational(1, 2));
                recon += poly_pow_exact(p, static_cast<unsigned>(c - a - i)) *
                         RationalPoly::monomial(static_cast<std::size_t>(k - j), lam);
            }
        CHECK(recon == cert.gamma.to_rational());
        CHECK((cert.gamma.to_rational() - pc).degree() <
              static_cast<int>(k) * (c - a));
        if (p.is_real()) CHECK(cert.gamma.is_real());
    }
    // frozen split for this seed; both branches must stay exercised
    CHECK(lifted == 11);
    CHECK(rejected == 39);
}

TEST_CASE("lift schedule") {
    // K=1, m=2, a=1: b = 1, c = 1! * 2^1 = 2 -- the hand example's parameters
    const auto s = lift_schedule(1, 1, Integer(2), Integer(1000));
    CHECK(s.a == 1);
    CHECK(s.b == 1);
    CHECK(s.c == 2);
    // a=2, K=2: b = 4, c = 4! * m^4
    const auto s2 = lift_schedule(2, 2, Integer(3), Integer(10000));
    CHECK(s2.b == 4);
    CHECK(s2.c == 24 * 81);
    CHECK_THROWS_AS(lift_schedule(2, 2, Integer(3), Integer(100)), budget_error);
    CHECK_THROWS_AS(lift_schedule(0, 1, Integer(2), Integer(100)), input_error);
}

TEST_CASE("rouche certification: closed-form margins") {
    const RationalPoly p = rp({grat(-1, 2), grat(1)});
    auto cert = integer_lift(p, 1, 2);

    auto at2 = rouche_certify(p, cert, 2.0, 64);
    CHECK(at2.rouche_margin == doctest::Approx(1.0 / 16.0).epsilon(1e-12));
    CHECK(at2.certified);
    CHECK(at2.below_half);
    CHECK(at2.params.r2 == 2.0);
    // paper-style a-priori bound: M = max |z|^0 = 1, 2M/(R2^1 (R2-1)) = 1
    CHECK(at2.analytic_margin == doctest::Approx(1.0).epsilon(1e-12));

    auto near1 = rouche_certify(p, cert, 1.01, 64);
    CHECK(near1.rouche_margin == doctest::Approx(0.25 / 1.0201).epsilon(1e-10));
    CHECK(near1.certified);
    CHECK(near1.rouche_margin > at2.rouche_margin);  // margin grows as R2 drops to 1

    // identity certificates have margin exactly 0
    const RationalPoly q = rp({grat(-5), grat(0), grat(1)});
    auto idc = rouche_certify(q, integer_lift(q, 1, 3), 1.5, 64);
    CHECK(idc.rouche_margin == 0.0);
    CHECK(idc.certified);

    CHECK_THROWS_AS(rouche_certify(p, cert, 1.0, 64), input_error);
    CHECK_THROWS_AS(rouche_certify(p, cert, 2.0, 63), input_error);
    CHECK_THROWS_AS(rouche_certify(q, cert, 2.0, 64), input_error);  // degree mismatch
}

TEST_CASE("zero localization: hand lift and structured certificate") {
    const RationalPoly p = rp({grat(-1, 2), grat(1)});
    auto cert = rouche_certify(p, integer_lift(p, 1, 2), 2.0, 64);
    cert = zero_localization(std::move(cert), p, 2.0);
    REQUIRE(cert.roots.size() == 2);
    const auto xs = sorted_reals(cert.roots);
    CHECK(xs[0] == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(xs[1] == doctest::Approx(1.0).epsilon(1e-10));
    REQUIRE(cert.zero_counts.size() == 1);
    CHECK(cert.zero_counts[0] == 2);

    // z^4 - 10 z^2 + 17 = (z^2-5)^2 - 8 against P = z^2 - 5: the four roots
    // +-sqrt(5 +- 2 sqrt 2) sit two per band of the (1,2)-modulated spectrum
    const RationalPoly gen = rp({grat(-5), grat(0), grat(1)});
    LiftCertificate hand;
    hand.lambdas = {{grat(0), grat(-8)}};
    hand.params = {2, Integer(1), 1, 2, 0.0};
    hand.gamma = GaussianIntPoly::from_rational(rp({grat(17), grat(0), grat(-10), grat(0), grat(1)}));
    hand = rouche_certify(gen, std::move(hand), 3.0, 128);
    CHECK(hand.rouche_margin == doctest::Approx(8.0 / 9.0).epsilon(1e-9));
    REQUIRE(hand.certified);
    const BandSet bands({-3.0, -1.0, 1.0, 3.0});
    hand = zero_localization(std::move(hand), gen, 3.0, &bands);
    REQUIRE(hand.roots.size() == 4);
    const auto ys = sorted_reals(hand.roots);
    const double outer = std::sqrt(5.0 + 2.0 * std::sqrt(2.0));
    const double inner = std::sqrt(5.0 - 2.0 * std::sqrt(2.0));
    CHECK(ys[0] == doctest::Approx(-outer).epsilon(1e-8));
    CHECK(ys[1] == doctest::Approx(-inner).epsilon(1e-8));
    CHECK(ys[2] == doctest::Approx(inner).epsilon(1e-8));
    CHECK(ys[3] == doctest::Approx(outer).epsilon(1e-8));
    for (cd z : hand.roots) CHECK(std::abs(gen.eval(z)) < 3.0);
    REQUIRE(hand.zero_counts.size() == 2);
    CHECK(hand.zero_counts[0] == 2);
    CHECK(hand.zero_counts[1] == 2);
}

TEST_CASE("zero localization: inconsistent certificates are rejected") {
    const RationalPoly p = rp({grat(-1, 2), grat(1)});
    LiftCertificate fake;
    fake.lambdas = {{grat(-401, 4)}};
    fake.params = {1, Integer(2), 1, 2, 0.0};
    fake.gamma = GaussianIntPoly::from_rational(rp({grat(-100), grat(-1), grat(1)}));
    fake.certified = true;  // fabricated: its roots 1/2 +- sqrt(401)/2 escape |P| < 2
    CHECK_THROWS_AS(zero_localization(fake, p, 2.0), convergence_error);

    LiftCertificate uncertified;
    uncertified.lambdas = {{grat(-1, 4)}};
    uncertified.params = {1, Integer(2), 1, 2, 0.0};
    CHECK_THROWS_AS(zero_localization(uncertified, p, 2.0), input_error);
}

TEST_CASE("deep lift of a near-integer discriminant") {
    // P = z^2 - 274/49: the smallest admissible power is c = 49 (the
    // denominator must divide c), and the lift stays certifiable only for a
    // generous lemniscate radius
    const RationalPoly p = rp({grat(-274, 49), grat(0), grat(1)});
    auto cert = integer_lift(p, 1, 49);
    REQUIRE(cert.lambdas.size() == 48);
    for (const auto& row : cert.lambdas) {
        REQUIRE(row.size() == 2);
        CHECK(row[0].is_zero());  // P^c is even, so odd-degree residues vanish
        CHECK(row[1].is_real());
    }
    CHECK(cert.gamma.is_real());
    CHECK((cert.gamma.to_rational() - poly_pow_exact(p, 49)).degree() < 2 * 48);

    // margin grows as the lemniscate tightens but the signed lambda cascade
    // cancels enough to certify even at R2 = 1.25
    auto narrow = rouche_certify(p, cert, 1.25, 64);
    CHECK(narrow.certified);
    CHECK(narrow.rouche_margin > 0.3);
    CHECK(narrow.rouche_margin < 0.4);

    auto wide = rouche_certify(p, cert, 3.5, 64);
    REQUIRE(wide.certified);
    CHECK(wide.rouche_margin < 0.05);
    CHECK(wide.rouche_margin < narrow.rouche_margin);
    CHECK(wide.analytic_margin < 1.0);  // the a-priori bound also certifies here

    const auto spec = spectrum_bands(PeriodicJacobi::from_double({0.0, 0.0}, {1.0, 2.0 + 1.0 / 7.0}));
    auto located = zero_localization(std::move(wide), p, 3.5, &spec.bands);
    REQUIRE(located.roots.size() == 98);
    REQUIRE(located.zero_counts.size() == 2);
    CHECK(located.zero_counts[0] == 49);
    CHECK(located.zero_counts[1] == 49);
    const double center = std::sqrt(274.0 / 49.0);
    for (cd z : located.roots) {
        CHECK(std::abs(p.eval(z)) < 3.5);
        CHECK(std::min(std::abs(z - center), std::abs(z + center)) < 0.4);
    }

    // zero distribution of Gamma stays within the root-perturbation bound of
    // the distribution of P^c (logged envelope, 10x safety)
    const double dist = measure_distance(counting_measure(located.roots),
                                         counting_measure(p), 4);
    const double envelope = 3.0 * std::pow(located.rouche_margin, 1.0 / 98.0);
    MESSAGE("moment distance ", dist, " vs envelope ", envelope);
    CHECK(dist <= 10.0 * envelope);
}

TEST_CASE("composition roots match the expanded polynomials") {
    // generator z, modulus 1: the zeros of the Chebyshev polynomial of [-2,2]
    const auto cheb5 = composition_roots(rp({grat(0), grat(1)}), grat(1), 5);
    REQUIRE(cheb5.size() == 5);
    auto xs = sorted_reals(cheb5);
    for (int k = 0; k < 5; ++k) {
        const double expect = 2.0 * std::cos((2.0 * (5 - k) - 1.0) * std::numbers::pi / 10.0);
        CHECK(xs[static_cast<std::size_t>(k)] == doctest::Approx(expect).epsilon(1e-12));
    }

    const RationalPoly gen = rp({grat(-5), grat(0), grat(1)});
    const auto structured = sorted_reals(composition_roots(gen, grat(2), 3));
    const auto expanded = sorted_reals(roots(chebyshev_compose(gen, grat(2), 3)));
    REQUIRE(structured.size() == expanded.size());
    for (std::size_t i = 0; i < structured.size(); ++i)
        CHECK(structured[i] == doctest::Approx(expanded[i]).epsilon(1e-8));

    CHECK_THROWS_AS(composition_roots(gen, grat(2), 0), input_error);
}

TEST_CASE("pipeline: integer Chebyshev route on [-2,2]") {
    const auto run = pipeline(BandSet::interval(-2.0, 2.0), 16, 64, 2.0);
    CHECK(run.p == rp({grat(0), grat(1)}));
    CHECK(run.modulus == grat(1));
    CHECK(run.capacity == doctest::Approx(1.0).epsilon(1e-12));
    REQUIRE(run.entries.size() == 16);
    for (const auto& ent : run.entries) {
        CHECK(ent.lifted);
        CHECK(ent.certified);
        CHECK(ent.rouche_margin == 0.0);
        CHECK(ent.c == 1);
        const auto expect = GaussianIntPoly::from_rational(
            monic_chebyshev_interval(Rational(-2), Rational(2), ent.n));
        CHECK(ent.gamma == expect);
        REQUIRE(ent.zero_counts.size() == 1);
        CHECK(ent.zero_counts[0] == ent.n);
        CHECK(ent.capacity_estimate ==
              doctest::Approx(std::pow(2.0, 1.0 / ent.n)).epsilon(1e-12));
    }
    // arcsine moments are reproduced exactly from degree 3 on, so the
    // distance sequence is flat there and never increases afterwards
    for (std::size_t i = 3; i < run.entries.size(); ++i)
        CHECK(std::abs(run.entries[i].moment_distance - run.entries[2].moment_distance) <= 1e-9);
    CHECK(run.entries[1].moment_distance <= run.entries[0].moment_distance + 1e-9);
}

TEST_CASE("pipeline: two symmetric bands stay integer with split zeros") {
    const auto run = pipeline(BandSet({-3.0, -1.0, 1.0, 3.0}), 12, 64, 2.0);
    CHECK(run.p == rp({grat(-5), grat(0), grat(1)}));
    CHECK(run.modulus == grat(2));
    CHECK(run.capacity == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    REQUIRE(run.entries.size() == 6);
    for (const auto& ent : run.entries) {
        CHECK(ent.certified);
        CHECK(ent.rouche_margin == 0.0);  // every composition is already integer
        REQUIRE(ent.zero_counts.size() == 2);
        CHECK(ent.zero_counts[0] == ent.n);
        CHECK(ent.zero_counts[1] == ent.n);
        CHECK(ent.capacity_estimate ==
              doctest::Approx(std::pow(2.0, (ent.n + 1.0) / (2.0 * ent.n))).epsilon(1e-12));
    }
    CHECK(run.entries[0].gamma ==
          GaussianIntPoly::from_rational(rp({grat(-5), grat(0), grat(1)})));
    CHECK(run.entries[1].gamma ==
          GaussianIntPoly::from_rational(rp({grat(17), grat(0), grat(-10), grat(0), grat(1)})));
    for (std::size_t i = 2; i < run.entries.size(); ++i)
        CHECK(std::abs(run.entries[i].moment_distance - run.entries[1].moment_distance) <= 1e-9);
}

TEST_CASE("pipeline: genuine lifts on a rational band") {
    const auto run = pipeline(BandSet::interval(-2.5, 2.5), 6, 64, 3.0);
    CHECK(run.modulus == grat(5, 4));
    REQUIRE(run.entries.size() == 6);
    CHECK(run.entries[0].certified);  // P_1 = z is integer
    CHECK(run.entries[0].c == 1);
    const auto& e2 = run.entries[1];  // z^2 - 25/8 lifts at c = 8
    CHECK(e2.lifted);
    CHECK(e2.c == 8);
    CHECK(e2.a == 1);
    REQUIRE(e2.certified);
    CHECK(e2.gamma.is_real());
    long total = 0;
    for (long cnt : e2.zero_counts) total += cnt;
    CHECK(total == static_cast<long>(e2.degree) * e2.c);
    for (const auto& ent : run.entries) {
        if (!ent.lifted) continue;
        MESSAGE("n=", ent.n, " a=", ent.a, " c=", ent.c, " margin=", ent.rouche_margin);
        CHECK(ent.gamma.is_real());
        if (ent.certified && ent.c > 1) {
            long sum = 0;
            for (long cnt : ent.zero_counts) sum += cnt;
            CHECK(sum == static_cast<long>(ent.degree) * ent.c);
        }
    }
}

TEST_CASE("pipeline: perturbed modulus produces one certifiable lift") {
    const PeriodicJacobi j({grat(0), grat(0)}, {grat(1), grat(15, 7)});
    const auto run = pipeline(j, 8, 3.5);
    REQUIRE(run.entries.size() == 4);
    const auto& first = run.entries[0];
    CHECK(first.lifted);
    CHECK(first.c == 49);
    CHECK(first.a == 1);
    CHECK(first.certified);
    REQUIRE(first.zero_counts.size() == 2);
    CHECK(first.zero_counts[0] == 49);
    CHECK(first.zero_counts[1] == 49);
    for (std::size_t i = 1; i < run.entries.size(); ++i) {
        // the denominator 7^{4n} forces c beyond the scan cap: honest failure
        CHECK_FALSE(run.entries[i].lifted);
        CHECK_FALSE(run.entries[i].certified);
        CHECK(run.entries[i].rouche_margin == -1.0);
        CHECK(run.entries[i].moment_distance > 0.0);
    }

    // the tight radius from the worked example also certifies the first lift
    const auto tight = pipeline(j, 2, 1.25);
    REQUIRE(tight.entries.size() == 1);
    CHECK(tight.entries[0].certified);
    CHECK(tight.entries[0].rouche_margin < 0.4);

    // bit-identical rerun
    const auto again = pipeline(j, 8, 3.5);
    REQUIRE(again.entries.size() == run.entries.size());
    for (std::size_t i = 0; i < run.entries.size(); ++i) {
        CHECK(again.entries[i].gamma == run.entries[i].gamma);
        CHECK(again.entries[i].rouche_margin == run.entries[i].rouche_margin);
        CHECK(again.entries[i].moment_distance == run.entries[i].moment_distance);
        CHECK(again.entries[i].capacity_estimate == run.entries[i].capacity_estimate);
        CHECK(again.entries[i].roots == run.entries[i].roots);
        CHECK(again.entries[i].zero_counts == run.entries[i].zero_counts);
    }
}

TEST_CASE("pipeline: refusals and validation") {
    CHECK_THROWS_AS(pipeline(BandSet::interval(-1.0, 1.0), 8, 64, 2.0), refusal_error);
    CHECK_THROWS_AS(pipeline(BandSet::interval(-2.0, 2.0), 0, 64, 2.0), input_error);
    CHECK_THROWS_AS(pipeline(BandSet::interval(-2.0, 2.0), 8, 0, 2.0), input_error);
    CHECK_THROWS_AS(pipeline(BandSet::interval(-2.0, 2.0), 8, 64, 0.5), input_error);
}

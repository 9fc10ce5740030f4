#pragma once

#include <functional>
#include <vector>

#include "logcap/jacobi.hpp"
#include "logcap/poly.hpp"
#include "logcap/rational.hpp"
#include "logcap/sets.hpp"

namespace logcap {

/// Monic Chebyshev polynomial of [a,b], exact coefficients; sup norm on
/// [a,b] is 2((b-a)/4)^n.
RationalPoly monic_chebyshev_interval(const Rational& a, const Rational& b, int n);
RationalPoly monic_chebyshev_interval(double a, double b, int n);

/// Monic Chebyshev polynomial of sigma(J): B^n T_n(P/B) with T_n the monic
/// Chebyshev polynomial of [-2,2]. Degree n*r, sup norm 2|B|^n.
RationalPoly chebyshev_compose(const PeriodicJacobi& j, int n);
RationalPoly chebyshev_compose(const RationalPoly& p, const GaussianRational& b, int n);

/// Numerically stable point evaluator of chebyshev_compose(j, n): runs the
/// three-term recurrence on values instead of expanding coefficients, so it
/// stays accurate where the monomial basis is hopeless (degree >~ 40).
std::function<double(double)> compose_evaluator(const PeriodicJacobi& j, int n);
std::function<double(double)> compose_evaluator(const RationalPoly& p, double b, int n);

struct EquioscillationReport {
    double norm = 0.0;
    std::vector<double> alternation_points;
    /// Longest sign-alternating subsequence among near-extremal points,
    /// walked across bands in increasing order.
    int alternation_count = 0;
    /// Alternation counts certified per band (sums to >= deg+1 for a true
    /// Chebyshev polynomial of the union).
    std::vector<int> band_alternations;
    /// Distances between consecutive zeros within the same band.
    std::vector<double> zero_gaps;
    std::vector<double> zeros;
};

/// Locates extrema of |f| on E by dense grid plus golden-section refinement,
/// counts sign alternations among points attaining (1-1e-8)*norm, and
/// reports zeros found by sign-change bisection.
EquioscillationReport equioscillation_check(const std::function<double(double)>& f, int degree,
                                            const BandSet& set, int grid);
EquioscillationReport equioscillation_check(const RationalPoly& p, const BandSet& set, int grid);

/// Remez exchange for the monic minimal-sup-norm polynomial on a band union.
/// Independent oracle for the closed forms above; converges when the levelled
/// reference equioscillates with spread <= 1e-8.
RationalPoly remez_union(const BandSet& set, int n, int max_iters = 80);

}  // namespace logcap

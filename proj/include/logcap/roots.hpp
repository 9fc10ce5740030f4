#pragma once

#include <complex>
#include <vector>

#include "logcap/poly.hpp"

namespace logcap {

/// All complex roots of the polynomial with the given ascending coefficients.
/// Contract: every returned root r satisfies |p(r)| <= tol * max|coeff|.
/// Primary path is Aberth-Ehrlich simultaneous iteration; on stagnation the
/// companion-matrix eigenvalues (independent route) seed a Newton polish.
/// Throws convergence_error carrying the best iterate if the contract cannot
/// be met.
std::vector<std::complex<double>> roots(std::vector<std::complex<double>> coeffs,
                                        double tol = 1e-10);

std::vector<std::complex<double>> roots(const RationalPoly& p, double tol = 1e-10);

/// Companion-matrix eigenvalue route alone (no residual contract); exposed
/// for cross-checking against the iterative path.
std::vector<std::complex<double>> companion_roots(const std::vector<std::complex<double>>& coeffs);

}  // namespace logcap

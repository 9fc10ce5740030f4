#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace logcap {

struct GaussLegendreRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

/// Nodes and weights for n-point Gauss-Legendre on [-1,1] (cached).
const GaussLegendreRule& gauss_legendre(std::size_t n);

/// Integral over [a,b] of a smooth real integrand, fixed n-point rule.
double integrate_gl(const std::function<double(double)>& f, double a, double b, std::size_t n);

/// Node-doubling Gauss-Legendre until successive values agree within
/// tol*(1+|I|), starting at 32 points, capped at max_nodes.
/// Throws convergence_error when the cap is reached without agreement.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol,
                          std::size_t max_nodes = 1 << 14);

/// Same doubling scheme along a straight complex segment.
std::complex<double> integrate_line(const std::function<std::complex<double>(std::complex<double>)>& f,
                                    std::complex<double> z0, std::complex<double> z1, double tol,
                                    std::size_t max_nodes = 1 << 14);

}  // namespace logcap

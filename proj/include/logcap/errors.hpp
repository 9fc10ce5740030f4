#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace logcap {

/// Malformed or out-of-contract input.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operation refused on mathematical grounds (preconditions of the theory).
struct refusal_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Work would exceed a configured enumeration or expansion budget.
struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Iteration failed to converge; carries the best iterate and its residual.
struct convergence_error : std::runtime_error {
    std::vector<std::complex<double>> best_iterate;
    double residual = 0.0;

    explicit convergence_error(const std::string& what,
                               std::vector<std::complex<double>> best = {},
                               double res = 0.0)
        : std::runtime_error(what), best_iterate(std::move(best)), residual(res) {}
};

}  // namespace logcap

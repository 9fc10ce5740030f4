#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "logcap/measure.hpp"
#include "logcap/sets.hpp"

namespace logcap {

/// Locally optimal Fekete configuration on a discretization of the set.
struct FeketeResult {
    std::vector<std::complex<double>> points;
    /// q_n = prod_{i != j} |z_i - z_j|. Under/overflows for large n; the log
    /// field is always finite and is what d_n is derived from.
    double pairwise_product = 0.0;
    double log_pairwise_product = 0.0;
    /// d_n = q_n^{1/(n(n-1))}.
    double d_n = 0.0;
};

enum class CapacityScheme : std::uint8_t {
    fekete_extrapolation,
    jacobi_formula,
    robin_constant,
};

struct CapacityEstimate {
    double value = 0.0;
    CapacityScheme scheme = CapacityScheme::fekete_extrapolation;
    int n_used = 0;
    std::optional<double> error_bound;
};

/// Phi_mu(z) = sum_i w_i ln 1/|z - x_i|; +infinity when z hits an atom with
/// positive weight.
double log_potential(const DiscreteMeasure& mu, std::complex<double> z);

/// Off-diagonal discrete energy sum_{i != j} w_i w_j ln 1/|x_i - x_j|.
/// Coincident atoms carry infinite self-interaction and are rejected.
double energy(const DiscreteMeasure& mu);

struct FeketeOptions {
    int restarts = 3;
    std::uint64_t seed = 0;
    /// Grid nodes allocated per requested point (split across bands,
    /// cosine-spaced so band endpoints are always grid nodes).
    int grid_per_point = 40;
    int max_sweeps = 200;
};

FeketeResult fekete_points(const BandSet& set, int n, const FeketeOptions& opts = {});
FeketeResult fekete_points(const PointCloud& cloud, int n, const FeketeOptions& opts = {});

double transfinite_diameter(const BandSet& set, int n, const FeketeOptions& opts = {});
double transfinite_diameter(const PointCloud& cloud, int n, const FeketeOptions& opts = {});

/// fekete_extrapolation: fits ln d_n ~ ln C + (ln n + g)/n over a ladder of
/// n values up to n_max and reports the extrapolated C (clamped to stay
/// below the last d_n, which bounds the capacity from above).
/// robin_constant delegates to the calibration module; jacobi_formula lives
/// with PeriodicJacobi (see jacobi.hpp).
CapacityEstimate capacity_estimate(const BandSet& set,
                                   CapacityScheme scheme = CapacityScheme::fekete_extrapolation,
                                   int n_max = 64, const FeketeOptions& opts = {});
CapacityEstimate capacity_estimate(const PointCloud& cloud,
                                   CapacityScheme scheme = CapacityScheme::fekete_extrapolation,
                                   int n_max = 64, const FeketeOptions& opts = {});

}  // namespace logcap

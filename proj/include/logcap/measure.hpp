#pragma once

#include <complex>
#include <vector>

#include "logcap/poly.hpp"

namespace logcap {

struct WeightedAtom {
    std::complex<double> point;
    double weight = 0.0;
};

/// Discrete probability measure: finite atoms, nonnegative weights summing
/// to 1 (validated within 1e-12 at construction, then pinned exactly).
class DiscreteMeasure {
  public:
    explicit DiscreteMeasure(std::vector<WeightedAtom> atoms);
    static DiscreteMeasure uniform(const std::vector<std::complex<double>>& points);

    [[nodiscard]] const std::vector<WeightedAtom>& atoms() const { return atoms_; }
    [[nodiscard]] std::size_t size() const { return atoms_.size(); }
    /// m_k = sum_i w_i z_i^k for k = 1..max_order.
    [[nodiscard]] std::vector<std::complex<double>> moments(std::size_t max_order) const;
    [[nodiscard]] double weight_sum() const;

  private:
    std::vector<WeightedAtom> atoms_;
};

/// Normalized zero-counting measure of p: atoms at the roots, weight 1/deg,
/// root clusters within merge_tol collapsed with additive weights.
DiscreteMeasure counting_measure(const RationalPoly& p, double root_tol = 1e-10,
                                 double merge_tol = 1e-8);

/// Counting measure from a precomputed root multiset.
DiscreteMeasure counting_measure(const std::vector<std::complex<double>>& root_multiset,
                                 double merge_tol = 1e-8);

/// max_{1<=k<=max_order} |m_k(mu) - m_k(nu)|.
double measure_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                        std::size_t max_order);

struct MeasureGapReport {
    double moment_distance = 0.0;
    /// max |potential difference| over a 64-point ring outside both supports.
    double potential_gap = 0.0;
};

MeasureGapReport measure_distance_report(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                         std::size_t max_order);

}  // namespace logcap

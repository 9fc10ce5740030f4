#pragma once

#include <cstddef>
#include <vector>

#include "logcap/poly.hpp"
#include "logcap/potential.hpp"
#include "logcap/rational.hpp"
#include "logcap/sets.hpp"

namespace logcap {

/// Period-r Jacobi matrix: diagonal a_1..a_r, off-diagonal b_1..b_r with
/// b_r coupling consecutive periods. Entries are exact Gaussian rationals.
class PeriodicJacobi {
  public:
    PeriodicJacobi(std::vector<GaussianRational> diag, std::vector<GaussianRational> offdiag);
    /// Entries converted exactly (doubles are dyadic rationals).
    static PeriodicJacobi from_double(const std::vector<double>& diag,
                                      const std::vector<double>& offdiag);

    [[nodiscard]] std::size_t period() const { return diag_.size(); }
    [[nodiscard]] const std::vector<GaussianRational>& diag() const { return diag_; }
    [[nodiscard]] const std::vector<GaussianRational>& offdiag() const { return offdiag_; }
    [[nodiscard]] bool is_real() const;
    /// Modulus B = prod b_i.
    [[nodiscard]] GaussianRational modulus() const;

  private:
    std::vector<GaussianRational> diag_;
    std::vector<GaussianRational> offdiag_;
};

struct NaimanResult {
    RationalPoly p;        // monic, degree r
    GaussianRational b;    // modulus
    RationalPoly p_tilde;  // p / b
};

/// Discriminant polynomial of the period: monic P of degree r with
/// P(z) = B * trace(transfer matrix product). Computed by the tridiagonal
/// determinant recurrence and cross-checked exactly against the trace at 20
/// pseudorandom rational points; a mismatch is a hard internal error.
NaimanResult naiman_polynomial(const PeriodicJacobi& j);

/// Trace of the period-r transfer-matrix product as an exact polynomial.
/// Independent route used by tests; equals naiman_polynomial(j).p.
RationalPoly naiman_trace_polynomial(const PeriodicJacobi& j);

struct BandSpectrum {
    BandSet bands;
    /// Double roots of P_tilde -+ 2 where adjacent bands touch (closed gaps).
    std::vector<double> touch_points;
    /// One zero of P per open band; a merged band holds several.
    std::vector<double> band_zeros;
    /// All 2r edge preimages of +-2, ascending, before merging.
    std::vector<double> band_edges;
    /// Sign of P_tilde at each entry of band_edges (+2 or -2 preimage).
    std::vector<int> edge_levels;
};

/// Spectrum sigma(J) = P_tilde^{-1}([-2,2]) for real entries. Touching bands
/// are merged; the touch points are reported.
BandSpectrum spectrum_bands(const PeriodicJacobi& j);

/// C(sigma(J)) = |B|^{1/r}.
double jacobi_capacity(const PeriodicJacobi& j);

/// CapacityEstimate wrapper for the jacobi_formula scheme.
CapacityEstimate capacity_estimate(const PeriodicJacobi& j);

struct RationalizeResult {
    PeriodicJacobi jacobi;
    /// Worst entrywise rounding error, <= 1/denom_bound.
    double entry_error = 0.0;
    /// Hausdorff bound on the spectral shift: 3 * entry_error (row-sum
    /// eigenvalue perturbation for tridiagonal matrices).
    double spectral_bound = 0.0;
};

/// Rounds every entry to the nearest fraction with denominator denom_bound.
RationalizeResult rationalize(const PeriodicJacobi& j, unsigned long denom_bound);

}  // namespace logcap

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "logcap/jacobi.hpp"
#include "logcap/poly.hpp"
#include "logcap/rational.hpp"
#include "logcap/sets.hpp"

namespace logcap {

struct LiftParams {
    int k_deg = 0;    // degree K of the generator P
    Integer denom{1}; // common denominator m of P
    int a = 0;        // protected-block depth (top a*K coefficients of P^c)
    int c = 0;        // lift power
    double r2 = 0.0;  // lemniscate radius of the last certification
};

/// Integer lift Gamma = P^c + sum_{i,j} lambda_j^(i) z^{K-j} P^{c-a-i} with
/// exactly Gaussian-integer coefficients. lambdas[i-1][j-1] = lambda_j^(i),
/// i = 1..c-a, j = 1..K; every |lambda| <= sqrt(2)/2.
struct LiftCertificate {
    GaussianIntPoly gamma;
    std::vector<std::vector<GaussianRational>> lambdas;
    LiftParams params;
    /// max |Gamma(z) - P(z)^c| / |P(z)|^c over the sampled lemniscate
    /// |P| = R2; < 1 certifies all K*c zeros of Gamma stay inside.
    double rouche_margin = -1.0;
    /// A-priori bound 2M / (R2^a (R2-1)), M = max sampled sum_j |z|^{K-j}.
    double analytic_margin = -1.0;
    bool below_half = false;
    bool certified = false;
    /// Filled by zero_localization: the K*c roots of Gamma and their
    /// per-band counts (single total when no band set is supplied).
    std::vector<std::complex<double>> roots;
    std::vector<long> zero_counts;
};

/// Clears the top a*K coefficients of P^c below the Gaussian integers by
/// descending-degree triangular elimination. Requires 1 <= a < c and that
/// the coefficients of z^{Kc-1}..z^{K(c-a)} of P^c are already Gaussian
/// integers (exact check; the error names the first failing degree).
/// Correction degrees tile 0..K(c-a)-1 exactly once, so
/// deg(Gamma - P^c) < K(c-a).
LiftCertificate integer_lift(const RationalPoly& p, int a, int c,
                             std::size_t degree_budget = std::size_t{1} << 16);

/// Sufficient lift parameters b = a^K, c = b! * m^b (always satisfies the
/// integer_lift precondition). Throws budget_error when c would exceed
/// c_budget or b is too large to evaluate b!.
struct LiftSchedule {
    int a = 0;
    Integer b;
    Integer c;
};
LiftSchedule lift_schedule(int a, int k_deg, const Integer& denom, const Integer& c_budget);

/// Samples the lemniscate |P| = R2 by solving P(z) = R2 e^{i theta} at
/// n_samples equispaced angles (deg P roots each) and records the maximal
/// relative correction |Gamma - P^c| / |P|^c, evaluated through the lambda
/// table so the near-cancelling difference is never formed. certified iff
/// the margin is < 1.
LiftCertificate rouche_certify(const RationalPoly& p, LiftCertificate cert, double r2,
                               int n_samples = 128);

/// Locates all K*c roots of Gamma (structured simultaneous iteration on the
/// lambda form; never the raw coefficients, whose monomial basis is
/// ill-conditioned) and verifies |P(root)| < R2 for each. Requires a
/// certified certificate; a root escaping the lemniscate is a hard
/// inconsistency (sampling too sparse). zero_counts is per band when a band
/// set is given, otherwise the single total.
LiftCertificate zero_localization(LiftCertificate cert, const RationalPoly& p, double r2,
                                  const BandSet* bands = nullptr);

/// Zeros of the composition B^n T_n(P/B) (T_n monic Chebyshev of [-2,2]),
/// obtained from n small solves P(z) = B * 2cos((2k-1)pi/(2n)) instead of
/// expanding the degree-n*K coefficients.
std::vector<std::complex<double>> composition_roots(const RationalPoly& p,
                                                    const GaussianRational& b, int n);

struct PipelineEntry {
    int n = 0;      // composition index
    int degree = 0; // deg P_n = n * period
    int a = 0;      // lift parameters (0 / 1 when P_n is already integer)
    int c = 1;
    bool lifted = false; // a lift exists within the scan caps (c <= 128)
    bool certified = false;
    double rouche_margin = 0.0; // -1 when no lift was found
    /// max_{k<=4} moment gap against the Fekete reference measure.
    double moment_distance = 0.0;
    /// (2 |B|^n)^{1/deg}, the sup-norm capacity estimate of the working set.
    double capacity_estimate = 0.0;
    GaussianIntPoly gamma; // empty when !lifted
    /// Zeros of Gamma for certified entries, zeros of P_n otherwise (their
    /// counting measure equals that of P_n^c, so diagnostics stay honest).
    std::vector<std::complex<double>> roots;
    std::vector<long> zero_counts; // per band of the working set
};

struct PipelineResult {
    BandSet set;     // working spectrum: preimage of [-2B, 2B] under P
    RationalPoly p;  // monic generator discriminant
    GaussianRational modulus;
    double capacity = 0.0; // |modulus|^{1/period}
    double r2 = 0.0;
    std::vector<PipelineEntry> entries;
};

/// Monic integer polynomials with all zeros near E, degree by degree:
/// builds a rational discriminant pair (P, B) for E (exact midpoint form
/// for one band, calibrate + cosh interpolation for several), forms the
/// compositions P_n, lifts the non-integer ones, certifies, localizes
/// zeros, and reports moment distances against a 48-point Fekete reference
/// on E. Refuses sets of capacity below 1 - 1e-9: on such sets only
/// finitely many monic integer polynomials keep their zeros nearby.
/// r2 <= 0 selects the default 1 + 1/period. Deterministic: identical
/// inputs reproduce bit-identical results.
PipelineResult pipeline(const BandSet& set, int degree_budget, unsigned long denom_bound = 64,
                        double r2 = 0.0);

/// Same pipeline starting from an exact periodic Jacobi matrix (no
/// rationalization step; the spectrum is the working set).
PipelineResult pipeline(const PeriodicJacobi& j, int degree_budget, double r2 = 0.0);

}  // namespace logcap

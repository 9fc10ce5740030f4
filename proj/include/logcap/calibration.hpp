#pragma once

#include <complex>
#include <vector>

#include "logcap/poly.hpp"
#include "logcap/sets.hpp"

namespace logcap {

/// Green differential data for a band union E = [e1,e2] u ... u [e_{2r-1},e_{2r}]:
/// structure polynomial q(z) = prod(z - e_i), the monic degree r-1 polynomial R
/// whose gap integrals of R/sqrt|q| vanish, its roots (one per open gap), and
/// the harmonic measures of the bands.
struct CalibrationData {
    BandSet set;
    std::vector<double> q_coeffs;  // ascending, prod (z - e_i)
    std::vector<double> r_coeffs;  // ascending, monic degree r-1
    std::vector<double> lambda;    // roots of R, strictly one per gap, ascending
    std::vector<double> omega;     // band harmonic measures, positive, sums to 1
    /// Sign of the raw band period integral of R/sqrt|q| (alternates from the
    /// rightmost band); omega stores the absolute values.
    std::vector<int> period_signs;
    /// Calibration order and per-band integers (set by calibrate); 0 = unset.
    int order = 0;
    std::vector<long> order_split;
};

/// Solves the (r-1)x(r-1) gap-moment system for R and locates its roots.
/// The harmonic-measure fields stay empty. r = 1 returns R == 1.
CalibrationData solve_R(const BandSet& set);

/// solve_R plus band periods: omega_k = |integral over band_k of R/sqrt|q||/pi.
CalibrationData harmonic_measures(const BandSet& set);

struct GreenEvaluation {
    std::complex<double> z;
    double g = 0.0;      // Green function value, >= 0, zero on E
    double robin = 0.0;  // Robin constant of the set (shared per set)
};

/// Full complex Green integral G(z) = int_{e_{2r}}^z R/sqrt(q) along a path
/// avoiding E; branch fixed by sqrt(q(x)) > 0 for x > e_{2r}. Re G = g.
std::complex<double> green_complex(const CalibrationData& data, std::complex<double> z);

GreenEvaluation green_eval(const CalibrationData& data, std::complex<double> z);
GreenEvaluation green_eval(const BandSet& set, std::complex<double> z);

/// lim (g(z) - ln|z|), evaluated on the real axis at |z| = 1e6 with the
/// first-order tail correction (sum e_i/2 - sum lambda_j)/z. C(E) = e^{-robin}.
double robin_constant(const CalibrationData& data);
double robin_constant(const BandSet& set);

struct CalibrateResult {
    BandSet set;          // E_m, covers the input set
    std::vector<long> k;  // positive integers summing to m
    int m = 0;
    double max_inflation = 0.0;
    CalibrationData data;  // calibration of E_m, order fields set
};

/// Grows the set (gap edges never past gap midpoints, outer flanks by at
/// most two spans) by damped least-squares Newton until omega(E_m) = k/m
/// within 1e-8, with k_j = round(m*omega_j) repaired to positive integers
/// summing to m.
CalibrateResult calibrate(const BandSet& set, int m);

struct CoshResult {
    RationalPoly f;  // degree N, |f| <= 1 + 1e-6 on E
    RationalPoly t;  // monic rescale of f: the Chebyshev polynomial of E
    double max_abs_on_set = 0.0;
};

/// For a set calibrated at N (omega_k = n_k/N within 1e-8): interpolates
/// h(z) = cosh(N*G(z)) at N+1 real nodes right of e_{2r}; h agrees with a
/// degree-N polynomial f there, validated by |f| <= 1 + 1e-6 on E.
CoshResult cosh_polynomial(const CalibrationData& data, int n);
CoshResult cosh_polynomial(const BandSet& set, int n);

}  // namespace logcap

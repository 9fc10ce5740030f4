#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "logcap/poly.hpp"
#include "logcap/rational.hpp"
#include "logcap/sets.hpp"

namespace logcap {

/// Integer coefficient bounds |a_k| <= bounds[k], k = 0..n.
struct CoeffBox {
    int n = 0;
    std::vector<long> bounds;

    /// Binomial-radius defaults |a_{n-k}| <= C(n,k) rho^k for root radius rho.
    static CoeffBox from_radius(int n, double rho);
    /// Number of integer vectors in the box, prod (2 bounds[k] + 1).
    [[nodiscard]] double candidate_count() const;
};

/// sup over the set of |a_0 + a_1 x + ... |: dense grid (32 n points per
/// band) plus one golden-section refinement around each local maximum.
double sup_norm(const BandSet& set, const std::vector<double>& coeffs);
double sup_norm(const PointCloud& cloud, const std::vector<double>& coeffs);

struct SmallNormEntry {
    std::vector<long> coeffs; // a_0..a_n, first nonzero entry positive
    double sup = 0.0;
};

/// All nonzero integer vectors in the box (one per {a, -a} pair) whose
/// polynomial has sup norm < 1 on the set, sorted by sup norm. Enumeration
/// is lexicographic and capped at 10^7 candidates.
std::vector<SmallNormEntry> small_norm_search(const BandSet& set, int n, const CoeffBox& box);
std::vector<SmallNormEntry> small_norm_search(const PointCloud& cloud, int n, const CoeffBox& box);

struct VolumeEstimate {
    double volume = 0.0;
    /// (2/n^2) ln(volume); -infinity when no sample hit the region.
    double normalized_log = 0.0;
    double box_volume = 0.0;
    std::uint64_t hits = 0;
    std::uint64_t samples = 0;
    bool zero_hits = false;
};

/// Monte-Carlo volume of the coefficient region {a : sup_K |f_a| < 1}.
/// The default sampling box is the Fekete/Vandermonde row-sum bound (solve
/// for coefficients from values at n+1 Fekete points; |values| < 1 bounds
/// each |a_k| by the row 1-norm of the inverse Vandermonde), which contains
/// the region. Requires samples >= 10^4; deterministic for a fixed seed.
VolumeEstimate fn_volume_mc(const BandSet& set, int n, std::uint64_t samples, std::uint64_t seed);
VolumeEstimate fn_volume_mc(const BandSet& set, int n, std::uint64_t samples, std::uint64_t seed,
                            const CoeffBox& box);

/// Monic integer polynomials of degree n with every root in the set
/// (membership within 1e-9 inflation, absorbing root-finder error).
/// Candidates range over the binomial-radius box; budget 10^7, n <= 8.
std::vector<GaussianIntPoly> totally_in_enumerate(double disk_radius, int n);
std::vector<GaussianIntPoly> totally_in_enumerate(const BandSet& set, int n);

/// Exact check that p = z^k * product of cyclotomic polynomials of degree
/// <= 4 (enough for the enumeration scope; repeated factors allowed).
bool factors_into_z_and_cyclotomics(const GaussianIntPoly& p);

/// Exact Bernstein polynomial sum_v f_v C(n,v) x^v (1-x)^{n-v} from the
/// n+1 sampled values f(v/n). Reproduces endpoints and linear functions.
RationalPoly bernstein(const std::vector<Rational>& f_values, int n);

struct NearestConjugateResult {
    GaussianIntPoly poly;
    double distance = 0.0; // optimal-matching max root-target distance
    std::string note;
};

/// Exhaustive argmin over monic integer polynomials in the box of the
/// bottleneck matching distance between their n roots and the targets
/// (which must be closed under conjugation).
NearestConjugateResult nearest_conjugate_set(const std::vector<std::complex<double>>& targets,
                                             int n, const CoeffBox& box);

}  // namespace logcap

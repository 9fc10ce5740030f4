#pragma once

#include <cstddef>

namespace logcap::kernels {

/// Data-parallel inner loops used by the numeric layers. Scalar reference
/// implementations define the semantics; SIMD variants must agree within
/// rounding (equivalence-tested). Selection happens once at first use.
struct KernelTable {
    /// acc[i] += ln((xre[i]-zre)^2 + (xim[i]-zim)^2)
    void (*accum_log_dist2)(const double* xre, const double* xim, std::size_t n, double zre,
                            double zim, double* acc);
    /// sum_i w[i] * ln((xre[i]-zre)^2 + (xim[i]-zim)^2)
    double (*wsum_log_dist2)(const double* xre, const double* xim, const double* w, std::size_t n,
                             double zre, double zim);
    /// out[i] = p(xs[i]) for real coefficients ascending by degree (Horner)
    void (*horner_grid)(const double* coeffs, std::size_t ncoeff, const double* xs, std::size_t n,
                        double* out);
    /// plain inner product
    double (*dot)(const double* a, const double* b, std::size_t n);
    const char* name;
};

const KernelTable& scalar_kernels();

#if LOGCAP_HAVE_AVX2_SOURCE
const KernelTable& avx2_kernels();
#endif

/// True when an AVX2 table was compiled in and the CPU supports avx2+fma.
bool avx2_available();

/// Dispatched table: AVX2 when available unless overridden by force_kernels
/// or the LOGCAP_KERNELS=scalar environment variable.
const KernelTable& active_kernels();

/// Test hook. nullptr restores automatic selection.
void force_kernels(const KernelTable* table);

}  // namespace logcap::kernels

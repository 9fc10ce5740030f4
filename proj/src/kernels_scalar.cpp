#include <cmath>
#include <cstddef>

#include "logcap/kernels.hpp"

namespace logcap::kernels {

namespace {

void accum_log_dist2_scalar(const double* xre, const double* xim, std::size_t n, double zre,
                            double zim, double* acc) {
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xre[i] - zre;
        const double dy = xim[i] - zim;
        acc[i] += std::log(dx * dx + dy * dy);
    }
}

double wsum_log_dist2_scalar(const double* xre, const double* xim, const double* w, std::size_t n,
                             double zre, double zim) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xre[i] - zre;
        const double dy = xim[i] - zim;
        sum += w[i] * std::log(dx * dx + dy * dy);
    }
    return sum;
}

void horner_grid_scalar(const double* coeffs, std::size_t ncoeff, const double* xs, std::size_t n,
                        double* out) {
    for (std::size_t i = 0; i < n; ++i) {
        const double x = xs[i];
        double acc = 0.0;
        for (std::size_t k = ncoeff; k-- > 0;) acc = acc * x + coeffs[k];
        out[i] = acc;
    }
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
    return sum;
}

}  // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable table{accum_log_dist2_scalar, wsum_log_dist2_scalar,
                                   horner_grid_scalar, dot_scalar, "scalar"};
    return table;
}

}  // namespace logcap::kernels

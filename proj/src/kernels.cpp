#include "logcap/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace logcap::kernels {

namespace {
std::atomic<const KernelTable*> g_forced{nullptr};
}

bool avx2_available() {
#if LOGCAP_HAVE_AVX2_SOURCE && defined(__GNUC__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable& active_kernels() {
    const KernelTable* f = g_forced.load(std::memory_order_acquire);
    if (f) return *f;
    static const KernelTable& chosen = []() -> const KernelTable& {
        const char* env = std::getenv("LOGCAP_KERNELS");
        if (env && std::strcmp(env, "scalar") == 0) return scalar_kernels();
#if LOGCAP_HAVE_AVX2_SOURCE
        if (avx2_available()) return avx2_kernels();
#endif
        return scalar_kernels();
    }();
    return chosen;
}

void force_kernels(const KernelTable* table) {
    g_forced.store(table, std::memory_order_release);
}

}  // namespace logcap::kernels

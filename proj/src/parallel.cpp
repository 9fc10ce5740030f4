#include "logcap/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace logcap {

namespace {
std::atomic<unsigned> g_thread_cap{0};
}

void set_thread_cap(unsigned cap) { g_thread_cap.store(cap, std::memory_order_relaxed); }

unsigned thread_cap() {
    unsigned cap = g_thread_cap.load(std::memory_order_relaxed);
    if (cap == 0) cap = std::thread::hardware_concurrency();
    return cap == 0 ? 1 : cap;
}

void parallel_chunks(unsigned chunks, const std::function<void(unsigned)>& fn) {
    if (chunks == 0) return;
    unsigned workers = std::min(chunks, thread_cap());
    if (workers <= 1) {
        for (unsigned c = 0; c < chunks; ++c) fn(c);
        return;
    }
    std::atomic<unsigned> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            unsigned c = next.fetch_add(1, std::memory_order_relaxed);
            if (c >= chunks) return;
            try {
                fn(c);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace logcap

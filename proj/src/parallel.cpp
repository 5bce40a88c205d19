#include "depthbandit/parallel.hpp"

#include <atomic>
#include <cstdlib>

#include <omp.h>

namespace depthbandit {

namespace {

std::atomic<int> g_cap{-1}; // -1 = not yet initialized

int init_from_env() {
    const char* env = std::getenv("DEPTHBANDIT_THREADS");
    if (env == nullptr) return 0;
    const int v = std::atoi(env);
    return v > 0 ? v : 0;
}

} // namespace

int worker_cap() {
    int cap = g_cap.load(std::memory_order_relaxed);
    if (cap < 0) {
        cap = init_from_env();
        g_cap.store(cap, std::memory_order_relaxed);
    }
    return cap;
}

void set_worker_cap(int cap) {
    g_cap.store(cap < 0 ? 0 : cap, std::memory_order_relaxed);
}

int resolve_workers() {
    const int cap = worker_cap();
    return cap > 0 ? cap : omp_get_max_threads();
}

} // namespace depthbandit

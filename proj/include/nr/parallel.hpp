#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace nr {

// Thread budget: NR_THREADS env var, 0 or unset means hardware concurrency.
inline int thread_budget() {
    if (const char* env = std::getenv("NR_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

namespace detail {
inline thread_local bool inside_parallel = false;
}

// Static block partition of [0, n). Results must be written to pre-sized
// storage indexed by i so that assembly order is deterministic. Nested calls
// run serially instead of oversubscribing.
inline void parallel_for(int n, const std::function<void(int)>& body) {
    const int threads = std::min(thread_budget(), n);
    if (threads <= 1 || n < 16 || detail::inside_parallel) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    const int chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const int lo = t * chunk;
        const int hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            detail::inside_parallel = true;
            for (int i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace nr

#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace cohesive {

inline std::atomic<int>& thread_count_slot() {
    static std::atomic<int> n{1};
    return n;
}

inline void set_thread_count(int n) { thread_count_slot().store(n < 1 ? 1 : n); }
inline int thread_count() { return thread_count_slot().load(); }

/// Runs f(i) for i in [0, n). Contiguous block per worker; each index is
/// processed by exactly one thread, so gather-style writes stay
/// deterministic for any thread count.
template <class F>
void parallel_for(std::size_t n, F&& f) {
    int workers = thread_count();
    if (workers <= 1 || n < 2048) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::size_t w = static_cast<std::size_t>(workers);
    std::size_t chunk = (n + w - 1) / w;
    std::vector<std::thread> pool;
    pool.reserve(w);
    for (std::size_t t = 0; t < w; ++t) {
        std::size_t begin = t * chunk;
        std::size_t end = begin + chunk < n ? begin + chunk : n;
        if (begin >= end) break;
        pool.emplace_back([&f, begin, end] {
            for (std::size_t i = begin; i < end; ++i) f(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace cohesive

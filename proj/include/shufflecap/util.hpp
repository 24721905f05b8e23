#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace shufflecap {

inline constexpr const char* kVersion = "0.1.0";

// Runs fn(i) for i in [0, n). With threads > 1 the index range is chunked
// across workers; fn must write results into caller-owned slots so the
// outcome is independent of scheduling.
inline void parallel_for(size_t n, unsigned threads, const std::function<void(size_t)>& fn)
{
    if (threads <= 1 || n < 2) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    unsigned workers = threads;
    if (workers > n) workers = static_cast<unsigned>(n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (size_t i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace shufflecap

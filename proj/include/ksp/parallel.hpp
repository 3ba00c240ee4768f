#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace ksp {

// Runs fn(i) for i in [0, count). Each index must be independent (its own RNG
// substream, its own output slot), so the result cannot depend on the worker
// count or on scheduling.
inline void parallel_for(std::uint64_t count, unsigned workers,
                         const std::function<void(std::uint64_t)>& fn) {
    if (workers <= 1 || count < 2) {
        for (std::uint64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    const unsigned n_threads = std::max(1u, std::min(workers, hw ? hw : workers));
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned w = 0; w < n_threads; ++w) {
        pool.emplace_back([&, w]() {
            for (std::uint64_t i = w; i < count; i += n_threads) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace ksp

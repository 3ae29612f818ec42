#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace cyllens {

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Callers keep
/// determinism by writing results into index i of a preallocated vector and
/// reducing in index order afterwards.
inline void parallel_for(std::int64_t n, int threads, const std::function<void(std::int64_t)>& fn) {
    if (n <= 0) return;
    if (threads <= 1 || n == 1) {
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const int workers = static_cast<int>(std::min<std::int64_t>(threads, n));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::int64_t i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace cyllens

#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace triaxis {

/// Runs fn(i) for i in [0, n) on up to `threads` workers (0 = hardware
/// concurrency). Indices are handed out in contiguous blocks, so callers that
/// write results by index get output independent of scheduling. The first
/// exception thrown by any fn is rethrown after all workers join.
inline void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers = std::min<std::size_t>(threads, n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::exception_ptr first;
    std::mutex mu;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = n * w / workers;
        const std::size_t hi = n * (w + 1) / workers;
        pool.emplace_back([&, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i)
                    fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!first)
                    first = std::current_exception();
            }
        });
    }
    for (auto& t : pool)
        t.join();
    if (first)
        std::rethrow_exception(first);
}

} // namespace triaxis

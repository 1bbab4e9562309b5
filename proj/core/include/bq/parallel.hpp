#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace bq {

// Chunked parallel loop over [0, n).  threads <= 1 runs inline; otherwise the
// range is split into contiguous blocks, one std::thread each.  Work items
// must be independent.
inline void parallel_for(std::size_t n, int threads,
                         const std::function<void(std::size_t)>& body) {
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    auto nt = static_cast<std::size_t>(threads);
    if (nt > n) nt = n;
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (std::size_t t = 0; t < nt; ++t) {
        std::size_t lo = n * t / nt;
        std::size_t hi = n * (t + 1) / nt;
        pool.emplace_back([lo, hi, &body] {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

// Worker count resolution: explicit value wins, otherwise the BQLAB_THREADS
// environment variable, otherwise 1.
int resolve_threads(int requested);

}  // namespace bq

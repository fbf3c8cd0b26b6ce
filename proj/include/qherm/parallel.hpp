// Deterministic fork-join helper: the index range is cut into one contiguous
// chunk per worker, and callers merge per-chunk results in chunk order, so
// the outcome never depends on the thread count.
#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace qherm {

inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

inline void parallel_chunks(std::size_t n_items, unsigned threads,
                            const std::function<void(unsigned chunk, std::size_t begin, std::size_t end)>& fn) {
    unsigned t = resolve_threads(threads);
    if (t > n_items) t = n_items ? static_cast<unsigned>(n_items) : 1;
    if (t <= 1) {
        fn(0, 0, n_items);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(t);
    std::size_t base = n_items / t, extra = n_items % t, begin = 0;
    for (unsigned c = 0; c < t; ++c) {
        std::size_t len = base + (c < extra ? 1 : 0);
        pool.emplace_back(fn, c, begin, begin + len);
        begin += len;
    }
    for (auto& th : pool) th.join();
}

} // namespace qherm

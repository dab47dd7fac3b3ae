#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace clusterkit {

// Worker cap from CLUSTERKIT_THREADS (default 1). Values < 1 are clamped.
int max_threads();

// Evaluates chunk_fn(0..n_chunks-1) and returns the results in chunk order.
// Chunks are fixed units of work, so the combined result is identical for
// every worker count; only wall time changes. threads == -1 uses max_threads().
template <class T>
std::vector<T> parallel_map_chunks(std::size_t n_chunks,
                                   const std::function<T(std::size_t)>& chunk_fn,
                                   int threads = -1) {
    std::vector<T> out(n_chunks);
    int workers = threads == -1 ? max_threads() : threads;
    if (workers < 1) workers = 1;
    if (workers == 1 || n_chunks <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) out[c] = chunk_fn(c);
        return out;
    }
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= n_chunks) return;
            out[c] = chunk_fn(c);
        }
    };
    std::vector<std::thread> pool;
    const std::size_t spawn =
        std::min<std::size_t>(static_cast<std::size_t>(workers), n_chunks);
    pool.reserve(spawn);
    for (std::size_t t = 0; t < spawn; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    return out;
}

}  // namespace clusterkit

#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace systolekit::parallel {

/// Worker count used by parallel loops. 0 = hardware concurrency.
void set_workers(int n);
int workers();

/// Runs fn(begin, end, chunk_index) over fixed-size chunks of [0, total).
/// Chunk boundaries depend only on `total` and `chunk`, never on the worker
/// count, so per-chunk outputs (stored by chunk_index and merged in order)
/// are identical for any number of workers.
template <class Fn>
void for_chunks(std::size_t total, std::size_t chunk, Fn&& fn) {
    if (total == 0) return;
    const std::size_t nchunks = (total + chunk - 1) / chunk;
    const int nthreads = workers();
    if (nthreads <= 1 || nchunks == 1) {
        for (std::size_t c = 0; c < nchunks; ++c)
            fn(c * chunk, std::min(total, (c + 1) * chunk), c);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t c = next.fetch_add(1, std::memory_order_relaxed);
            if (c >= nchunks) return;
            fn(c * chunk, std::min(total, (c + 1) * chunk), c);
        }
    };
    std::vector<std::thread> pool;
    const std::size_t spawn = std::min<std::size_t>(static_cast<std::size_t>(nthreads), nchunks);
    pool.reserve(spawn);
    for (std::size_t t = 0; t < spawn; ++t)
        pool.emplace_back(worker);
    for (auto& th : pool)
        th.join();
}

} // namespace systolekit::parallel

#pragma once

#include <cstdint>
#include <future>
#include <vector>

namespace mlfrac::detail {

// Worker cap from MLFRAC_THREADS (default: hardware concurrency, clamped).
int worker_threads();

// Splits [0, total) into fixed-size chunks, runs fn(chunk_index, begin, end)
// possibly in parallel, and returns the per-chunk results in chunk order.
// Chunk boundaries and the chunk->result mapping do not depend on the thread
// count, so any reduction over the returned vector is reproducible.
template <typename R, typename Fn>
std::vector<R> run_chunks(std::uint64_t total, std::uint64_t chunk_size,
                          Fn&& fn) {
    const std::uint64_t n_chunks =
        total == 0 ? 0 : (total + chunk_size - 1) / chunk_size;
    std::vector<R> results(n_chunks);
    const int workers = worker_threads();
    if (workers <= 1 || n_chunks <= 1) {
        for (std::uint64_t c = 0; c < n_chunks; ++c) {
            std::uint64_t b = c * chunk_size;
            std::uint64_t e = std::min(total, b + chunk_size);
            results[c] = fn(c, b, e);
        }
        return results;
    }
    std::uint64_t next = 0;
    while (next < n_chunks) {
        std::uint64_t batch = std::min<std::uint64_t>(workers, n_chunks - next);
        std::vector<std::future<R>> futs;
        futs.reserve(batch);
        for (std::uint64_t i = 0; i < batch; ++i) {
            std::uint64_t c = next + i;
            std::uint64_t b = c * chunk_size;
            std::uint64_t e = std::min(total, b + chunk_size);
            futs.push_back(std::async(std::launch::async, fn, c, b, e));
        }
        for (std::uint64_t i = 0; i < batch; ++i)
            results[next + i] = futs[i].get();
        next += batch;
    }
    return results;
}

}  // namespace mlfrac::detail

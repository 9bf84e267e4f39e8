#pragma once

#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

namespace residue_forge {

/// Worker count: hardware concurrency, capped by RESIDUE_FORGE_THREADS.
inline unsigned worker_count() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0)
        hw = 1;
    if (const char* env = std::getenv("RESIDUE_FORGE_THREADS")) {
        char* end = nullptr;
        long cap = std::strtol(env, &end, 10);
        if (end != env && cap >= 1 && static_cast<unsigned long>(cap) < hw)
            hw = static_cast<unsigned>(cap);
    }
    return hw;
}

/// Splits [begin, end) into contiguous chunks, one per worker, and runs
/// fn(chunk_index, lo, hi) concurrently. Callers merge per-chunk results in
/// chunk order so the outcome does not depend on scheduling.
template <typename Fn>
void parallel_chunks(std::uint64_t begin, std::uint64_t end, Fn&& fn) {
    if (end <= begin)
        return;
    std::uint64_t total = end - begin;
    unsigned workers = worker_count();
    if (static_cast<std::uint64_t>(workers) > total)
        workers = static_cast<unsigned>(total);
    if (workers <= 1) {
        fn(0u, begin, end);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::uint64_t step = total / workers;
    std::uint64_t extra = total % workers;
    std::uint64_t lo = begin;
    for (unsigned k = 0; k < workers; ++k) {
        std::uint64_t hi = lo + step + (k < extra ? 1 : 0);
        pool.emplace_back([&fn, k, lo, hi] { fn(k, lo, hi); });
        lo = hi;
    }
    for (auto& t : pool)
        t.join();
}

} // namespace residue_forge

#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace mdhits::detail {

/// Turns a requested thread count into an effective one (<= 0 means "all
/// hardware threads").
inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs fn(begin, end) over contiguous chunks of [0, n). Chunk boundaries
/// depend on the thread count but every index is processed by exactly one
/// chunk, so per-index results do not depend on the partition.
template <typename Fn>
void parallel_for(std::int64_t n, int threads, Fn&& fn) {
    threads = resolve_threads(threads);
    if (threads <= 1 || n < 2 * threads) {
        if (n > 0) fn(std::int64_t{0}, n);
        return;
    }
    const std::int64_t chunk = (n + threads - 1) / threads;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads) - 1);
    for (int t = 1; t < threads; ++t) {
        std::int64_t begin = t * chunk;
        if (begin >= n) break;
        std::int64_t end = std::min(n, begin + chunk);
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    fn(std::int64_t{0}, std::min(n, chunk));
    for (auto& th : pool) th.join();
}

/// Counter-based 64-bit generator (splitmix64). Used wherever reproducible
/// random draws are required; the sequence depends only on the seed.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform draw in (0, 1].
    double next_unit() {
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }

    /// Uniform draw in [0, n). Multiply-shift reduction; bias is O(n / 2^64).
    std::int64_t next_below(std::int64_t n) {
        return static_cast<std::int64_t>(
            (static_cast<unsigned __int128>(next()) * static_cast<std::uint64_t>(n)) >> 64);
    }

private:
    std::uint64_t state_;
};

}  // namespace mdhits::detail

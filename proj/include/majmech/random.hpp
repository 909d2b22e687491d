#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace majmech {

/// Counter-based deterministic random stream (splitmix64). The state advances
/// by a fixed odd constant and each output is a pure mix of the counter, so
/// identical seeds give identical streams on every platform. No libc or
/// <random> distributions are involved anywhere downstream.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Unbiased draw in [0, bound) via rejection.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = -bound % bound;  // 2^64 mod bound
        for (;;) {
            const std::uint64_t v = next();
            if (v >= threshold) return v % bound;
        }
    }

    /// Independent substream (split).
    SplitMix64 fork() { return SplitMix64(next() ^ 0xA5A5A5A55A5A5A5Aull); }

  private:
    std::uint64_t state_;
};

/// Uniform ordered draw of `size` distinct elements from {0, ..., n-1}
/// (partial Fisher-Yates).
inline std::vector<int> draw_ordered(int n, int size, SplitMix64& rng) {
    std::vector<int> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), 0);
    for (int t = 0; t < size; ++t) {
        const int j = t + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - t)));
        std::swap(pool[static_cast<std::size_t>(t)], pool[static_cast<std::size_t>(j)]);
    }
    pool.resize(static_cast<std::size_t>(size));
    return pool;
}

}  // namespace majmech

#pragma once
// Deterministic hashing and sampling primitives. Everything that draws
// randomness in the library goes through these so a (dataset, config, seed)
// triple always reproduces the same run, independent of platform stdlib.
#include <cstdint>
#include <vector>

namespace progblock {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
    return splitmix64(a ^ (splitmix64(b) + 0x9E3779B97F4A7C15ull));
}

// Counter-based splitmix stream.
class SplitMix {
public:
    explicit SplitMix(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound). bound must be > 0.
    std::uint64_t next_below(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

private:
    std::uint64_t state_;
};

/// Canonical key for an unordered record pair.
inline std::uint64_t pair_key(std::int32_t u, std::int32_t v) {
    std::uint32_t a = static_cast<std::uint32_t>(u < v ? u : v);
    std::uint32_t b = static_cast<std::uint32_t>(u < v ? v : u);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

/// Uniform [0,1) draw that is a pure function of (seed, pair, salt).
inline double pair_unit_draw(std::uint64_t seed, std::int32_t u, std::int32_t v,
                             std::uint64_t salt) {
    std::uint64_t h = mix64(mix64(seed, pair_key(u, v)), salt);
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

/// Uniform sample of k elements without replacement (partial Fisher-Yates).
/// Returns all of `pool` when k >= pool size. Output order is the shuffle order.
template <typename T>
std::vector<T> sample_without_replacement(std::vector<T> pool, std::size_t k,
                                          SplitMix& rng) {
    if (k >= pool.size()) return pool;
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng.next_below(pool.size() - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
}

/// FNV-1a over a span of 32-bit ids; used for canonical key-set hashing.
inline std::uint64_t hash_ids(const std::vector<std::int32_t>& ids) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::int32_t x : ids) {
        h ^= static_cast<std::uint32_t>(x);
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace progblock

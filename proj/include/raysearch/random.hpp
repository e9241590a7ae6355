#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace raysearch {

/// Seedable deterministic randomness source, pinned for bit-exact
/// reproducibility across platforms:
///   - engine: std::mt19937_64 (fully specified by the standard),
///   - uniform reals: top 53 bits of one engine draw,
///   - bounded ints: Lemire's multiply-shift with rejection,
///   - permutations: Fisher-Yates,
///   - stream splitting: SplitMix64 mix of (seed + (index+1) * golden gamma).
/// Same seed, same draw order -> identical values everywhere.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform on [0, bound); bound must be positive.
    int uniform_int(int bound);

    /// Uniform random permutation of {0, ..., n-1}.
    std::vector<int> permutation(int n);

    /// Derives the seed for substream `index` of master seed `seed`.
    static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

    /// Independent substream `index`; used for per-trial seeding so that
    /// partial re-runs are stable.
    RandomSource split(std::uint64_t index) const {
        return RandomSource(derive_seed(seed_, index));
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

} // namespace raysearch

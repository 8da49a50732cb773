#pragma once

#include <cstdint>
#include <limits>

namespace lgt {

/// Deterministic 64-bit generator (xoshiro256++) with an explicit,
/// copyable state. The same seed always yields the same draw sequence,
/// independent of platform or standard-library version.
///
/// Streams: workers never share a generator. A worker derives its own
/// state with Rng::stream(master_seed, tag, index), which seeds a fresh
/// generator from `master_seed XOR mix(tag, index)` run through
/// SplitMix64. Distinct (tag, index) pairs give statistically
/// independent sequences.
class Rng {
public:
    explicit Rng(std::uint64_t seed) { reseed(seed); }

    void reseed(std::uint64_t seed);

    /// Independent substream for worker `index` under purpose `tag`.
    static Rng stream(std::uint64_t master_seed, std::uint64_t tag,
                      std::uint64_t index, std::uint64_t subindex = 0);

    std::uint64_t next_u64();

    /// Uniform on (0,1), 53-bit resolution, never returns 0 or 1.
    double uniform01();

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi);

private:
    std::uint64_t s_[4];
};

}  // namespace lgt

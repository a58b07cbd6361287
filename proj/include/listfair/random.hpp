#pragma once

#include <cstdint>
#include <random>

namespace listfair {

/// Seeded, stream-split pseudo-random source.
///
/// The engine is std::mt19937_64 (bit-exact by the standard) seeded from a
/// splitmix64 mix of (seed, stream_index). Bounded integers use Lemire's
/// multiply-shift rejection method rather than std::uniform_int_distribution,
/// whose output is implementation-defined. Identical (seed, stream_index)
/// therefore give identical sequences on every conforming toolchain.
class RandomSource {
public:
    RandomSource(std::uint64_t seed, std::uint64_t stream_index);

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] std::uint64_t stream_index() const noexcept { return stream_; }

    std::uint64_t next_u64();

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t uniform_below(std::uint64_t bound);

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01();

    /// A source for an unrelated purpose (e.g. bootstrap vs. sampling) that
    /// shares the user seed but never overlaps this one's streams.
    [[nodiscard]] static RandomSource derived(std::uint64_t seed, std::uint64_t domain,
                                              std::uint64_t stream_index);

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
};

[[nodiscard]] std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace listfair

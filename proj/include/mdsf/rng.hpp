// Counter-based pseudo-random streams in the SplitMix64 family.
//
// Every value is a pure function of (key, position), so the encoder, the
// decoder and any number of simulation workers can read the same stream out
// of order and still agree bit for bit.

#pragma once

#include <cstdint>

namespace mdsf {

/// 64-bit avalanche finalizer (SplitMix64 / Stafford mix13).
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Value at position `pos` of the stream identified by `key`.
[[nodiscard]] constexpr std::uint64_t stream_at(std::uint64_t key, std::uint64_t pos) noexcept {
    return mix64(key + 0x9E3779B97F4A7C15ull * (pos + 1));
}

/// Key of the `id`-th child stream of `key` (split, not sequential draw).
[[nodiscard]] constexpr std::uint64_t substream(std::uint64_t key, std::uint64_t id) noexcept {
    return stream_at(key ^ 0x6A09E667F3BCC909ull, id);
}

/// Maps 64 random bits to a double in [0, 1) with 53-bit resolution.
[[nodiscard]] constexpr double unit_double(std::uint64_t bits) noexcept {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Sequential view of a keyed stream for consumers that do not need random
/// access. Plain value type; copying forks the position, not the stream.
struct CounterRng {
    std::uint64_t key = 0;
    std::uint64_t pos = 0;

    constexpr std::uint64_t next() noexcept { return stream_at(key, pos++); }
    double next_unit() noexcept { return unit_double(next()); }
};

// Domain tags keep unrelated consumers of a single user seed on disjoint
// streams.
inline constexpr std::uint64_t kFountainStreamTag = 0x1F83D9ABFB41BD6Bull;
inline constexpr std::uint64_t kChannelStreamTag = 0x5BE0CD19137E2179ull;
inline constexpr std::uint64_t kSubsetSampleTag = 0x9B05688C2B3E6C1Full;
inline constexpr std::uint64_t kSimSourceTag = 0x510E527FADE682D1ull;

}  // namespace mdsf

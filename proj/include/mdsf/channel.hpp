// Memoryless packet-erasure channel. Each transmitted ESI is delivered
// independently with probability 1 - epsilon; deliveries are a pure function
// of (seed, trial_index, esi), so trials can run in any order or in parallel
// and reproduce exactly.

#pragma once

#include <cstdint>
#include <vector>

namespace mdsf {

struct Channel {
    double epsilon = 0.0;  // erasure probability, 0 <= epsilon < 1
    std::uint64_t seed = 0;
};

/// True when the given ESI survives the channel in this trial.
bool delivered(const Channel& ch, std::uint64_t trial_index, std::uint32_t esi);

/// Transmits ESIs 1, 2, 3, ... and returns the first m_target delivered
/// ones, in order. The transmission horizon is capped at
/// max(10 * m_target / (1 - epsilon), 1000); running past it throws, which
/// is practically unreachable for epsilon < 1.
std::vector<std::uint32_t> collect(const Channel& ch, std::uint64_t trial_index,
                                   std::size_t m_target);

/// Fixed-length transmission of ESIs 1..esi_count; returns the delivered
/// subset in order.
std::vector<std::uint32_t> erase_fixed(const Channel& ch, std::uint64_t trial_index,
                                       std::uint32_t esi_count);

}  // namespace mdsf

#include "mdsf/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mdsf/rng.hpp"

namespace mdsf {

namespace {

void validate(const Channel& ch) {
    if (!(ch.epsilon >= 0.0 && ch.epsilon < 1.0)) {
        throw std::invalid_argument("erasure probability must lie in [0, 1)");
    }
}

std::uint64_t trial_key(const Channel& ch, std::uint64_t trial_index) {
    return substream(ch.seed ^ kChannelStreamTag, trial_index);
}

bool delivered_with_key(std::uint64_t key, std::uint32_t esi, double epsilon) {
    return unit_double(stream_at(key, esi)) >= epsilon;
}

}  // namespace

bool delivered(const Channel& ch, std::uint64_t trial_index, std::uint32_t esi) {
    validate(ch);
    return delivered_with_key(trial_key(ch, trial_index), esi, ch.epsilon);
}

std::vector<std::uint32_t> collect(const Channel& ch, std::uint64_t trial_index,
                                   std::size_t m_target) {
    validate(ch);
    std::vector<std::uint32_t> got;
    if (m_target == 0) return got;
    got.reserve(m_target);
    const std::uint64_t key = trial_key(ch, trial_index);
    const double keep = 1.0 - ch.epsilon;
    const auto horizon = static_cast<std::uint64_t>(
        std::max(1000.0, std::ceil(10.0 * static_cast<double>(m_target) / keep)));
    for (std::uint64_t esi = 1; esi <= horizon; ++esi) {
        if (delivered_with_key(key, static_cast<std::uint32_t>(esi), ch.epsilon)) {
            got.push_back(static_cast<std::uint32_t>(esi));
            if (got.size() == m_target) return got;
        }
    }
    throw std::runtime_error("channel horizon of " + std::to_string(horizon) +
                             " transmissions exhausted before collecting " +
                             std::to_string(m_target) + " symbols");
}

std::vector<std::uint32_t> erase_fixed(const Channel& ch, std::uint64_t trial_index,
                                       std::uint32_t esi_count) {
    validate(ch);
    std::vector<std::uint32_t> kept;
    kept.reserve(static_cast<std::size_t>((1.0 - ch.epsilon) * esi_count) + 1);
    const std::uint64_t key = trial_key(ch, trial_index);
    for (std::uint32_t esi = 1; esi <= esi_count; ++esi) {
        if (delivered_with_key(key, esi, ch.epsilon)) kept.push_back(esi);
    }
    return kept;
}

}  // namespace mdsf

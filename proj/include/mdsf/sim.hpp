// Monte Carlo harness: failure-rate estimation per overhead point and the
// multi-receiver transmitter-overhead experiment. Trials are keyed by index,
// results are reduced with commutative sums, and early stopping is decided on
// fixed block boundaries, so a run is byte-reproducible at any thread count.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mdsf/codes.hpp"

namespace mdsf {

struct SimConfig {
    Code code;
    double epsilon = 0.0;
    std::vector<unsigned> deltas;  // receiver overheads to sweep
    std::uint64_t trials = 1;      // per-point trial cap
    std::uint64_t seed = 0;
    std::size_t payload_len = 1;
    /// Stop a point once this many failures accumulated (checked at block
    /// boundaries). Unset means run the full trial cap.
    std::optional<std::uint64_t> target_failures;
    unsigned threads = 1;  // 0 = hardware concurrency
};

struct PointEstimate {
    unsigned delta = 0;
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    double p_hat = 0.0;
    double ci_low = 0.0;   // 95% Wilson interval
    double ci_high = 0.0;
};

/// Per overhead point: collect k + delta symbols through the channel, run the
/// full decoder, count failures. Deterministic in (config, seed) regardless
/// of thread count.
std::vector<PointEstimate> estimate_pf(const SimConfig& cfg);

struct WilsonInterval {
    double low = 0.0;
    double high = 0.0;
};

/// 95% Wilson score interval for a binomial proportion; well-defined at zero
/// observed failures.
WilsonInterval wilson95(std::uint64_t failures, std::uint64_t trials);

struct MultiuserConfig {
    Code code;
    double epsilon = 0.0;
    std::uint64_t users = 1;
    std::uint64_t trials = 1;
    std::uint64_t seed = 0;
    std::size_t payload_len = 1;
    unsigned threads = 1;      // 0 = hardware concurrency
    std::size_t delta_cap = 100'000;  // hard stop per trial; throws if hit
};

struct MultiuserEstimate {
    /// Per trial: transmitter overhead at which the last receiver decoded.
    std::vector<std::uint32_t> required_delta;

    /// Empirical probability that some receiver is still undecoded after
    /// k + delta transmissions.
    double pe_at(unsigned delta) const;
};

/// Transmitter sends ESIs 1, 2, ... to `users` independent receivers; each
/// receiver feeds its deliveries to a streaming eliminator and acknowledges
/// on completion. A trial ends when every receiver has decoded.
MultiuserEstimate estimate_multiuser(const MultiuserConfig& cfg);

struct TrialBudget {
    std::uint64_t trials = 0;
    bool desk_scale = false;  // false flags budgets beyond ~1e8 trials
};

/// Trials needed to expect `min_failures` failures at the target probability
/// (the min_failures / p rule).
TrialBudget rare_event_budget(double target_p, std::uint64_t min_failures = 20);

}  // namespace mdsf

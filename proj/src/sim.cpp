#include "mdsf/sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "mdsf/channel.hpp"
#include "mdsf/fountain.hpp"
#include "mdsf/rng.hpp"

namespace mdsf {

namespace {

// Early-stop decisions happen on these boundaries only, so the number of
// trials a point consumes never depends on the thread count.
constexpr std::uint64_t kTrialBlock = 32768;

unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

PayloadBlock random_block(const Code& code, std::uint64_t key, std::size_t lanes) {
    CounterRng rng{key};
    const std::uint64_t mask = code.field->order() - 1;
    PayloadBlock u(code.k, Payload(lanes));
    for (Payload& row : u) {
        for (gf_t& v : row) v = static_cast<gf_t>(rng.next() & mask);
    }
    return u;
}

struct PointContext {
    const Code& code;
    double epsilon;
    unsigned delta;
    std::uint64_t point_key;
    std::size_t lanes;
};

bool trial_fails(const PointContext& ctx, std::uint64_t trial) {
    const Channel ch{ctx.epsilon, ctx.point_key};
    const auto esis = collect(ch, trial, ctx.code.k + ctx.delta);
    const std::uint64_t fountain_seed = stream_at(ctx.point_key ^ kFountainStreamTag, trial);
    const PayloadBlock source =
        random_block(ctx.code, stream_at(ctx.point_key ^ kSimSourceTag, trial), ctx.lanes);
    const Encoder enc(ctx.code, source, fountain_seed);
    ReceivedSet rx(ctx.code, fountain_seed);
    for (std::uint32_t esi : esis) rx.add(enc.symbol(esi));
    const DecodeResult res = try_decode(rx);
    if (!res.decoded) return true;
    if (res.source != source) {
        throw std::logic_error("decoder returned a block different from the source");
    }
    return false;
}

std::uint64_t failures_in_range(const PointContext& ctx, std::uint64_t begin,
                                std::uint64_t end) {
    std::uint64_t failures = 0;
    for (std::uint64_t t = begin; t < end; ++t) {
        if (trial_fails(ctx, t)) ++failures;
    }
    return failures;
}

std::uint64_t failures_in_block(const PointContext& ctx, std::uint64_t begin, std::uint64_t end,
                                unsigned threads) {
    const std::uint64_t span = end - begin;
    if (threads <= 1 || span < 2 * threads) return failures_in_range(ctx, begin, end);
    std::vector<std::uint64_t> partial(threads, 0);
    std::vector<std::thread> workers;
    workers.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        const std::uint64_t lo = begin + span * w / threads;
        const std::uint64_t hi = begin + span * (w + 1) / threads;
        workers.emplace_back(
            [&ctx, &partial, w, lo, hi] { partial[w] = failures_in_range(ctx, lo, hi); });
    }
    for (auto& worker : workers) worker.join();
    std::uint64_t total = 0;
    for (std::uint64_t p : partial) total += p;  // commutative reduction
    return total;
}

}  // namespace

WilsonInterval wilson95(std::uint64_t failures, std::uint64_t trials) {
    if (trials == 0) return {0.0, 1.0};
    if (failures > trials) throw std::invalid_argument("more failures than trials");
    constexpr double z = 1.959963984540054;  // 97.5% normal quantile
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(failures) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half =
        z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    WilsonInterval ci{std::max(0.0, center - half), std::min(1.0, center + half)};
    // The proportion endpoints are exact, not rounding dust.
    if (failures == 0) ci.low = 0.0;
    if (failures == trials) ci.high = 1.0;
    return ci;
}

std::vector<PointEstimate> estimate_pf(const SimConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("need at least one trial per point");
    if (cfg.payload_len < 1) throw std::invalid_argument("payloads must carry at least one symbol");
    if (!(cfg.epsilon >= 0.0 && cfg.epsilon < 1.0)) {
        throw std::invalid_argument("erasure probability must lie in [0, 1)");
    }
    const unsigned threads = resolve_threads(cfg.threads);

    std::vector<PointEstimate> out;
    out.reserve(cfg.deltas.size());
    for (unsigned delta : cfg.deltas) {
        const PointContext ctx{cfg.code, cfg.epsilon, delta, substream(cfg.seed, delta),
                               cfg.payload_len};
        std::uint64_t failures = 0;
        std::uint64_t done = 0;
        while (done < cfg.trials) {
            const std::uint64_t block = std::min(kTrialBlock, cfg.trials - done);
            failures += failures_in_block(ctx, done, done + block, threads);
            done += block;
            if (cfg.target_failures && failures >= *cfg.target_failures) break;
        }
        const WilsonInterval ci = wilson95(failures, done);
        out.push_back({delta, done, failures,
                       static_cast<double>(failures) / static_cast<double>(done), ci.low,
                       ci.high});
    }
    return out;
}

double MultiuserEstimate::pe_at(unsigned delta) const {
    if (required_delta.empty()) return 0.0;
    const std::uint64_t undecoded = static_cast<std::uint64_t>(
        std::count_if(required_delta.begin(), required_delta.end(),
                      [delta](std::uint32_t d) { return d > delta; }));
    return static_cast<double>(undecoded) / static_cast<double>(required_delta.size());
}

MultiuserEstimate estimate_multiuser(const MultiuserConfig& cfg) {
    if (cfg.users < 1) throw std::invalid_argument("system needs at least one receiver");
    if (cfg.trials < 1) throw std::invalid_argument("need at least one trial");
    if (cfg.payload_len < 1) throw std::invalid_argument("payloads must carry at least one symbol");
    if (!(cfg.epsilon >= 0.0 && cfg.epsilon < 1.0)) {
        throw std::invalid_argument("erasure probability must lie in [0, 1)");
    }
    const unsigned threads = resolve_threads(cfg.threads);
    const std::size_t k = cfg.code.k;

    MultiuserEstimate est;
    est.required_delta.assign(cfg.trials, 0);

    auto run_trial = [&](std::uint64_t trial) {
        const std::uint64_t root = substream(cfg.seed, trial);
        const std::uint64_t fountain_seed = stream_at(root ^ kFountainStreamTag, 0);
        const PayloadBlock source =
            random_block(cfg.code, stream_at(root ^ kSimSourceTag, 0), cfg.payload_len);
        const Encoder enc(cfg.code, source, fountain_seed);
        const Channel ch{cfg.epsilon, root};

        std::vector<IncrementalDecoder> receivers;
        receivers.reserve(cfg.users);
        for (std::uint64_t r = 0; r < cfg.users; ++r) {
            receivers.emplace_back(cfg.code, fountain_seed, cfg.payload_len);
        }

        std::uint64_t undecoded = cfg.users;
        const std::uint64_t cap = k + cfg.delta_cap;
        for (std::uint64_t e = 1; e <= cap; ++e) {
            const Symbol sym = enc.symbol(static_cast<std::uint32_t>(e));
            for (std::uint64_t r = 0; r < cfg.users; ++r) {
                IncrementalDecoder& dec = receivers[r];
                if (dec.complete()) continue;
                // The channel's trial slot doubles as the per-receiver slot;
                // receivers see independent erasures.
                if (!delivered(ch, r, static_cast<std::uint32_t>(e))) continue;
                if (dec.absorb(sym)) --undecoded;
            }
            if (undecoded == 0) {
                est.required_delta[trial] = static_cast<std::uint32_t>(e - k);
                return;
            }
        }
        throw std::runtime_error("a receiver was still undecoded after k + " +
                                 std::to_string(cfg.delta_cap) + " transmissions");
    };

    if (threads <= 1 || cfg.trials < 2 * threads) {
        for (std::uint64_t t = 0; t < cfg.trials; ++t) run_trial(t);
    } else {
        std::vector<std::thread> workers;
        workers.reserve(threads);
        for (unsigned w = 0; w < threads; ++w) {
            const std::uint64_t lo = cfg.trials * w / threads;
            const std::uint64_t hi = cfg.trials * (w + 1) / threads;
            workers.emplace_back([&run_trial, lo, hi] {
                for (std::uint64_t t = lo; t < hi; ++t) run_trial(t);
            });
        }
        for (auto& worker : workers) worker.join();
    }
    return est;
}

TrialBudget rare_event_budget(double target_p, std::uint64_t min_failures) {
    if (!(target_p > 0.0 && target_p < 1.0)) {
        throw std::invalid_argument("target probability must lie in (0, 1)");
    }
    if (min_failures < 1) throw std::invalid_argument("need at least one expected failure");
    const double raw = std::ceil(static_cast<double>(min_failures) / target_p);
    const auto trials = static_cast<std::uint64_t>(raw);
    return {trials, trials <= 100'000'000ull};
}

}  // namespace mdsf

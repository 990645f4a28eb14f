// Closed-form failure probabilities for random fountain codes and their
// concatenation with a systematic MDS block code.
//
// For a plain random fountain over F_q decoded from k + delta symbols, the
// failure probability sits in [q^(-delta-1), q^(-delta) / (q-1)). Prefixing
// an (n, k) MDS code scales both ends by p_star(n, k, eps): the probability
// that fewer than k of the n block symbols survive the channel. The receiver
// and multi-receiver models compose those bounds with the binomial law of how
// many of k + Delta transmitted symbols arrive.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>

namespace mdsf {

struct BoundPair {
    double lower = 0.0;
    double upper = 0.0;
};

/// Bounds on the decode-failure probability of a plain random fountain over
/// F_q at receiver overhead delta: lower q^(-delta-1), upper
/// q^(-delta) / (q-1) clamped to 1.
BoundPair lrfc_bounds(unsigned delta, unsigned q);

/// Exact probability that a uniform random m_rows x k matrix over F_q has
/// rank k: the product of (1 - q^(i - m_rows)) for i = 0..k-1.
double exact_full_rank(std::size_t m_rows, std::size_t k, unsigned q);

/// 1 - exact_full_rank, accumulated so that values far below machine epsilon
/// of 1.0 keep full relative precision.
double exact_rank_deficiency(std::size_t m_rows, std::size_t k, unsigned q);

/// Probability that at least k of n symbols survive independent erasure with
/// probability epsilon. Binomial tail, summed in the log domain.
double q_star(std::size_t n, std::size_t k, double epsilon);

/// Probability that fewer than k of n symbols survive; the scaling factor of
/// the concatenated bounds. Summed directly, not as 1 - q_star, so it stays
/// accurate when q_star is close to 1.
double p_star(std::size_t n, std::size_t k, double epsilon);

/// lrfc_bounds scaled by p_star(n, k, epsilon): the failure bounds of the
/// concatenated scheme at receiver overhead delta.
BoundPair concat_bounds(unsigned delta, unsigned q, std::size_t n, std::size_t k, double epsilon);

/// Probability that a receiver gathers exactly m of k + delta_tx transmitted
/// symbols: C(k+delta_tx, m) (1-eps)^m eps^(k+delta_tx-m).
double receiver_pmf(std::size_t k, std::size_t delta_tx, std::size_t m, double epsilon);

/// Pluggable model for the decode-failure probability at receiver overhead
/// delta >= 0. The receiver/system formulas are agnostic to where the values
/// come from: analytic bounds, an idealized code, or a simulated table.
class FailureModel {
public:
    static FailureModel lrfc(unsigned q);
    static FailureModel concatenated(unsigned q, std::size_t n, std::size_t k, double epsilon);
    /// Decodes from any k received symbols: failure 0 at every overhead.
    static FailureModel idealized();
    /// Point estimates from simulation, keyed by overhead. Lookups take the
    /// entry at the greatest key <= delta (clamped to the table ends); lower
    /// and upper coincide.
    static FailureModel empirical(std::map<unsigned, double> pf_by_delta);

    BoundPair operator()(unsigned delta) const { return eval_(delta); }
    const std::string& name() const noexcept { return name_; }

private:
    FailureModel(std::string name, std::function<BoundPair(unsigned)> eval);

    std::string name_;
    std::function<BoundPair(unsigned)> eval_;
};

struct SystemParams {
    std::size_t k = 0;         // source block size
    std::size_t delta_tx = 0;  // transmitter overhead: k + delta_tx symbols sent
    double epsilon = 0.0;
    std::uint64_t users = 1;
};

/// Failure probability of one receiver after k + delta_tx transmissions:
/// the mass of gathering fewer than k symbols plus, for every m >= k, the
/// gather probability times the model's failure at overhead m - k.
BoundPair receiver_failure(const SystemParams& params, const FailureModel& pf);

/// Probability that at least one of `users` independent receivers fails:
/// 1 - (1 - P_e)^users, evaluated stably for tiny P_e.
BoundPair system_failure(const SystemParams& params, const FailureModel& pf);

/// 1 - (1 - p)^n without cancellation; shared by the analytic and empirical
/// multi-receiver paths.
double prob_any(double p, std::uint64_t n);

}  // namespace mdsf

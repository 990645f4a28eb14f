#include "mdsf/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace mdsf {

namespace {

void check_q(unsigned q) {
    if (q < 2) throw std::invalid_argument("field order must be at least 2");
}

void check_epsilon(double epsilon) {
    if (!(epsilon >= 0.0 && epsilon < 1.0)) {
        throw std::invalid_argument("erasure probability must lie in [0, 1)");
    }
}

// q^(-e). Exact (one ldexp) when q is a power of two, which covers every
// field this library constructs.
double neg_power(unsigned q, std::size_t e) {
    if (std::has_single_bit(q)) {
        const int w = std::bit_width(q) - 1;
        return std::ldexp(1.0, -static_cast<int>(e) * w);
    }
    return std::pow(static_cast<double>(q), -static_cast<double>(e));
}

double log_choose(std::size_t n, std::size_t m) {
    return std::lgamma(static_cast<double>(n) + 1.0) -
           std::lgamma(static_cast<double>(m) + 1.0) -
           std::lgamma(static_cast<double>(n - m) + 1.0);
}

// C(n, m) p^m (1-p)^(n-m) via logs; zero-count factors are skipped so the
// p = 0 and p = 1 edges come out exact.
double binomial_pmf(std::size_t n, std::size_t m, double p) {
    double lp = log_choose(n, m);
    if (m > 0) lp += static_cast<double>(m) * std::log(p);
    if (n - m > 0) lp += static_cast<double>(n - m) * std::log1p(-p);
    return std::exp(lp);
}

}  // namespace

BoundPair lrfc_bounds(unsigned delta, unsigned q) {
    check_q(q);
    const double lower = neg_power(q, static_cast<std::size_t>(delta) + 1);
    const double upper = std::min(1.0, neg_power(q, delta) / (q - 1));
    return {lower, upper};
}

double exact_full_rank(std::size_t m_rows, std::size_t k, unsigned q) {
    check_q(q);
    if (m_rows < k) {
        throw std::invalid_argument("full rank needs at least as many rows as unknowns");
    }
    double prod = 1.0;
    for (std::size_t i = 0; i < k; ++i) prod *= 1.0 - neg_power(q, m_rows - i);
    return prod;
}

double exact_rank_deficiency(std::size_t m_rows, std::size_t k, unsigned q) {
    check_q(q);
    if (m_rows < k) {
        throw std::invalid_argument("full rank needs at least as many rows as unknowns");
    }
    // 1 - prod(1 - x_i) via d <- d + (1 - d) x_i, smallest terms first; no
    // cancellation even when the result is ~q^(-delta-1) << DBL_EPSILON.
    double d = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double x = neg_power(q, m_rows - i);
        d += (1.0 - d) * x;
    }
    return d;
}

double q_star(std::size_t n, std::size_t k, double epsilon) {
    check_epsilon(epsilon);
    if (k > n) throw std::invalid_argument("code dimension k cannot exceed length n");
    if (epsilon == 0.0) return 1.0;
    double sum = 0.0;
    for (std::size_t i = k; i <= n; ++i) sum += binomial_pmf(n, i, 1.0 - epsilon);
    return std::min(1.0, sum);
}

double p_star(std::size_t n, std::size_t k, double epsilon) {
    check_epsilon(epsilon);
    if (k > n) throw std::invalid_argument("code dimension k cannot exceed length n");
    if (epsilon == 0.0) return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) sum += binomial_pmf(n, i, 1.0 - epsilon);
    return std::min(1.0, sum);
}

BoundPair concat_bounds(unsigned delta, unsigned q, std::size_t n, std::size_t k,
                        double epsilon) {
    const BoundPair plain = lrfc_bounds(delta, q);
    const double scale = p_star(n, k, epsilon);
    return {scale * plain.lower, scale * plain.upper};
}

double receiver_pmf(std::size_t k, std::size_t delta_tx, std::size_t m, double epsilon) {
    check_epsilon(epsilon);
    const std::size_t sent = k + delta_tx;
    if (m > sent) {
        throw std::invalid_argument("cannot gather more symbols than were transmitted");
    }
    return binomial_pmf(sent, m, 1.0 - epsilon);
}

FailureModel::FailureModel(std::string name, std::function<BoundPair(unsigned)> eval)
    : name_(std::move(name)), eval_(std::move(eval)) {}

FailureModel FailureModel::lrfc(unsigned q) {
    check_q(q);
    return {"lrfc" + std::to_string(q),
            [q](unsigned delta) { return lrfc_bounds(delta, q); }};
}

FailureModel FailureModel::concatenated(unsigned q, std::size_t n, std::size_t k,
                                        double epsilon) {
    check_q(q);
    check_epsilon(epsilon);
    if (k > n) throw std::invalid_argument("code dimension k cannot exceed length n");
    return {"concat" + std::to_string(q),
            [q, n, k, epsilon](unsigned delta) { return concat_bounds(delta, q, n, k, epsilon); }};
}

FailureModel FailureModel::idealized() {
    return {"ideal", [](unsigned) { return BoundPair{0.0, 0.0}; }};
}

FailureModel FailureModel::empirical(std::map<unsigned, double> pf_by_delta) {
    if (pf_by_delta.empty()) throw std::invalid_argument("empirical table is empty");
    for (const auto& [delta, p] : pf_by_delta) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument("empirical failure probability outside [0, 1]");
        }
    }
    return {"empirical", [table = std::move(pf_by_delta)](unsigned delta) {
                auto it = table.upper_bound(delta);
                if (it != table.begin()) --it;  // greatest key <= delta, else the smallest key
                const double p = it->second;
                return BoundPair{p, p};
            }};
}

BoundPair receiver_failure(const SystemParams& params, const FailureModel& pf) {
    check_epsilon(params.epsilon);
    if (params.k == 0) throw std::invalid_argument("source block must hold at least one symbol");
    const std::size_t sent = params.k + params.delta_tx;
    double low = 0.0;
    double up = 0.0;
    for (std::size_t m = 0; m < params.k; ++m) {
        const double pr = receiver_pmf(params.k, params.delta_tx, m, params.epsilon);
        low += pr;
        up += pr;
    }
    for (std::size_t m = params.k; m <= sent; ++m) {
        const double pr = receiver_pmf(params.k, params.delta_tx, m, params.epsilon);
        const BoundPair b = pf(static_cast<unsigned>(m - params.k));
        low += pr * b.lower;
        up += pr * b.upper;
    }
    return {std::min(1.0, low), std::min(1.0, up)};
}

double prob_any(double p, std::uint64_t n) {
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) return 1.0;
    return -std::expm1(static_cast<double>(n) * std::log1p(-p));
}

BoundPair system_failure(const SystemParams& params, const FailureModel& pf) {
    if (params.users < 1) throw std::invalid_argument("system needs at least one receiver");
    const BoundPair per_receiver = receiver_failure(params, pf);
    return {prob_any(per_receiver.lower, params.users),
            prob_any(per_receiver.upper, params.users)};
}

}  // namespace mdsf

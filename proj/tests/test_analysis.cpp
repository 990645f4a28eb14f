#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "mdsf/analysis.hpp"
#include "mdsf/gf.hpp"
#include "mdsf/matrix.hpp"
#include "support/oracles.hpp"

using mdsf::BoundPair;
using mdsf::FailureModel;
using mdsf::SystemParams;

namespace {

bool close(double a, double b, double rel) {
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace

TEST_CASE("plain fountain bounds") {
    const BoundPair b16 = mdsf::lrfc_bounds(2, 16);
    CHECK(b16.lower == doctest::Approx(2.44140625e-4).epsilon(1e-12));
    CHECK(b16.upper == doctest::Approx(2.604166666e-4).epsilon(1e-9));

    const BoundPair b2 = mdsf::lrfc_bounds(0, 2);
    CHECK(b2.lower == 0.5);
    CHECK(b2.upper == 1.0);  // 1/(q-1) clamped

    double prev_low = 1.0, prev_up = 2.0;
    for (unsigned d = 0; d <= 30; ++d) {
        const BoundPair b = mdsf::lrfc_bounds(d, 4);
        CHECK(b.lower <= b.upper);
        CHECK(b.lower < prev_low);
        CHECK(b.upper <= prev_up);
        prev_low = b.lower;
        prev_up = b.upper;
    }

    CHECK_THROWS_AS(mdsf::lrfc_bounds(0, 1), std::invalid_argument);
}

TEST_CASE("full-rank probability: closed form vs exhaustive enumeration") {
    CHECK(mdsf::exact_full_rank(1, 1, 2) == 0.5);
    CHECK(mdsf::exact_full_rank(10, 10, 2) == doctest::Approx(0.2890702984197).epsilon(1e-9));
    CHECK_THROWS_AS(mdsf::exact_full_rank(3, 4, 2), std::invalid_argument);

    // Enumerate every m x k matrix over F_2 (and small F_4 shapes) and count
    // how many reach full column rank.
    for (unsigned q : {2u, 4u}) {
        auto f = mdsf::Field::make(q == 2 ? 1 : 2);
        for (std::size_t k = 1; k <= (q == 2 ? 4u : 2u); ++k) {
            for (std::size_t m = k; m <= (q == 2 ? 4u : 3u); ++m) {
                const std::size_t cells = m * k;
                std::uint64_t full = 0, total = 0;
                std::uint64_t limit = 1;
                for (std::size_t c = 0; c < cells; ++c) limit *= q;
                for (std::uint64_t code = 0; code < limit; ++code) {
                    mdsf::Matrix mat(f, m, k);
                    std::uint64_t v = code;
                    for (std::size_t c = 0; c < cells; ++c) {
                        mat(c / k, c % k) = static_cast<mdsf::gf_t>(v % q);
                        v /= q;
                    }
                    ++total;
                    if (mat.rank() == k) ++full;
                }
                const double want = static_cast<double>(full) / static_cast<double>(total);
                CHECK(close(mdsf::exact_full_rank(m, k, q), want, 1e-12));
            }
        }
    }
}

TEST_CASE("rank deficiency is the stable complement") {
    for (unsigned q : {2u, 4u, 16u}) {
        for (std::size_t k = 1; k <= 12; ++k) {
            for (std::size_t d = 0; d <= 6; ++d) {
                const double full = mdsf::exact_full_rank(k + d, k, q);
                const double miss = mdsf::exact_rank_deficiency(k + d, k, q);
                CHECK(close(full + miss, 1.0, 1e-14));
            }
        }
    }
    // Where 1 - full would round to zero, the deficiency keeps precision.
    const double tiny = mdsf::exact_rank_deficiency(30, 20, 256);
    CHECK(tiny > 0.0);
    CHECK(tiny < 1e-20);
}

TEST_CASE("the bound sandwich holds across the sweep") {
    for (unsigned q : {2u, 4u, 16u}) {
        for (std::size_t k = 1; k <= 20; ++k) {
            for (unsigned d = 0; d <= 10; ++d) {
                const double miss = mdsf::exact_rank_deficiency(k + d, k, q);
                const BoundPair b = mdsf::lrfc_bounds(d, q);
                CHECK(miss >= b.lower);
                CHECK(miss < b.upper);
            }
        }
    }
}

TEST_CASE("binomial tails: hand sums and exact rational cross-check") {
    CHECK(mdsf::q_star(3, 2, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(mdsf::q_star(15, 10, 0.0) == 1.0);
    CHECK(mdsf::p_star(15, 10, 0.0) == 0.0);

    const double ps = mdsf::p_star(15, 10, 0.05);
    CHECK(ps > 1e-5);
    CHECK(ps < 2e-4);
    // eps = 1/20, exact rational reference.
    const long double exact = oracle::binomial_range_exact(15, 0, 9, 1, 20);
    CHECK(close(ps, static_cast<double>(exact), 1e-12));

    for (unsigned n : {5u, 12u, 20u}) {
        for (unsigned k = 1; k <= n; k += 3) {
            for (auto [num, den] : {std::pair{1u, 10u}, {1u, 2u}, {9u, 10u}}) {
                const double eps = static_cast<double>(num) / den;
                const long double p_exact = oracle::binomial_range_exact(n, 0, k - 1, num, den);
                const long double q_exact = oracle::binomial_range_exact(n, k, n, num, den);
                CHECK(close(mdsf::p_star(n, k, eps), static_cast<double>(p_exact), 1e-12));
                CHECK(close(mdsf::q_star(n, k, eps), static_cast<double>(q_exact), 1e-12));
                CHECK(close(mdsf::p_star(n, k, eps) + mdsf::q_star(n, k, eps), 1.0, 1e-12));
            }
        }
    }

    // Monotone in the erasure probability.
    double prev = -1.0;
    for (double eps = 0.0; eps < 0.95; eps += 0.05) {
        const double cur = mdsf::p_star(15, 10, eps);
        CHECK(cur >= prev);
        prev = cur;
    }

    CHECK_THROWS_AS(mdsf::q_star(3, 4, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(mdsf::p_star(3, 2, 1.0), std::invalid_argument);
}

TEST_CASE("concatenated bounds scale the plain bounds by p_star") {
    // Scaling identity, elementwise.
    for (unsigned d = 0; d <= 8; ++d) {
        const BoundPair plain = mdsf::lrfc_bounds(d, 16);
        const BoundPair concat = mdsf::concat_bounds(d, 16, 15, 10, 0.05);
        const double ps = mdsf::p_star(15, 10, 0.05);
        CHECK(close(concat.lower, ps * plain.lower, 1e-15));
        CHECK(close(concat.upper, ps * plain.upper, 1e-15));
    }

    // eps -> 0 kills the bounds entirely.
    const BoundPair zero = mdsf::concat_bounds(3, 16, 15, 10, 0.0);
    CHECK(zero.lower == 0.0);
    CHECK(zero.upper == 0.0);

    // Terrible channel: the block code stops helping and the concatenated
    // bounds collapse onto the plain ones.
    const BoundPair worst = mdsf::concat_bounds(3, 16, 15, 10, 0.9999);
    const BoundPair plain = mdsf::lrfc_bounds(3, 16);
    CHECK(close(worst.lower, plain.lower, 1e-9));
    CHECK(close(worst.upper, plain.upper, 1e-9));

    // The ratio between the two upper bounds is exactly p_star: with
    // eps = 0.05 on the (15,10) code that is about 5.3e-5, i.e. the
    // concatenation buys ~4 orders of magnitude.
    const double ratio = mdsf::concat_bounds(0, 16, 15, 10, 0.05).upper /
                         mdsf::lrfc_bounds(0, 16).upper;
    CHECK(ratio == doctest::Approx(mdsf::p_star(15, 10, 0.05)).epsilon(1e-12));
    CHECK(ratio < 2e-4);
}

TEST_CASE("receiver gather distribution") {
    CHECK(mdsf::receiver_pmf(10, 5, 13, 0.1) == doctest::Approx(0.2668959119745451).epsilon(1e-12));
    CHECK(mdsf::receiver_pmf(10, 5, 15, 0.0) == 1.0);
    CHECK(mdsf::receiver_pmf(10, 5, 14, 0.0) == 0.0);

    double mass = 0.0;
    for (std::size_t m = 0; m <= 15; ++m) mass += mdsf::receiver_pmf(10, 5, m, 0.1);
    CHECK(close(mass, 1.0, 1e-12));

    CHECK_THROWS_AS(mdsf::receiver_pmf(10, 5, 16, 0.1), std::invalid_argument);
}

TEST_CASE("receiver failure under the different models") {
    const FailureModel ideal = FailureModel::idealized();

    // Idealized: only the not-enough-symbols mass remains.
    const SystemParams p{10, 10, 0.01, 1};
    const BoundPair pe = mdsf::receiver_failure(p, ideal);
    double want = 0.0;
    for (std::size_t m = 0; m < 10; ++m) want += mdsf::receiver_pmf(10, 10, m, 0.01);
    CHECK(close(pe.lower, want, 1e-12));
    CHECK(pe.lower == pe.upper);
    CHECK(pe.upper < 1e-13);

    // Large transmitter overhead drives the failure to zero for every model.
    for (const FailureModel& model :
         {FailureModel::lrfc(2), FailureModel::concatenated(2, 11, 10, 0.01), ideal}) {
        double prev = 1.1;
        for (std::size_t delta : {0u, 5u, 10u, 20u, 40u}) {
            const BoundPair b = mdsf::receiver_failure({10, delta, 0.01, 1}, model);
            CHECK(b.lower <= b.upper);
            CHECK(b.upper <= prev);
            prev = b.upper;
        }
        const BoundPair far = mdsf::receiver_failure({10, 200, 0.01, 1}, model);
        CHECK(far.upper < 1e-12);
    }

    // Empirical tables plug straight in.
    const FailureModel emp = FailureModel::empirical({{0, 0.125}, {2, 0.03}});
    CHECK(emp(0).lower == 0.125);
    CHECK(emp(1).upper == 0.125);  // greatest key <= delta
    CHECK(emp(2).lower == 0.03);
    CHECK(emp(9).lower == 0.03);   // clamped to the last entry
    const BoundPair eb = mdsf::receiver_failure({10, 4, 0.1, 1}, emp);
    CHECK(eb.lower == eb.upper);
    CHECK_THROWS_AS(FailureModel::empirical({}), std::invalid_argument);
    CHECK_THROWS_AS(FailureModel::empirical({{0, 1.5}}), std::invalid_argument);
}

TEST_CASE("system failure scales with the user count") {
    const FailureModel model = FailureModel::concatenated(2, 11, 10, 0.01);
    const SystemParams one{10, 8, 0.01, 1};
    const BoundPair single = mdsf::system_failure(one, model);
    const BoundPair per_rx = mdsf::receiver_failure(one, model);
    CHECK(close(single.lower, per_rx.lower, 1e-12));
    CHECK(close(single.upper, per_rx.upper, 1e-12));

    CHECK(mdsf::prob_any(0.0, 1000) == 0.0);
    CHECK(mdsf::prob_any(1.0, 1000) == 1.0);
    CHECK(close(mdsf::prob_any(1e-12, 1000), 1e-9, 1e-6));  // ~N p for tiny p

    double prev = 0.0;
    for (std::uint64_t users : {1ull, 10ull, 100ull, 10000ull}) {
        const BoundPair b = mdsf::system_failure({10, 8, 0.01, users}, model);
        CHECK(b.upper >= prev);
        prev = b.upper;
    }
    CHECK_THROWS_AS(mdsf::system_failure({10, 8, 0.01, 0}, model), std::invalid_argument);
}

TEST_CASE("transmitter overhead readouts at the reference operating point") {
    // N = 1e4 receivers, eps = 0.01, k = 10: smallest Delta whose upper-bound
    // system failure drops to 1e-4.
    auto smallest_delta = [](const FailureModel& model) {
        for (unsigned delta = 0; delta <= 60; ++delta) {
            const BoundPair pe = mdsf::system_failure({10, delta, 0.01, 10000}, model);
            if (pe.upper <= 1e-4) return delta;
        }
        return 999u;
    };
    const unsigned concat2 = smallest_delta(FailureModel::concatenated(2, 11, 10, 0.01));
    const unsigned lrfc2 = smallest_delta(FailureModel::lrfc(2));
    const unsigned concat16 = smallest_delta(FailureModel::concatenated(16, 15, 10, 0.01));
    const unsigned ideal = smallest_delta(FailureModel::idealized());
    CHECK(concat2 >= 18);
    CHECK(concat2 <= 22);
    CHECK(lrfc2 >= 25);
    CHECK(lrfc2 <= 29);
    CHECK(concat16 <= ideal + 1);
    CHECK(concat16 + 1 >= ideal);
    CHECK(lrfc2 > concat2);
}

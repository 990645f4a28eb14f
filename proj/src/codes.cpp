#include "mdsf/codes.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>

namespace mdsf {

std::uint64_t choose_capped(std::size_t n, std::size_t k, std::uint64_t cap) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 acc = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        acc = acc * (n - k + i) / i;  // exact at every step
        if (acc > cap) return cap + 1;
    }
    return static_cast<std::uint64_t>(acc);
}

bool next_k_subset(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::vector<std::size_t> sample_k_subset(std::size_t n, std::size_t k, CounterRng& rng) {
    if (k > n) throw std::invalid_argument("cannot sample more columns than exist");
    // Floyd's algorithm: k draws, no rejection.
    std::set<std::size_t> picked;
    for (std::size_t j = n - k; j < n; ++j) {
        const std::size_t t = static_cast<std::size_t>(rng.next() % (j + 1));
        if (!picked.insert(t).second) picked.insert(j);
    }
    return {picked.begin(), picked.end()};
}

Code make_spc(std::size_t k) {
    if (k < 2) {
        throw std::invalid_argument(
            "single parity check needs k >= 2; k = 1 would degenerate to repetition");
    }
    FieldPtr f2 = Field::make(1);
    Matrix gen(f2, k, k + 1);
    for (std::size_t i = 0; i < k; ++i) {
        gen(i, i) = 1;
        gen(i, k) = 1;  // parity column
    }
    return {CodeKind::Spc, k + 1, k, std::move(f2), std::move(gen)};
}

Code make_rs(std::size_t n, std::size_t k, FieldPtr field) {
    if (!field) throw std::invalid_argument("Reed-Solomon code requires a field");
    const std::size_t q = field->order();
    if (k < 2 || k >= n || n > q - 1) {
        throw std::invalid_argument("Reed-Solomon parameters need 2 <= k < n <= q-1, got n=" +
                                    std::to_string(n) + " k=" + std::to_string(k) +
                                    " q=" + std::to_string(q));
    }
    const gf_t alpha = field->generator();
    Matrix vand(field, k, n);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            vand(i, j) = field->pow(alpha, static_cast<long long>(i * j));
        }
    }
    std::vector<std::size_t> lead(k);
    for (std::size_t j = 0; j < k; ++j) lead[j] = j;
    // The first k evaluation points are distinct, so this block is invertible.
    auto inv = vand.columns(lead).inverse();
    if (!inv) throw std::logic_error("Vandermonde block was singular; evaluation points collide");
    Matrix gen = inv->mul(vand);
    return {CodeKind::ReedSolomon, n, k, std::move(field), std::move(gen)};
}

Code make_lrfc_only(std::size_t k, FieldPtr field) {
    if (!field) throw std::invalid_argument("code requires a field");
    if (k < 1) throw std::invalid_argument("source block must hold at least one symbol");
    Matrix gen(field, k, 0);
    return {CodeKind::LrfcOnly, 0, k, std::move(field), std::move(gen)};
}

MdsCheck mds_check(const Code& code, std::uint64_t exhaustive_limit, std::uint64_t samples,
                   std::uint64_t seed) {
    const std::size_t n = code.n;
    const std::size_t k = code.k;
    if (code.kind == CodeKind::LrfcOnly || n == 0) return {true, true, 0, {}};

    const std::uint64_t total = choose_capped(n, k, exhaustive_limit);
    MdsCheck result;
    auto inspect = [&](const std::vector<std::size_t>& idx) {
        ++result.checked;
        if (code.gen.columns(idx).rank() != k) {
            result.verified = false;
            result.counterexample = idx;
            return false;
        }
        return true;
    };

    result.verified = true;
    if (total <= exhaustive_limit) {
        result.exhaustive = true;
        std::vector<std::size_t> idx(k);
        for (std::size_t i = 0; i < k; ++i) idx[i] = i;
        do {
            if (!inspect(idx)) return result;
        } while (next_k_subset(idx, n));
        return result;
    }

    result.exhaustive = false;
    CounterRng rng{substream(seed ^ kSubsetSampleTag, 0)};
    for (std::uint64_t s = 0; s < samples; ++s) {
        if (!inspect(sample_k_subset(n, k, rng))) return result;
    }
    return result;
}

std::vector<Symbol> encode_block(const Code& code, const PayloadBlock& source) {
    if (source.size() != code.k) {
        throw std::invalid_argument("source block must have exactly k = " +
                                    std::to_string(code.k) + " rows");
    }
    const std::size_t lanes = source.front().size();
    if (lanes == 0) throw std::invalid_argument("payloads must carry at least one symbol");
    PayloadBlock rows = block_mul(source, code.gen);  // validates shape and entries
    std::vector<Symbol> out(code.n);
    for (std::size_t j = 0; j < code.n; ++j) {
        out[j] = Symbol{static_cast<std::uint32_t>(j + 1), std::move(rows[j])};
    }
    return out;
}

void write_generator_csv(const Code& code, std::ostream& out) {
    for (std::size_t i = 0; i < code.gen.rows(); ++i) {
        for (std::size_t j = 0; j < code.gen.cols(); ++j) {
            if (j) out << ',';
            out << static_cast<unsigned>(code.gen(i, j));
        }
        out << "\r\n";
    }
}

}  // namespace mdsf

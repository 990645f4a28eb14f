#include "mdsf/fountain.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>
#include <string>

#include "mdsf/rng.hpp"

namespace mdsf {

namespace {

void require_block(const PayloadBlock& block, const Field& f, std::size_t k) {
    if (block.size() != k) {
        throw std::invalid_argument("source block must have exactly k = " + std::to_string(k) +
                                    " rows");
    }
    const std::size_t lanes = block.front().size();
    if (lanes == 0) throw std::invalid_argument("payloads must carry at least one symbol");
    for (const Payload& row : block) {
        if (row.size() != lanes) throw std::invalid_argument("source payloads have mixed lengths");
        for (gf_t v : row) {
            if (!f.contains(v)) throw std::invalid_argument("source entry outside field");
        }
    }
}

}  // namespace

void lrfc_column_into(const Field& field, std::uint64_t seed, std::uint32_t esi, std::size_t k,
                      gf_t* out) {
    const std::uint64_t column_key = substream(seed ^ kFountainStreamTag, esi);
    // q is a power of two, so the low bits are exactly uniform over the field.
    const std::uint64_t mask = field.order() - 1;
    for (std::size_t j = 0; j < k; ++j) {
        out[j] = static_cast<gf_t>(stream_at(column_key, j) & mask);
    }
}

std::vector<gf_t> lrfc_column(const Field& field, std::uint64_t seed, std::uint32_t esi,
                              std::size_t k, std::size_t n) {
    if (esi <= n) {
        throw std::invalid_argument("random columns start after the block code: esi must exceed " +
                                    std::to_string(n));
    }
    std::vector<gf_t> col(k);
    lrfc_column_into(field, seed, esi, k, col.data());
    return col;
}

Encoder::Encoder(Code code, PayloadBlock source, std::uint64_t seed)
    : code_(std::move(code)), source_(std::move(source)), seed_(seed) {
    require_block(source_, *code_.field, code_.k);
    lanes_ = source_.front().size();
}

Symbol Encoder::symbol(std::uint32_t esi) const {
    if (esi == 0) throw std::invalid_argument("encoding symbol ids are 1-based");
    const Field& f = *code_.field;
    const std::size_t k = code_.k;
    Payload out(lanes_, 0);
    if (esi <= code_.n) {
        for (std::size_t i = 0; i < k; ++i) {
            const gf_t g = code_.gen(i, esi - 1);
            if (g == 0) continue;
            const Payload& src = source_[i];
            for (std::size_t t = 0; t < lanes_; ++t) out[t] ^= f.mul(g, src[t]);
        }
    } else {
        std::vector<gf_t> coeffs(k);
        lrfc_column_into(f, seed_, esi, k, coeffs.data());
        for (std::size_t i = 0; i < k; ++i) {
            if (coeffs[i] == 0) continue;
            const Payload& src = source_[i];
            for (std::size_t t = 0; t < lanes_; ++t) out[t] ^= f.mul(coeffs[i], src[t]);
        }
    }
    return {esi, std::move(out)};
}

ReceivedSet::ReceivedSet(Code code, std::uint64_t seed)
    : code_(std::move(code)), seed_(seed) {}

void ReceivedSet::add(Symbol s) {
    if (s.esi == 0) throw std::invalid_argument("encoding symbol ids are 1-based");
    for (const Symbol& held : symbols_) {
        if (held.esi == s.esi) {
            throw std::invalid_argument("duplicate encoding symbol id " + std::to_string(s.esi));
        }
    }
    if (s.payload.empty()) throw std::invalid_argument("received payload is empty");
    if (lanes_ == 0) {
        lanes_ = s.payload.size();
    } else if (s.payload.size() != lanes_) {
        throw std::invalid_argument("received payloads have mixed lengths");
    }
    const Field& f = *code_.field;
    for (gf_t v : s.payload) {
        if (!f.contains(v)) throw std::invalid_argument("received entry outside field");
    }
    symbols_.push_back(std::move(s));
}

std::size_t ReceivedSet::block_symbol_count() const noexcept {
    std::size_t count = 0;
    for (const Symbol& s : symbols_) {
        if (s.esi <= code_.n) ++count;
    }
    return count;
}

Matrix coefficient_matrix(const ReceivedSet& rx) {
    const Code& code = rx.code();
    const std::size_t k = code.k;
    const auto& syms = rx.symbols();
    Matrix gt(code.field, syms.size(), k);
    for (std::size_t r = 0; r < syms.size(); ++r) {
        const std::uint32_t esi = syms[r].esi;
        if (esi <= code.n) {
            for (std::size_t i = 0; i < k; ++i) gt(r, i) = code.gen(i, esi - 1);
        } else {
            lrfc_column_into(*code.field, rx.seed(), esi, k, &gt(r, 0));
        }
    }
    return gt;
}

DecodeResult try_decode(const ReceivedSet& rx) {
    Matrix gt = coefficient_matrix(rx);
    PayloadBlock y;
    y.reserve(rx.symbols().size());
    for (const Symbol& s : rx.symbols()) y.push_back(s.payload);
    SolveResult res = solve(gt, y);
    switch (res.status) {
        case SolveStatus::Solved:
            return {true, res.rank, std::move(res.solution)};
        case SolveStatus::Unsolvable:
            return {false, res.rank, {}};
        case SolveStatus::Contradictory:
            throw std::runtime_error("received payloads are mutually inconsistent");
    }
    throw std::logic_error("unreachable");
}

std::optional<PayloadBlock> mds_fast_path(const ReceivedSet& rx) {
    const Code& code = rx.code();
    const std::size_t k = code.k;
    std::vector<const Symbol*> block_syms;
    for (const Symbol& s : rx.symbols()) {
        if (s.esi <= code.n) block_syms.push_back(&s);
    }
    if (block_syms.size() < k) return std::nullopt;
    std::sort(block_syms.begin(), block_syms.end(),
              [](const Symbol* a, const Symbol* b) { return a->esi < b->esi; });
    block_syms.resize(k);

    Matrix a(code.field, k, k);
    PayloadBlock y;
    y.reserve(k);
    for (std::size_t r = 0; r < k; ++r) {
        const std::uint32_t esi = block_syms[r]->esi;
        for (std::size_t i = 0; i < k; ++i) a(r, i) = code.gen(i, esi - 1);
        y.push_back(block_syms[r]->payload);
    }
    SolveResult res = solve(a, y);
    if (res.status != SolveStatus::Solved) {
        throw std::logic_error("k block-code columns were singular; the generator is not MDS");
    }
    return std::move(res.solution);
}

IncrementalDecoder::IncrementalDecoder(const Code& code, std::uint64_t seed, std::size_t lanes)
    : code_(&code), seed_(seed), lanes_(lanes), rows_(code.k) {
    if (lanes_ == 0) throw std::invalid_argument("payloads must carry at least one symbol");
}

bool IncrementalDecoder::absorb(const Symbol& s) {
    if (complete()) return false;
    if (s.esi == 0) throw std::invalid_argument("encoding symbol ids are 1-based");
    if (s.payload.size() != lanes_) {
        throw std::invalid_argument("received payloads have mixed lengths");
    }
    const Field& f = *code_->field;
    const std::size_t k = code_->k;
    const std::size_t w = k + lanes_;

    scratch_.resize(w);
    if (s.esi <= code_->n) {
        for (std::size_t i = 0; i < k; ++i) scratch_[i] = code_->gen(i, s.esi - 1);
    } else {
        lrfc_column_into(f, seed_, s.esi, k, scratch_.data());
    }
    std::copy(s.payload.begin(), s.payload.end(), scratch_.begin() + k);

    for (std::size_t c = 0; c < k; ++c) {
        const gf_t vc = scratch_[c];
        if (vc == 0) continue;
        if (rows_[c].empty()) {
            const gf_t norm = f.inv(vc);
            if (norm != 1) {
                for (std::size_t j = c; j < w; ++j) scratch_[j] = f.mul(scratch_[j], norm);
            }
            rows_[c].assign(scratch_.begin(), scratch_.end());
            ++rank_;
            return complete();
        }
        const std::vector<gf_t>& pivot = rows_[c];
        for (std::size_t j = c; j < w; ++j) scratch_[j] ^= f.mul(vc, pivot[j]);
    }
    // Reduced to a zero coefficient row: either redundant or inconsistent.
    for (std::size_t t = k; t < w; ++t) {
        if (scratch_[t] != 0) {
            throw std::runtime_error("received payloads are mutually inconsistent");
        }
    }
    return false;
}

PayloadBlock IncrementalDecoder::source() const {
    if (!complete()) throw std::logic_error("decoder is not complete");
    const Field& f = *code_->field;
    const std::size_t k = code_->k;
    PayloadBlock out(k);
    for (std::size_t c = 0; c < k; ++c) {
        out[c].assign(rows_[c].begin() + k, rows_[c].end());
    }
    for (std::size_t c = k; c-- > 0;) {
        for (std::size_t j = c + 1; j < k; ++j) {
            const gf_t v = rows_[c][j];
            if (v == 0) continue;
            for (std::size_t t = 0; t < lanes_; ++t) out[c][t] ^= f.mul(v, out[j][t]);
        }
    }
    return out;
}

std::string symbol_to_line(const Symbol& s) {
    static constexpr char kHex[] = "0123456789abcdef";
    std::string line = std::to_string(s.esi);
    line.reserve(line.size() + 1 + 2 * s.payload.size());
    line.push_back(' ');
    for (gf_t v : s.payload) {
        line.push_back(kHex[v >> 4]);
        line.push_back(kHex[v & 0xF]);
    }
    return line;
}

Symbol symbol_from_line(std::string_view line) {
    const std::size_t space = line.find(' ');
    if (space == std::string_view::npos || space == 0) {
        throw std::invalid_argument("symbol line must be '<esi> <hex payload>'");
    }
    std::uint32_t esi = 0;
    const auto [ptr, ec] = std::from_chars(line.data(), line.data() + space, esi);
    if (ec != std::errc{} || ptr != line.data() + space || esi == 0) {
        throw std::invalid_argument("invalid encoding symbol id in symbol line");
    }
    const std::string_view hex = line.substr(space + 1);
    if (hex.empty() || hex.size() % 2 != 0) {
        throw std::invalid_argument("symbol payload must be a nonempty even-length hex string");
    }
    auto nibble = [](char c) -> unsigned {
        if (c >= '0' && c <= '9') return static_cast<unsigned>(c - '0');
        if (c >= 'a' && c <= 'f') return static_cast<unsigned>(c - 'a' + 10);
        throw std::invalid_argument("symbol payload holds a non-hex character");
    };
    Payload payload(hex.size() / 2);
    for (std::size_t i = 0; i < payload.size(); ++i) {
        payload[i] = static_cast<gf_t>((nibble(hex[2 * i]) << 4) | nibble(hex[2 * i + 1]));
    }
    return {esi, std::move(payload)};
}

}  // namespace mdsf

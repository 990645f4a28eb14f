// Systematic MDS block codes used as the outer code of the concatenated
// fountain scheme: single-parity-check codes over F_2 and shortened
// Reed-Solomon codes over F_{2^m}, plus the MDS verification oracle.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "mdsf/matrix.hpp"
#include "mdsf/rng.hpp"

namespace mdsf {

enum class CodeKind {
    Spc,          // (k+1, k) single parity check over F_2
    ReedSolomon,  // (n, k) shortened RS over F_{2^m}
    LrfcOnly,     // n = 0: no block code, every symbol is a random combination
};

/// Unit of transmission. ESIs are 1-based column indices of the overall
/// generator: esi <= n selects a block-code symbol, esi > n a random one.
struct Symbol {
    std::uint32_t esi = 0;
    Payload payload;

    bool operator==(const Symbol&) const = default;
};

struct Code {
    CodeKind kind;
    std::size_t n;  // block-code length (0 for LrfcOnly)
    std::size_t k;  // source block size
    FieldPtr field;
    Matrix gen;  // k x n systematic generator, leftmost k columns the identity
};

/// (k+1, k) single parity check over F_2; k >= 2. A (2,1) code would collapse
/// the scheme to repetition, so it is rejected.
Code make_spc(std::size_t k);

/// (n, k) Reed-Solomon over the given field, 2 <= k < n <= q-1. Built by
/// evaluating at alpha^0 .. alpha^(n-1) and left-multiplying by the inverse
/// of the first k columns, which makes the generator systematic. Shortening
/// just uses the first n evaluation points of the length-(q-1) parent.
Code make_rs(std::size_t n, std::size_t k, FieldPtr field);

/// Degenerate code with no block symbols; the fountain emits random
/// combinations only. Used as the plain-fountain baseline.
Code make_lrfc_only(std::size_t k, FieldPtr field);

struct MdsCheck {
    bool verified = false;
    bool exhaustive = false;       // all C(n, k) submatrices were checked
    std::uint64_t checked = 0;     // submatrices actually inspected
    std::vector<std::size_t> counterexample;  // 0-based columns of a singular k x k submatrix
};

/// Checks that every k x k column-submatrix of the generator is invertible:
/// exhaustively when C(n, k) <= exhaustive_limit, otherwise on `samples`
/// random subsets drawn from the seeded stream.
MdsCheck mds_check(const Code& code, std::uint64_t exhaustive_limit = 1'000'000,
                   std::uint64_t samples = 10'000, std::uint64_t seed = 1);

/// All n block-code symbols for a k-row source block. The first k symbols
/// repeat the source rows verbatim.
std::vector<Symbol> encode_block(const Code& code, const PayloadBlock& source);

/// Generator as row-major integer CSV, for diffing against other tools.
void write_generator_csv(const Code& code, std::ostream& out);

/// C(n, k), saturating at cap + 1 (a return of cap + 1 means "more than cap").
std::uint64_t choose_capped(std::size_t n, std::size_t k, std::uint64_t cap);

/// Advances idx to the next k-subset of {0..n-1} in lexicographic order;
/// false once idx was the last one. idx must be strictly increasing.
bool next_k_subset(std::vector<std::size_t>& idx, std::size_t n);

/// Uniform random k-subset of {0..n-1}, sorted ascending.
std::vector<std::size_t> sample_k_subset(std::size_t n, std::size_t k, CounterRng& rng);

}  // namespace mdsf

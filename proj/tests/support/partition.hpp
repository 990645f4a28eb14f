// Test-only reconstruction of the decodability verdict through the
// partitioned-system argument: split the received coefficient rows into
// block-code rows and random rows, zero the random rows on the block rows'
// pivot columns, and test whether the residual matrix B has full column rank
// k - m'. Must agree with the direct rank check on every received set.

#pragma once

#include <stdexcept>
#include <vector>

#include "mdsf/fountain.hpp"
#include "mdsf/matrix.hpp"

namespace testsupport {

inline bool partitioned_verdict(const mdsf::ReceivedSet& rx) {
    const mdsf::Field& f = *rx.code().field;
    const std::size_t k = rx.code().k;
    const mdsf::Matrix gt = mdsf::coefficient_matrix(rx);

    std::vector<std::size_t> block_rows;
    std::vector<std::size_t> random_rows;
    for (std::size_t r = 0; r < rx.symbols().size(); ++r) {
        (rx.symbols()[r].esi <= rx.code().n ? block_rows : random_rows).push_back(r);
    }
    const std::size_t m_prime = block_rows.size();
    if (m_prime >= k) return true;  // any k block columns invert

    // Reduce the block rows to reduced row echelon form and record their
    // pivot columns. The MDS property makes them independent, so there are
    // exactly m_prime pivots.
    std::vector<std::vector<mdsf::gf_t>> reduced;
    reduced.reserve(m_prime);
    for (std::size_t r : block_rows) {
        std::vector<mdsf::gf_t> row(k);
        for (std::size_t c = 0; c < k; ++c) row[c] = gt(r, c);
        reduced.push_back(std::move(row));
    }
    std::vector<std::size_t> pivot_cols;
    std::size_t next = 0;
    for (std::size_t c = 0; c < k && next < m_prime; ++c) {
        std::size_t p = next;
        while (p < m_prime && reduced[p][c] == 0) ++p;
        if (p == m_prime) continue;
        std::swap(reduced[p], reduced[next]);
        const mdsf::gf_t norm = f.inv(reduced[next][c]);
        if (norm != 1) {
            for (std::size_t j = 0; j < k; ++j) reduced[next][j] = f.mul(reduced[next][j], norm);
        }
        for (std::size_t i = 0; i < m_prime; ++i) {
            if (i == next || reduced[i][c] == 0) continue;
            const mdsf::gf_t v = reduced[i][c];
            for (std::size_t j = 0; j < k; ++j) reduced[i][j] ^= f.mul(v, reduced[next][j]);
        }
        pivot_cols.push_back(c);
        ++next;
    }
    if (pivot_cols.size() != m_prime) {
        throw std::logic_error("block-code rows were dependent; the generator is not MDS");
    }

    std::vector<std::size_t> residual_cols;
    {
        std::vector<bool> is_pivot(k, false);
        for (std::size_t c : pivot_cols) is_pivot[c] = true;
        for (std::size_t c = 0; c < k; ++c) {
            if (!is_pivot[c]) residual_cols.push_back(c);
        }
    }

    // Zero every random row on the pivot columns by adding multiples of the
    // reduced block rows; what is left over the residual columns is B.
    mdsf::Matrix b(rx.code().field, random_rows.size(), residual_cols.size());
    for (std::size_t i = 0; i < random_rows.size(); ++i) {
        std::vector<mdsf::gf_t> row(k);
        for (std::size_t c = 0; c < k; ++c) row[c] = gt(random_rows[i], c);
        for (std::size_t pi = 0; pi < m_prime; ++pi) {
            const mdsf::gf_t v = row[pivot_cols[pi]];
            if (v == 0) continue;
            for (std::size_t j = 0; j < k; ++j) row[j] ^= f.mul(v, reduced[pi][j]);
        }
        for (std::size_t j = 0; j < residual_cols.size(); ++j) b(i, j) = row[residual_cols[j]];
    }
    return b.rank() == k - m_prime;
}

}  // namespace testsupport

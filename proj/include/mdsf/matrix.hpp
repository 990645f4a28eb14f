// Dense matrices over F_q with Gaussian elimination, rank and linear-system
// solving. Pivoting always picks the first nonzero entry scanning top-down;
// there is no magnitude in a finite field, and a fixed rule keeps every
// elimination reproducible.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mdsf/gf.hpp"

namespace mdsf {

/// One packet's worth of field symbols (T parallel lanes).
using Payload = std::vector<gf_t>;
/// A block of payloads, one row per source or received symbol.
using PayloadBlock = std::vector<Payload>;

class Matrix {
public:
    Matrix(FieldPtr field, std::size_t rows, std::size_t cols);

    static Matrix identity(FieldPtr field, std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const FieldPtr& field() const noexcept { return field_; }

    gf_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    gf_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    bool operator==(const Matrix& other) const;

    Matrix transposed() const;
    Matrix mul(const Matrix& rhs) const;
    /// New matrix made of the given columns, in the given order.
    Matrix columns(std::span<const std::size_t> indices) const;

    /// Rank over F_q by forward elimination; the input is not modified.
    std::size_t rank() const;
    /// Inverse via Gauss-Jordan, or nullopt for singular input.
    std::optional<Matrix> inverse() const;

private:
    gf_t* row_ptr(std::size_t r) { return data_.data() + r * cols_; }
    const gf_t* row_ptr(std::size_t r) const { return data_.data() + r * cols_; }

    FieldPtr field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<gf_t> data_;  // row-major
};

enum class SolveStatus {
    Solved,
    Unsolvable,     // rank below the number of unknowns
    Contradictory,  // redundant equations disagree; inputs were inconsistent
};

struct SolveResult {
    SolveStatus status = SolveStatus::Unsolvable;
    std::size_t rank = 0;
    PayloadBlock solution;  // k payload rows, only when status == Solved
};

/// Solves A u = y where A is m x k and y carries m payload rows of equal
/// width. The elimination runs once and applies to every lane of y. Returns
/// Solved exactly when rank(A) = k.
SolveResult solve(const Matrix& a, const PayloadBlock& y);

/// Row j of the result combines the payload rows of u with the j-th column
/// of g: out[j] = sum_i g(i, j) * u[i]. This is block encoding as a matrix
/// product, kept here so codecs and tests share one definition.
PayloadBlock block_mul(const PayloadBlock& u, const Matrix& g);

}  // namespace mdsf

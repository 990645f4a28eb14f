#include "mdsf/matrix.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace mdsf {

namespace {

void require_same_field(const Matrix& a, const Matrix& b) {
    if (!a.field()->same_as(*b.field())) {
        throw std::invalid_argument("matrices live in different fields");
    }
}

void require_lanes(const PayloadBlock& block, const Field& f, std::size_t expected_rows,
                   const char* what) {
    if (block.size() != expected_rows) {
        throw std::invalid_argument(std::string(what) + ": expected " +
                                    std::to_string(expected_rows) + " payload rows, got " +
                                    std::to_string(block.size()));
    }
    const std::size_t lanes = block.empty() ? 0 : block.front().size();
    for (const Payload& row : block) {
        if (row.size() != lanes) {
            throw std::invalid_argument(std::string(what) + ": payload rows have mixed lengths");
        }
        for (gf_t v : row) {
            if (!f.contains(v)) {
                throw std::invalid_argument(std::string(what) + ": payload entry outside field");
            }
        }
    }
}

}  // namespace

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {
    if (!field_) throw std::invalid_argument("matrix requires a field");
}

Matrix Matrix::identity(FieldPtr field, std::size_t n) {
    Matrix m(std::move(field), n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

bool Matrix::operator==(const Matrix& other) const {
    return field_->same_as(*other.field_) && rows_ == other.rows_ && cols_ == other.cols_ &&
           data_ == other.data_;
}

Matrix Matrix::transposed() const {
    Matrix out(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    }
    return out;
}

Matrix Matrix::mul(const Matrix& rhs) const {
    require_same_field(*this, rhs);
    if (cols_ != rhs.rows_) {
        throw std::invalid_argument("matrix product dimension mismatch: " +
                                    std::to_string(cols_) + " vs " + std::to_string(rhs.rows_));
    }
    const Field& f = *field_;
    Matrix out(field_, rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const gf_t a = (*this)(i, k);
            if (a == 0) continue;
            const gf_t* rk = rhs.row_ptr(k);
            gf_t* oi = out.row_ptr(i);
            for (std::size_t j = 0; j < rhs.cols_; ++j) oi[j] ^= f.mul(a, rk[j]);
        }
    }
    return out;
}

Matrix Matrix::columns(std::span<const std::size_t> indices) const {
    Matrix out(field_, rows_, indices.size());
    for (std::size_t j = 0; j < indices.size(); ++j) {
        if (indices[j] >= cols_) {
            throw std::invalid_argument("column index " + std::to_string(indices[j]) +
                                        " out of range");
        }
        for (std::size_t r = 0; r < rows_; ++r) out(r, j) = (*this)(r, indices[j]);
    }
    return out;
}

std::size_t Matrix::rank() const {
    Matrix w(*this);
    const Field& f = *field_;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
        std::size_t p = r;
        while (p < rows_ && w(p, c) == 0) ++p;
        if (p == rows_) continue;
        if (p != r) {
            std::swap_ranges(w.row_ptr(p), w.row_ptr(p) + cols_, w.row_ptr(r));
        }
        const gf_t piv_inv = f.inv(w(r, c));
        for (std::size_t i = r + 1; i < rows_; ++i) {
            const gf_t v = w(i, c);
            if (v == 0) continue;
            const gf_t factor = f.mul(v, piv_inv);
            const gf_t* src = w.row_ptr(r);
            gf_t* dst = w.row_ptr(i);
            for (std::size_t j = c; j < cols_; ++j) dst[j] ^= f.mul(factor, src[j]);
        }
        ++r;
    }
    return r;
}

std::optional<Matrix> Matrix::inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("inverse requires a square matrix");
    const Field& f = *field_;
    Matrix w(*this);
    Matrix out = identity(field_, rows_);
    for (std::size_t c = 0; c < cols_; ++c) {
        std::size_t p = c;
        while (p < rows_ && w(p, c) == 0) ++p;
        if (p == rows_) return std::nullopt;
        if (p != c) {
            std::swap_ranges(w.row_ptr(p), w.row_ptr(p) + cols_, w.row_ptr(c));
            std::swap_ranges(out.row_ptr(p), out.row_ptr(p) + cols_, out.row_ptr(c));
        }
        const gf_t piv_inv = f.inv(w(c, c));
        if (piv_inv != 1) {
            for (std::size_t j = 0; j < cols_; ++j) {
                w(c, j) = f.mul(w(c, j), piv_inv);
                out(c, j) = f.mul(out(c, j), piv_inv);
            }
        }
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == c) continue;
            const gf_t v = w(i, c);
            if (v == 0) continue;
            for (std::size_t j = 0; j < cols_; ++j) {
                w(i, j) ^= f.mul(v, w(c, j));
                out(i, j) ^= f.mul(v, out(c, j));
            }
        }
    }
    return out;
}

SolveResult solve(const Matrix& a, const PayloadBlock& y) {
    const Field& f = *a.field();
    const std::size_t m = a.rows();
    const std::size_t k = a.cols();
    require_lanes(y, f, m, "solve");
    const std::size_t lanes = y.empty() ? 0 : y.front().size();

    // Work rows hold coefficients then lanes, contiguous, so one elimination
    // sweep updates the whole augmented system.
    const std::size_t w = k + lanes;
    std::vector<gf_t> work(m * w);
    for (std::size_t i = 0; i < m; ++i) {
        gf_t* row = work.data() + i * w;
        for (std::size_t j = 0; j < k; ++j) row[j] = a(i, j);
        for (std::size_t t = 0; t < lanes; ++t) row[k + t] = y[i][t];
    }

    std::size_t r = 0;
    for (std::size_t c = 0; c < k && r < m; ++c) {
        std::size_t p = r;
        while (p < m && work[p * w + c] == 0) ++p;
        if (p == m) continue;
        if (p != r) {
            std::swap_ranges(work.begin() + p * w, work.begin() + (p + 1) * w,
                             work.begin() + r * w);
        }
        gf_t* pivot = work.data() + r * w;
        const gf_t piv_inv = f.inv(pivot[c]);
        if (piv_inv != 1) {
            for (std::size_t j = c; j < w; ++j) pivot[j] = f.mul(pivot[j], piv_inv);
        }
        for (std::size_t i = r + 1; i < m; ++i) {
            gf_t* row = work.data() + i * w;
            const gf_t v = row[c];
            if (v == 0) continue;
            for (std::size_t j = c; j < w; ++j) row[j] ^= f.mul(v, pivot[j]);
        }
        ++r;
    }
    const std::size_t rank = r;

    // Rows below the pivot profile are zero in every coefficient column; a
    // surviving lane value there means the equations disagree.
    for (std::size_t i = rank; i < m; ++i) {
        const gf_t* row = work.data() + i * w;
        for (std::size_t t = k; t < w; ++t) {
            if (row[t] != 0) return {SolveStatus::Contradictory, rank, {}};
        }
    }
    if (rank < k) return {SolveStatus::Unsolvable, rank, {}};

    // Full rank: pivots sit on the diagonal of the top k rows. Back-substitute
    // lanes only; the coefficient part is no longer needed.
    for (std::size_t c = k; c-- > 0;) {
        const gf_t* pivot = work.data() + c * w;
        for (std::size_t i = 0; i < c; ++i) {
            gf_t* row = work.data() + i * w;
            const gf_t v = row[c];
            if (v == 0) continue;
            for (std::size_t t = k; t < w; ++t) row[t] ^= f.mul(v, pivot[t]);
            row[c] = 0;
        }
    }

    PayloadBlock solution(k, Payload(lanes));
    for (std::size_t i = 0; i < k; ++i) {
        const gf_t* row = work.data() + i * w;
        std::copy(row + k, row + w, solution[i].begin());
    }
    return {SolveStatus::Solved, rank, std::move(solution)};
}

PayloadBlock block_mul(const PayloadBlock& u, const Matrix& g) {
    const Field& f = *g.field();
    require_lanes(u, f, g.rows(), "block_mul");
    const std::size_t lanes = u.empty() ? 0 : u.front().size();
    PayloadBlock out(g.cols(), Payload(lanes, 0));
    for (std::size_t i = 0; i < u.size(); ++i) {
        const Payload& src = u[i];
        for (std::size_t j = 0; j < g.cols(); ++j) {
            const gf_t gij = g(i, j);
            if (gij == 0) continue;
            Payload& dst = out[j];
            for (std::size_t t = 0; t < lanes; ++t) dst[t] ^= f.mul(gij, src[t]);
        }
    }
    return out;
}

}  // namespace mdsf

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "epsbias/gf.hpp"

namespace epsbias {

// Dense row-major matrix over F_q. Codes here are enumeration-bounded, so
// plain Gaussian elimination with first-nonzero pivots is all we need.
class MatrixFq {
  public:
    MatrixFq(FieldPtr field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    MatrixFq(FieldPtr field, std::size_t rows, std::size_t cols, std::vector<felem> entries)
        : field_(std::move(field)), rows_(rows), cols_(cols), a_(std::move(entries)) {
        if (a_.size() != rows_ * cols_) throw BadParameters("entry count does not match dimensions");
        for (felem e : a_)
            if (e >= field_->q()) throw BadParameters("entry outside field");
    }

    const FieldPtr& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    felem operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
    felem& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }

    const std::vector<felem>& entries() const { return a_; }

    std::vector<felem> row(std::size_t r) const {
        return {a_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                a_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
    }

    const felem* row_ptr(std::size_t r) const { return a_.data() + r * cols_; }

    MatrixFq transpose() const {
        MatrixFq t(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    MatrixFq mul(const MatrixFq& other) const {
        require_same_field(*field_, *other.field_);
        if (cols_ != other.rows_) throw BadParameters("dimension mismatch in matrix product");
        const Field& F = *field_;
        MatrixFq out(field_, rows_, other.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t l = 0; l < cols_; ++l) {
                const felem aij = (*this)(i, l);
                if (aij == 0) continue;
                for (std::size_t j = 0; j < other.cols_; ++j)
                    out(i, j) = F.add(out(i, j), F.mul(aij, other(l, j)));
            }
        return out;
    }

    // Deletes the given strictly increasing column indices.
    MatrixFq drop_columns(const std::vector<std::size_t>& cols) const {
        MatrixFq out(field_, rows_, cols_ - cols.size());
        for (std::size_t i = 0; i < rows_; ++i) {
            std::size_t w = 0, next = 0;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (next < cols.size() && cols[next] == j) {
                    ++next;
                    continue;
                }
                out(i, w++) = (*this)(i, j);
            }
        }
        return out;
    }

    MatrixFq select_columns(const std::vector<std::size_t>& cols) const {
        MatrixFq out(field_, rows_, cols.size());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = (*this)(i, cols[j]);
        return out;
    }

    bool is_zero() const {
        for (felem e : a_)
            if (e != 0) return false;
        return true;
    }

    friend bool operator==(const MatrixFq& a, const MatrixFq& b) {
        return *a.field_ == *b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

  private:
    FieldPtr field_;
    std::size_t rows_, cols_;
    std::vector<felem> a_;
};

struct RrefResult {
    MatrixFq R;
    std::size_t rank;
    std::vector<std::size_t> pivots;  // strictly increasing pivot columns
};

inline RrefResult rref(const MatrixFq& M) {
    const Field& F = *M.field();
    MatrixFq R = M;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < R.cols() && row < R.rows(); ++col) {
        std::size_t pivot = row;
        while (pivot < R.rows() && R(pivot, col) == 0) ++pivot;
        if (pivot == R.rows()) continue;
        if (pivot != row)
            for (std::size_t j = 0; j < R.cols(); ++j) std::swap(R(pivot, j), R(row, j));
        const felem inv = F.inv(R(row, col));
        for (std::size_t j = 0; j < R.cols(); ++j) R(row, j) = F.mul(inv, R(row, j));
        for (std::size_t i = 0; i < R.rows(); ++i) {
            if (i == row || R(i, col) == 0) continue;
            const felem factor = R(i, col);
            for (std::size_t j = 0; j < R.cols(); ++j)
                R(i, j) = F.sub(R(i, j), F.mul(factor, R(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(R), pivots.size(), std::move(pivots)};
}

inline std::size_t rank(const MatrixFq& M) { return rref(M).rank; }

// Basis of {x : M x^T = 0} as rows of the returned matrix, one per free
// column, built from the RREF in the standard way.
inline MatrixFq nullspace(const MatrixFq& M) {
    const Field& F = *M.field();
    const auto [R, rk, pivots] = rref(M);
    std::vector<std::size_t> free_cols;
    {
        std::size_t next = 0;
        for (std::size_t j = 0; j < M.cols(); ++j) {
            if (next < pivots.size() && pivots[next] == j)
                ++next;
            else
                free_cols.push_back(j);
        }
    }
    MatrixFq basis(M.field(), free_cols.size(), M.cols());
    for (std::size_t b = 0; b < free_cols.size(); ++b) {
        const std::size_t f = free_cols[b];
        basis(b, f) = 1;
        for (std::size_t i = 0; i < rk; ++i) basis(b, pivots[i]) = F.neg(R(i, f));
    }
    return basis;
}

}  // namespace epsbias

#pragma once

#include <numeric>
#include <span>
#include <vector>

#include "poly.hpp"

namespace zerohess {

/// Dense row-major matrix of polynomials sharing one ring.
class PolyMatrix {
   public:
    PolyMatrix(std::size_t rows, std::size_t cols, std::size_t nvars)
        : rows_(rows), cols_(cols), nvars_(nvars), entries_(rows * cols, MultiPoly(nvars)) {}

    PolyMatrix(std::size_t rows, std::size_t cols, std::vector<MultiPoly> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (entries_.size() != rows * cols) fail(ErrorKind::dimension, "matrix entry count does not match shape");
        nvars_ = entries_.empty() ? 0 : entries_[0].nvars();
        for (const auto& e : entries_)
            if (e.nvars() != nvars_) fail(ErrorKind::dimension, "matrix entries live in different rings");
    }

    static PolyMatrix identity(std::size_t n, std::size_t nvars) {
        PolyMatrix m(n, n, nvars);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = MultiPoly::constant(nvars, 1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nvars() const { return nvars_; }
    bool is_square() const { return rows_ == cols_; }

    MultiPoly& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const MultiPoly& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    std::vector<MultiPoly> row(std::size_t i) const {
        return {entries_.begin() + std::ptrdiff_t(i * cols_), entries_.begin() + std::ptrdiff_t((i + 1) * cols_)};
    }

    bool is_zero() const {
        return std::all_of(entries_.begin(), entries_.end(), [](const MultiPoly& p) { return p.is_zero(); });
    }

    PolyMatrix transpose() const {
        PolyMatrix t(cols_, rows_, nvars_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    /// Submatrix on the given row and column index lists.
    PolyMatrix select(std::span<const std::size_t> rs, std::span<const std::size_t> cs) const {
        PolyMatrix s(rs.size(), cs.size(), nvars_);
        for (std::size_t i = 0; i < rs.size(); ++i)
            for (std::size_t j = 0; j < cs.size(); ++j) s(i, j) = (*this)(rs[i], cs[j]);
        return s;
    }

    /// Matrix with row i and column j removed.
    PolyMatrix minor_matrix(std::size_t i, std::size_t j) const {
        std::vector<std::size_t> rs, cs;
        for (std::size_t r = 0; r < rows_; ++r)
            if (r != i) rs.push_back(r);
        for (std::size_t c = 0; c < cols_; ++c)
            if (c != j) cs.push_back(c);
        return select(rs, cs);
    }

    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
        if (a.cols_ != b.rows_) fail(ErrorKind::dimension, "matrix product: inner dimensions differ");
        if (a.nvars_ != b.nvars_) fail(ErrorKind::dimension, "matrix product: mismatched rings");
        PolyMatrix c(a.rows_, b.cols_, a.nvars_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j)
                for (std::size_t k = 0; k < a.cols_; ++k) c(i, j) += a(i, k) * b(k, j);
        return c;
    }

    friend PolyMatrix operator*(const MultiPoly& s, const PolyMatrix& m) {
        PolyMatrix r = m;
        for (auto& e : r.entries_) e = s * e;
        return r;
    }

    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

   private:
    std::size_t rows_;
    std::size_t cols_;
    std::size_t nvars_;
    std::vector<MultiPoly> entries_;
};

namespace detail {

/// One-step fraction-free (Bareiss) elimination. With full pivoting the number of
/// completed steps is the rank; without, the last pivot is the determinant.
struct BareissResult {
    std::size_t rank = 0;
    int sign = 1;
    MultiPoly last_pivot;
};

inline BareissResult bareiss(PolyMatrix m, bool full_pivoting) {
    const std::size_t rows = m.rows(), cols = m.cols();
    BareissResult out{0, 1, MultiPoly::constant(m.nvars(), 1)};
    MultiPoly prev = MultiPoly::constant(m.nvars(), 1);
    std::size_t steps = std::min(rows, cols);
    for (std::size_t k = 0; k < steps; ++k) {
        // sparsest nonzero pivot keeps intermediate minors small
        std::size_t best_r = rows, best_c = cols, best_size = 0;
        std::size_t c_end = full_pivoting ? cols : k + 1;
        for (std::size_t c = k; c < c_end; ++c)
            for (std::size_t r = k; r < rows; ++r) {
                const MultiPoly& e = m(r, c);
                if (e.is_zero()) continue;
                if (best_r == rows || e.size() < best_size) {
                    best_r = r;
                    best_c = c;
                    best_size = e.size();
                }
            }
        if (best_r == rows) {
            out.last_pivot = MultiPoly(m.nvars());
            return out;
        }
        if (best_r != k) {
            for (std::size_t c = 0; c < cols; ++c) std::swap(m(k, c), m(best_r, c));
            out.sign = -out.sign;
        }
        if (best_c != k) {
            for (std::size_t r = 0; r < rows; ++r) std::swap(m(r, k), m(r, best_c));
            out.sign = -out.sign;
        }
        const MultiPoly& pivot = m(k, k);
        for (std::size_t i = k + 1; i < rows; ++i) {
            for (std::size_t j = k + 1; j < cols; ++j) {
                MultiPoly v = m(i, j) * pivot - m(i, k) * m(k, j);
                m(i, j) = divide_or_throw(v, prev, "fraction-free elimination");
            }
            m(i, k) = MultiPoly(m.nvars());
        }
        prev = pivot;
        out.rank = k + 1;
        out.last_pivot = pivot;
    }
    return out;
}

}  // namespace detail

/// Exact determinant by fraction-free elimination.
inline MultiPoly determinant(const PolyMatrix& m) {
    if (!m.is_square()) fail(ErrorKind::dimension, "determinant of a non-square matrix");
    if (m.rows() == 0) return MultiPoly::constant(m.nvars(), 1);
    auto r = detail::bareiss(m, false);
    if (r.rank < m.rows()) return MultiPoly(m.nvars());
    return r.sign < 0 ? -r.last_pivot : r.last_pivot;
}

/// Signed cofactor (-1)^(i+j) det(M without row i, column j).
inline MultiPoly cofactor(const PolyMatrix& m, std::size_t i, std::size_t j) {
    MultiPoly d = determinant(m.minor_matrix(i, j));
    return (i + j) % 2 == 0 ? d : -d;
}

/// Row i of the adjugate: entries C(k, i) for k = 0..n-1.
inline std::vector<MultiPoly> adjugate_row(const PolyMatrix& m, std::size_t i) {
    if (!m.is_square()) fail(ErrorKind::dimension, "adjugate of a non-square matrix");
    std::vector<MultiPoly> row;
    row.reserve(m.rows());
    for (std::size_t k = 0; k < m.rows(); ++k) row.push_back(cofactor(m, k, i));
    return row;
}

inline PolyMatrix adjugate(const PolyMatrix& m) {
    if (!m.is_square()) fail(ErrorKind::dimension, "adjugate of a non-square matrix");
    const std::size_t n = m.rows();
    PolyMatrix adj(n, n, m.nvars());
    if (n == 1) {
        adj(0, 0) = MultiPoly::constant(m.nvars(), 1);
        return adj;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) adj(i, j) = cofactor(m, j, i);
    return adj;
}

/// Rank over the fraction field: the size of the largest nonvanishing minor,
/// found by fraction-free elimination with full pivoting.
inline std::size_t rank(const PolyMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    return detail::bareiss(m, true).rank;
}

}  // namespace zerohess

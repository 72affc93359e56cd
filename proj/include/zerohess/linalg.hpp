#pragma once

#include <optional>
#include <vector>

#include "poly.hpp"

namespace zerohess {

using QVector = std::vector<Rational>;

/// Dense matrix over Q, used for coefficient-vector linear algebra.
class QMatrix {
   public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static QMatrix from_rows(const std::vector<QVector>& rows) {
        if (rows.empty()) return {};
        QMatrix m(rows.size(), rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) fail(ErrorKind::dimension, "ragged matrix rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    static QMatrix identity(std::size_t n) {
        QMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    QVector row(std::size_t i) const {
        return {data_.begin() + std::ptrdiff_t(i * cols_), data_.begin() + std::ptrdiff_t((i + 1) * cols_)};
    }
    QVector column(std::size_t j) const {
        QVector v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    QMatrix transpose() const {
        QMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend QMatrix operator*(const QMatrix& a, const QMatrix& b) {
        if (a.cols_ != b.rows_) fail(ErrorKind::dimension, "matrix product: inner dimensions differ");
        QMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k) == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
            }
        return c;
    }

    friend bool operator==(const QMatrix& a, const QMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Reduced row echelon form together with its pivot columns.
struct Echelon {
    QMatrix reduced;
    std::vector<std::size_t> pivots;
};

inline Echelon rref(QMatrix m) {
    Echelon e;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        Rational inv = 1 / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) continue;
            Rational f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        e.pivots.push_back(c);
        ++r;
    }
    e.reduced = std::move(m);
    return e;
}

inline std::size_t rank(const QMatrix& m) { return rref(m).pivots.size(); }

/// Right kernel basis; vector k belongs to the k-th free column in increasing order
/// and has a 1 in that column.
inline std::vector<QVector> kernel(const QMatrix& m) {
    Echelon e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<QVector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        QVector v(m.cols());
        v[free] = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline std::optional<QMatrix> inverse(const QMatrix& m) {
    if (m.rows() != m.cols()) fail(ErrorKind::dimension, "inverse of a non-square matrix");
    const std::size_t n = m.rows();
    QMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    Echelon e = rref(aug);
    if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
    QMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
    return inv;
}

/// Extends linearly independent columns to a basis of Q^n by appending unit vectors
/// greedily; the given columns come last, the unit vectors first.
inline QMatrix complete_basis_last(const std::vector<QVector>& tail, std::size_t n) {
    std::vector<QVector> chosen = tail;
    std::vector<QVector> head;
    for (std::size_t i = 0; i < n && head.size() + tail.size() < n; ++i) {
        QVector u(n);
        u[i] = 1;
        auto trial = chosen;
        trial.push_back(u);
        if (rank(QMatrix::from_rows(trial)) == trial.size()) {
            chosen = std::move(trial);
            head.push_back(std::move(u));
        }
    }
    QMatrix out(n, n);
    std::size_t col = 0;
    for (const auto& v : head) {
        for (std::size_t i = 0; i < n; ++i) out(i, col) = v[i];
        ++col;
    }
    for (const auto& v : tail) {
        for (std::size_t i = 0; i < n; ++i) out(i, col) = v[i];
        ++col;
    }
    return out;
}

/// Coefficient vectors of polynomials against the union of their monomials:
/// result(i, k) is the coefficient of the k-th monomial in polys[i].
inline QMatrix coefficient_matrix(std::span<const MultiPoly> polys) {
    std::vector<Monomial> monos;
    for (const auto& p : polys)
        for (const auto& t : p.terms()) monos.push_back(t.mono);
    std::sort(monos.begin(), monos.end(), std::greater<>());
    monos.erase(std::unique(monos.begin(), monos.end()), monos.end());
    QMatrix m(polys.size(), monos.size());
    for (std::size_t i = 0; i < polys.size(); ++i)
        for (const auto& t : polys[i].terms()) {
            auto it = std::lower_bound(monos.begin(), monos.end(), t.mono, std::greater<>());
            m(i, std::size_t(it - monos.begin())) = t.coeff;
        }
    return m;
}

}  // namespace zerohess

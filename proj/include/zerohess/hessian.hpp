#pragma once

#include <random>
#include <vector>

#include "matrix.hpp"

namespace zerohess {

/// Nonzero vector of forms in one ring whose nonzero entries share a total degree.
class FormSystem {
   public:
    explicit FormSystem(std::vector<MultiPoly> forms) : forms_(std::move(forms)) {
        if (forms_.empty()) fail(ErrorKind::domain, "form system is empty");
        nvars_ = forms_[0].nvars();
        bool any = false;
        for (const auto& f : forms_) {
            if (f.nvars() != nvars_) fail(ErrorKind::dimension, "form system entries live in different rings");
            if (f.is_zero()) continue;
            auto d = homogeneous_degree(f);
            if (!d) fail(ErrorKind::domain, "form system entry is not homogeneous");
            if (any && *d != degree_) fail(ErrorKind::domain, "form system entries have different degrees");
            degree_ = *d;
            any = true;
        }
        if (!any) fail(ErrorKind::domain, "form system is identically zero");
    }

    std::size_t nvars() const { return nvars_; }
    std::size_t size() const { return forms_.size(); }
    int degree() const { return degree_; }
    const MultiPoly& operator[](std::size_t i) const { return forms_[i]; }
    const std::vector<MultiPoly>& forms() const { return forms_; }
    auto begin() const { return forms_.begin(); }
    auto end() const { return forms_.end(); }

    friend bool operator==(const FormSystem& a, const FormSystem& b) { return a.forms_ == b.forms_; }

   private:
    std::size_t nvars_ = 0;
    int degree_ = 0;
    std::vector<MultiPoly> forms_;
};

inline std::vector<MultiPoly> gradient(const MultiPoly& f) {
    std::vector<MultiPoly> g;
    g.reserve(f.nvars());
    for (std::size_t j = 0; j < f.nvars(); ++j) g.push_back(derivative(f, j));
    return g;
}

inline void require_hessian_domain(const MultiPoly& f) {
    auto d = homogeneous_degree(f);
    if (!d) fail(ErrorKind::domain, "form is not homogeneous");
    if (*d < 2) fail(ErrorKind::domain, "zero-Hessian questions need a form of degree at least 2");
}

inline PolyMatrix hessian_matrix(const MultiPoly& f) {
    require_hessian_domain(f);
    const std::size_t n = f.nvars();
    PolyMatrix h(n, n, n);
    auto grad = gradient(f);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            h(i, j) = derivative(grad[i], j);
            h(j, i) = h(i, j);
        }
    return h;
}

/// Entry (i, j) is the derivative of form i with respect to x_{j+1}.
inline PolyMatrix jacobian_matrix(const FormSystem& s) {
    PolyMatrix j(s.size(), s.nvars(), s.nvars());
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t k = 0; k < s.nvars(); ++k) j(i, k) = derivative(s[i], k);
    return j;
}

/// Rank of the Jacobian over K(x), which equals the transcendence degree of K(s).
inline std::size_t transcendence_degree(const FormSystem& s) { return rank(jacobian_matrix(s)); }

namespace detail {

/// Determinant of a constant matrix over Q by elimination.
inline Rational rational_determinant(std::vector<std::vector<Rational>> a) {
    const std::size_t n = a.size();
    Rational det = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a[p][k] == 0) ++p;
        if (p == n) return 0;
        if (p != k) {
            std::swap(a[p], a[k]);
            det = -det;
        }
        det *= a[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a[i][k] == 0) continue;
            Rational f = a[i][k] / a[k][k];
            for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
        }
    }
    return det;
}

/// A nonzero value of det(M) at an integer point proves det(M) != 0.
inline bool nonzero_at_some_point(const PolyMatrix& m, unsigned tries = 2) {
    std::mt19937_64 rng(0x5eed5eedULL + m.rows());
    std::uniform_int_distribution<int> dist(-97, 97);
    std::vector<Rational> pt(m.nvars());
    for (unsigned t = 0; t < tries; ++t) {
        for (auto& v : pt) v = dist(rng);
        std::vector<std::vector<Rational>> a(m.rows(), std::vector<Rational>(m.cols()));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = evaluate(m(i, j), pt);
        if (rational_determinant(std::move(a)) != 0) return true;
    }
    return false;
}

}  // namespace detail

/// True iff det(d^2 f / dx_i dx_j) vanishes identically. A nonzero value at an
/// integer point settles "false" early; "true" is always settled symbolically:
/// by the exact determinant for n <= 5, by the Jacobian rank of the partials above.
inline bool has_zero_hessian(const MultiPoly& f) {
    PolyMatrix h = hessian_matrix(f);
    if (detail::nonzero_at_some_point(h)) return false;
    if (f.nvars() <= 5) return determinant(h).is_zero();
    return rank(h) < f.nvars();
}

/// n minus the rank of the Hessian over K(x).
inline std::size_t hessian_corank(const MultiPoly& f) { return f.nvars() - rank(hessian_matrix(f)); }

}  // namespace zerohess

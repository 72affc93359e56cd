#pragma once

#include <span>
#include <vector>

#include "poly.hpp"

namespace zerohess {

namespace detail {

/// Coefficients of p viewed as a univariate polynomial in `var`; entry k multiplies var^k.
inline std::vector<MultiPoly> coefficients_in(const MultiPoly& p, std::size_t var) {
    std::vector<std::vector<Term>> buckets;
    for (const auto& t : p.terms()) {
        unsigned e = t.mono[var];
        if (buckets.size() <= e) buckets.resize(e + 1);
        Monomial m = t.mono;
        m.set(var, 0);
        buckets[e].push_back({m, t.coeff});
    }
    std::vector<MultiPoly> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) out.push_back(MultiPoly::from_terms(p.nvars(), std::move(b)));
    return out;
}

inline MultiPoly leading_coefficient_in(const MultiPoly& p, std::size_t var) {
    int d = p.degree_in(var);
    std::vector<Term> out;
    for (const auto& t : p.terms()) {
        if (int(t.mono[var]) != d) continue;
        Monomial m = t.mono;
        m.set(var, 0);
        out.push_back({m, t.coeff});
    }
    return MultiPoly::from_terms(p.nvars(), std::move(out));
}

inline std::size_t highest_variable(const MultiPoly& p) {
    std::size_t v = 0;
    for (const auto& t : p.terms()) v = std::max(v, t.mono.support_end());
    return v;  // one past the index
}

/// lc(b)^(deg a - deg b + 1) * a  mod  b, in `var`.
inline MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, std::size_t var) {
    int db = b.degree_in(var);
    MultiPoly lcb = leading_coefficient_in(b, var);
    MultiPoly r = a;
    int e = a.degree_in(var) - db + 1;
    while (!r.is_zero() && r.degree_in(var) >= db) {
        int k = r.degree_in(var) - db;
        MultiPoly lead = leading_coefficient_in(r, var).shifted(Monomial::unit(var, unsigned(k)));
        r = lcb * r - lead * b;
        --e;
    }
    return pow(lcb, unsigned(std::max(e, 0))) * r;
}

}  // namespace detail

MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);

/// Integer-primitive form with positive leading coefficient; the GCD normalization.
inline MultiPoly normalize_gcd(const MultiPoly& p) { return integer_primitive(p).second; }

/// GCD of all coefficients of p in `var`.
inline MultiPoly content_in(const MultiPoly& p, std::size_t var) {
    auto coeffs = detail::coefficients_in(p, var);
    MultiPoly g(p.nvars());
    for (const auto& c : coeffs) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? normalize_gcd(c) : gcd(g, c);
        if (g.is_constant()) break;
    }
    return g;
}

namespace detail {

/// GCD of two polynomials primitive in `var`, both of positive degree in `var`.
inline MultiPoly subresultant_gcd(MultiPoly a, MultiPoly b, std::size_t var) {
    if (a.degree_in(var) < b.degree_in(var)) std::swap(a, b);
    const std::size_t n = a.nvars();
    MultiPoly g = MultiPoly::constant(n, 1);
    MultiPoly h = MultiPoly::constant(n, 1);
    while (true) {
        int d = a.degree_in(var) - b.degree_in(var);
        MultiPoly r = pseudo_remainder(a, b, var);
        if (r.is_zero()) break;
        if (r.degree_in(var) == 0) return MultiPoly::constant(n, 1);
        a = b;
        b = divide_or_throw(r, g * pow(h, unsigned(d)), "subresultant step");
        g = leading_coefficient_in(a, var);
        if (d == 1) {
            h = g;
        } else if (d > 1) {
            h = divide_or_throw(pow(g, unsigned(d)), pow(h, unsigned(d - 1)), "subresultant scale");
        }
    }
    MultiPoly cont = content_in(b, var);
    return normalize_gcd(divide_or_throw(b, cont, "primitive part"));
}

}  // namespace detail

/// Multivariate GCD over Q, normalized to be integer-primitive with positive leading
/// coefficient. Recursive content / primitive part split with subresultant sequences.
inline MultiPoly gcd(const MultiPoly& a, const MultiPoly& b) {
    if (a.nvars() != b.nvars()) fail(ErrorKind::dimension, "gcd: mismatched rings");
    if (a.is_zero() && b.is_zero()) fail(ErrorKind::undefined_input, "gcd(0, 0) is undefined");
    if (a.is_zero()) return normalize_gcd(b);
    if (b.is_zero()) return normalize_gcd(a);
    const std::size_t n = a.nvars();
    if (a.is_constant() || b.is_constant()) return MultiPoly::constant(n, 1);
    MultiPoly pa = normalize_gcd(a);
    MultiPoly pb = normalize_gcd(b);
    if (pa == pb) return pa;
    if (pa.size() == 1 && pb.size() == 1) {
        Monomial m;
        for (std::size_t i = 0; i < n; ++i) m.set(i, std::min(pa.leading().mono[i], pb.leading().mono[i]));
        return MultiPoly::monomial(n, m);
    }

    std::size_t var = std::max(detail::highest_variable(pa), detail::highest_variable(pb)) - 1;
    bool in_a = pa.involves(var), in_b = pb.involves(var);
    if (!in_a) return gcd(pa, content_in(pb, var));
    if (!in_b) return gcd(content_in(pa, var), pb);

    MultiPoly ca = content_in(pa, var);
    MultiPoly cb = content_in(pb, var);
    MultiPoly c = gcd(ca, cb);
    MultiPoly ppa = divide_or_throw(pa, ca, "gcd content");
    MultiPoly ppb = divide_or_throw(pb, cb, "gcd content");
    return normalize_gcd(c * detail::subresultant_gcd(ppa, ppb, var));
}

/// GCD over a list; zero entries are skipped. Fails if every entry is zero.
inline MultiPoly gcd(std::span<const MultiPoly> polys) {
    std::optional<MultiPoly> g;
    for (const auto& p : polys) {
        if (p.is_zero()) continue;
        g = g ? gcd(*g, p) : normalize_gcd(p);
        if (g->is_constant()) break;
    }
    if (!g) fail(ErrorKind::undefined_input, "gcd of an all-zero list is undefined");
    return *g;
}

inline MultiPoly lcm(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly g = gcd(a, b);
    return normalize_gcd(divide_or_throw(a, g, "lcm") * b);
}

}  // namespace zerohess

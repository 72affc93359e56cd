#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gcd.hpp"
#include "hessian.hpp"
#include "linalg.hpp"
#include "rational_function.hpp"

namespace zerohess {

// ---------------------------------------------------------------------------
// The operator D_x(h) = sum_j h_j d/dx_j and Taylor coefficients
// ---------------------------------------------------------------------------

inline MultiPoly apply_operator(std::span<const MultiPoly> h, const MultiPoly& f) {
    if (h.size() != f.nvars()) fail(ErrorKind::dimension, "operator length differs from the number of variables");
    MultiPoly out(f.nvars());
    for (std::size_t j = 0; j < h.size(); ++j) {
        if (h[j].nvars() != f.nvars()) fail(ErrorKind::dimension, "operator coefficients live in another ring");
        if (h[j].is_zero()) continue;
        out += h[j] * derivative(f, j);
    }
    return out;
}

inline MultiPoly apply_operator(const FormSystem& h, const MultiPoly& f) { return apply_operator(h.forms(), f); }

/// D(omega) f for a constant direction omega.
inline MultiPoly apply_direction(std::span<const Rational> omega, const MultiPoly& f) {
    if (omega.size() != f.nvars()) fail(ErrorKind::dimension, "direction length differs from the number of variables");
    MultiPoly out(f.nvars());
    for (std::size_t j = 0; j < omega.size(); ++j)
        if (omega[j] != 0) out += derivative(f, j) * omega[j];
    return out;
}

namespace detail {

/// Visits every multi-index alpha with |alpha| = order, passing d^alpha f / alpha!.
inline void for_each_scaled_derivative(const MultiPoly& f, unsigned order,
                                       const std::function<void(const std::vector<unsigned>&, const MultiPoly&)>& visit) {
    const std::size_t n = f.nvars();
    std::vector<unsigned> alpha(n, 0);
    std::function<void(std::size_t, unsigned, const MultiPoly&)> rec = [&](std::size_t var, unsigned left,
                                                                         const MultiPoly& d) {
        if (d.is_zero()) return;
        if (left == 0) {
            visit(alpha, d);
            return;
        }
        if (var == n) return;
        MultiPoly cur = d;
        for (unsigned k = 0; k <= left; ++k) {
            if (k > 0) {
                cur = derivative(cur, var) / Rational(k);
                if (cur.is_zero()) break;
            }
            alpha[var] = k;
            rec(var + 1, left - k, cur);
        }
        alpha[var] = 0;
    };
    rec(0, order, f);
}

}  // namespace detail

/// f^(j)(x, y) = D_x(y)^j f / j! with fresh variables y; the result lives in 2n
/// variables, x_1..x_n followed by y_1..y_n.
inline MultiPoly taylor_coefficient(const MultiPoly& f, unsigned j) {
    const std::size_t n = f.nvars();
    if (2 * n > kMaxVars) fail(ErrorKind::dimension, "too many variables for fresh Taylor variables");
    MultiPoly out(2 * n);
    detail::for_each_scaled_derivative(f, j, [&](const std::vector<unsigned>& alpha, const MultiPoly& d) {
        Monomial ym;
        for (std::size_t i = 0; i < n; ++i) ym.set(n + i, alpha[i]);
        out += extend(d, 2 * n).shifted(ym);
    });
    return out;
}

/// f^(j)(x, h(x)): the Taylor coefficient with y replaced by the forms h after differentiation.
inline MultiPoly taylor_coefficient(const MultiPoly& f, const FormSystem& h, unsigned j) {
    const std::size_t n = f.nvars();
    if (h.size() != n || h.nvars() != n) fail(ErrorKind::dimension, "Taylor coefficient: arity mismatch");
    std::vector<std::vector<MultiPoly>> powers(n, std::vector<MultiPoly>{MultiPoly::constant(n, 1)});
    MultiPoly out(n);
    detail::for_each_scaled_derivative(f, j, [&](const std::vector<unsigned>& alpha, const MultiPoly& d) {
        MultiPoly term = d;
        for (std::size_t i = 0; i < n; ++i) {
            auto& pw = powers[i];
            while (pw.size() <= alpha[i]) pw.push_back(pw.back() * h[i]);
            if (alpha[i] > 0) term *= pw[alpha[i]];
        }
        out += term;
    });
    return out;
}

inline bool is_in_sol(const FormSystem& h, const MultiPoly& f) { return apply_operator(h, f).is_zero(); }

inline bool is_self_vanishing(const FormSystem& h) {
    if (h.size() != h.nvars()) fail(ErrorKind::dimension, "a self-vanishing system needs one form per variable");
    for (const auto& hk : h)
        if (!is_in_sol(h, hk)) return false;
    return true;
}

/// f(x + t h(x)) in n+1 variables; t is the last variable.
inline MultiPoly shifted_along(const MultiPoly& f, const FormSystem& h) {
    const std::size_t n = f.nvars();
    if (n + 1 > kMaxVars) fail(ErrorKind::dimension, "too many variables for the shift parameter");
    MultiPoly t = MultiPoly::variable(n + 1, n);
    std::vector<MultiPoly> images;
    images.reserve(n);
    for (std::size_t i = 0; i < n; ++i) images.push_back(MultiPoly::variable(n + 1, i) + t * extend(h[i], n + 1));
    return substitute(f, std::span<const MultiPoly>(images));
}

/// Compares coefficients of every power of t in f(x + t h) against f(x).
inline bool is_shift_invariant(const MultiPoly& f, const FormSystem& h) {
    return shifted_along(f, h) == extend(f, f.nvars() + 1);
}

// ---------------------------------------------------------------------------
// Certificates
// ---------------------------------------------------------------------------

enum class SvsRoute { adjugate, relation, user_supplied };

inline const char* to_string(SvsRoute r) {
    switch (r) {
        case SvsRoute::adjugate:
            return "adjugate";
        case SvsRoute::relation:
            return "relation";
        case SvsRoute::user_supplied:
            return "user-supplied";
    }
    return "?";
}

struct SvsChecks {
    bool self_vanishing = false;
    bool syzygy_f = false;
    bool syzygy_partials = false;
    bool shift_invariance = false;
    bool self_substitution_zero = false;

    bool all() const { return self_vanishing && syzygy_f && syzygy_partials && shift_invariance && self_substitution_zero; }
};

struct SvsCertificate {
    FormSystem h;
    bool reduced = false;
    SvsRoute route = SvsRoute::user_supplied;
    SvsChecks checks;
};

/// Divides by the GCD of the components and by the rational content of all
/// coefficients, then makes the first nonzero component's leading coefficient positive.
inline FormSystem reduce_system(std::vector<MultiPoly> h) {
    MultiPoly g = gcd(std::span<const MultiPoly>(h));
    if (!g.is_constant())
        for (auto& c : h) c = divide_or_throw(c, g, "reduce system");
    Integer num = 0, den = 1;
    for (const auto& c : h)
        for (const auto& t : c.terms()) {
            mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.coeff.get_num_mpz_t());
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
        }
    Rational content(num, den);
    content.canonicalize();
    for (const auto& c : h)
        if (!c.is_zero()) {
            if (c.leading().coeff < 0) content = -content;
            break;
        }
    for (auto& c : h) c /= content;
    return FormSystem(std::move(h));
}

inline bool is_reduced(const FormSystem& h) { return gcd(std::span<const MultiPoly>(h.forms())).is_constant(); }

/// h_j(h_1, ..., h_n) = 0 for every j; vacuous for constant systems.
inline bool self_substitution_vanishes(const FormSystem& h) {
    if (h.degree() < 1) return true;
    for (const auto& hj : h)
        if (!substitute(hj, std::span<const MultiPoly>(h.forms())).is_zero()) return false;
    return true;
}

/// Re-runs every identity of the certificate against f. Throws certificate_invalid
/// naming the first identity that fails; otherwise returns the certificate with all
/// flags set.
inline SvsCertificate verify_certificate(const MultiPoly& f, SvsCertificate c) {
    const std::size_t n = f.nvars();
    if (c.h.size() != n || c.h.nvars() != n) fail(ErrorKind::dimension, "certificate arity differs from the form");
    auto invalid = [](const std::string& which) { fail(ErrorKind::certificate_invalid, "certificate invalid: " + which); };
    auto grad = gradient(f);
    c.checks = {};

    MultiPoly pairing(n);
    for (std::size_t j = 0; j < n; ++j) pairing += c.h[j] * grad[j];
    if (!pairing.is_zero()) invalid("sum_j h_j f_j != 0");
    c.checks.syzygy_f = true;

    for (std::size_t j = 0; j < n; ++j) {
        MultiPoly s(n);
        for (std::size_t k = 0; k < n; ++k) s += c.h[k] * derivative(grad[k], j);
        if (!s.is_zero()) invalid("sum_k h_k d f_k / d x_" + std::to_string(j + 1) + " != 0");
    }
    c.checks.syzygy_partials = true;

    if (!is_self_vanishing(c.h)) invalid("h is not self-vanishing");
    c.checks.self_vanishing = true;

    if (!is_shift_invariant(f, c.h)) invalid("f(x + t h) != f(x)");
    c.checks.shift_invariance = true;

    if (!self_substitution_vanishes(c.h)) invalid("h_j(h) != 0");
    c.checks.self_substitution_zero = true;

    c.reduced = is_reduced(c.h);
    return c;
}

// ---------------------------------------------------------------------------
// Extraction
// ---------------------------------------------------------------------------

/// Reduced self-vanishing system from a nonzero adjugate row of the Hessian.
/// Requires zero Hessian of corank exactly one.
inline SvsCertificate extract_reduced_svs(const MultiPoly& f) {
    PolyMatrix hess = hessian_matrix(f);
    if (!has_zero_hessian(f)) fail(ErrorKind::domain, "the Hessian does not vanish");
    const std::size_t n = f.nvars();
    std::size_t corank = n - rank(hess);
    if (corank != 1)
        fail(ErrorKind::unsupported_corank, "Hessian corank is " + std::to_string(corank) +
                                                ", adjugate extraction needs corank 1; use the relation route");
    for (std::size_t i = 0; i < n; ++i) {
        auto row = adjugate_row(hess, i);
        if (std::all_of(row.begin(), row.end(), [](const MultiPoly& p) { return p.is_zero(); })) continue;
        SvsCertificate c{reduce_system(std::move(row)), true, SvsRoute::adjugate, {}};
        return verify_certificate(f, std::move(c));
    }
    fail(ErrorKind::certificate_invalid, "corank-one Hessian with a vanishing adjugate");
}

namespace detail {

/// Exponent vectors of total degree d in n variables, in descending graded-lex order.
inline std::vector<Monomial> monomials_of_degree(std::size_t n, unsigned d) {
    std::vector<Monomial> out;
    Monomial m;
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t var, unsigned left) {
        if (var + 1 == n) {
            m.set(var, left);
            out.push_back(m);
            m.set(var, 0);
            return;
        }
        for (unsigned k = left + 1; k-- > 0;) {
            m.set(var, k);
            rec(var + 1, left - k);
        }
        m.set(var, 0);
    };
    if (n == 0) return out;
    rec(0, d);
    return out;
}

}  // namespace detail

/// Least-degree homogeneous g(y) with g(s) = 0, by an ascending-degree linear
/// ansatz. The ansatz monomials are ordered by descending graded-lex; the answer is
/// the kernel vector attached to the first free column, made integer-primitive
/// with positive leading coefficient.
inline MultiPoly find_minimal_relation(const FormSystem& s, unsigned max_degree) {
    if (max_degree < 1) fail(ErrorKind::domain, "max_degree must be at least 1");
    const std::size_t m = s.size();
    std::vector<std::vector<MultiPoly>> powers(m, std::vector<MultiPoly>{MultiPoly::constant(s.nvars(), 1)});
    auto power = [&](std::size_t i, unsigned e) -> const MultiPoly& {
        auto& pw = powers[i];
        while (pw.size() <= e) pw.push_back(pw.back() * s[i]);
        return pw[e];
    };
    for (unsigned d = 1; d <= max_degree; ++d) {
        auto ansatz = detail::monomials_of_degree(m, d);
        std::vector<MultiPoly> images;
        images.reserve(ansatz.size());
        for (const auto& mono : ansatz) {
            MultiPoly v = MultiPoly::constant(s.nvars(), 1);
            for (std::size_t i = 0; i < m; ++i)
                if (mono[i] > 0) v *= power(i, mono[i]);
            images.push_back(std::move(v));
        }
        QMatrix coeffs = coefficient_matrix(images);
        auto ker = kernel(coeffs.transpose());
        if (ker.empty()) continue;
        std::vector<Term> terms;
        for (std::size_t k = 0; k < ansatz.size(); ++k)
            if (ker[0][k] != 0) terms.push_back({ansatz[k], ker[0][k]});
        return integer_primitive(MultiPoly::from_terms(m, std::move(terms))).second;
    }
    if (transcendence_degree(s) == m)
        fail(ErrorKind::cap_exceeded, "no relation: the forms are algebraically independent");
    fail(ErrorKind::cap_exceeded, "no relation found up to degree " + std::to_string(max_degree));
}

/// Euler reconstruction: F with grad F = s when s is a gradient system, else nullopt.
inline std::optional<MultiPoly> potential_of(const FormSystem& s) {
    if (s.size() != s.nvars()) return std::nullopt;
    const std::size_t n = s.nvars();
    MultiPoly f(n);
    for (std::size_t j = 0; j < n; ++j) f += MultiPoly::variable(n, j) * s[j];
    f /= Rational(s.degree() + 1);
    if (gradient(f) != s.forms()) return std::nullopt;
    return f;
}

/// h'_i = (dg/dy_i)(s), reduced. When s is the gradient of a form F the full
/// certificate is verified against F; otherwise the identities that only involve
/// s are checked (the pairing and syzygy flags then refer to s itself).
inline SvsCertificate svs_from_relation(const MultiPoly& g, const FormSystem& s) {
    if (g.nvars() != s.size()) fail(ErrorKind::dimension, "relation arity differs from the system length");
    if (!substitute(g, std::span<const MultiPoly>(s.forms())).is_zero())
        fail(ErrorKind::invalid_relation, "g(s) != 0: not a relation among the forms");
    std::vector<MultiPoly> h;
    h.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        h.push_back(substitute(derivative(g, i), std::span<const MultiPoly>(s.forms())));
    if (std::all_of(h.begin(), h.end(), [](const MultiPoly& p) { return p.is_zero(); }))
        fail(ErrorKind::invalid_relation, "all dg/dy_i vanish on s: the relation is not of least degree");
    SvsCertificate c{reduce_system(std::move(h)), true, SvsRoute::relation, {}};
    if (auto f = potential_of(s)) return verify_certificate(*f, std::move(c));

    const std::size_t n = s.nvars();
    auto invalid = [](const std::string& which) { fail(ErrorKind::certificate_invalid, "certificate invalid: " + which); };
    MultiPoly pairing(n);
    for (std::size_t j = 0; j < s.size(); ++j) pairing += c.h[j] * s[j];
    if (!pairing.is_zero()) invalid("sum_j h_j s_j != 0");
    c.checks.syzygy_f = true;
    for (std::size_t j = 0; j < n; ++j) {
        MultiPoly acc(n);
        for (std::size_t k = 0; k < s.size(); ++k) acc += c.h[k] * derivative(s[k], j);
        if (!acc.is_zero()) invalid("sum_k h_k d s_k / d x_" + std::to_string(j + 1) + " != 0");
    }
    c.checks.syzygy_partials = true;
    if (c.h.size() == c.h.nvars()) {
        c.checks.self_vanishing = is_self_vanishing(c.h);
        c.checks.shift_invariance =
            std::all_of(s.begin(), s.end(), [&](const MultiPoly& sk) { return is_shift_invariant(sk, c.h); });
        c.checks.self_substitution_zero = self_substitution_vanishes(c.h);
    }
    c.reduced = is_reduced(c.h);
    return c;
}

/// Default relation-degree cap: twice the degree of the form.
inline unsigned default_relation_cap(const MultiPoly& f) { return unsigned(std::max(2 * f.degree(), 1)); }

/// Adjugate route when the Hessian has corank one, relation route otherwise.
inline SvsCertificate extract_svs(const MultiPoly& f, std::optional<unsigned> max_degree = std::nullopt) {
    if (!has_zero_hessian(f)) fail(ErrorKind::domain, "the Hessian does not vanish");
    if (hessian_corank(f) == 1) return extract_reduced_svs(f);
    FormSystem partials(gradient(f));
    MultiPoly g = find_minimal_relation(partials, max_degree.value_or(default_relation_cap(f)));
    return svs_from_relation(g, partials);
}

// ---------------------------------------------------------------------------
// Elimination
// ---------------------------------------------------------------------------

/// s_i = x_i - (h_i / h_p) x_p, s_p = 0, for the pivot p.
struct BirationalSubstitution {
    std::size_t pivot = 0;
    std::vector<RationalFunction> s;
};

struct BirationalElimination {
    BirationalSubstitution substitution;
    RationalFunction eliminated;  // f(s_1, ..., s_{n-1}, 0)
    std::vector<RationalFunction> ratios;   // c_j = h_j(s) / h_p(s)
    std::vector<RationalFunction> inverse;  // x_j = s_j + c_j x_p, expanded
};

inline BirationalSubstitution birational_substitution(const FormSystem& h) {
    const std::size_t n = h.nvars();
    std::size_t pivot = n;
    for (std::size_t j = n; j-- > 0;)
        if (!h[j].is_zero()) {
            pivot = j;
            break;
        }
    BirationalSubstitution sub{pivot, {}};
    MultiPoly xp = MultiPoly::variable(n, pivot);
    for (std::size_t i = 0; i < n; ++i) {
        if (i == pivot) {
            sub.s.emplace_back(MultiPoly(n));
            continue;
        }
        sub.s.push_back(RationalFunction(MultiPoly::variable(n, i)) - RationalFunction(h[i] * xp, h[pivot]));
    }
    return sub;
}

/// Eliminates the pivot variable: verifies f = f(s, 0), h(s) = h(x), and that
/// x_j = s_j + (h_j(s)/h_p(s)) x_p recovers the coordinates.
inline BirationalElimination eliminate_birational(const MultiPoly& f, const SvsCertificate& c) {
    const std::size_t n = f.nvars();
    if (c.h.size() != n || c.h.nvars() != n) fail(ErrorKind::dimension, "certificate arity differs from the form");
    if (!is_in_sol(c.h, f)) fail(ErrorKind::domain, "f is not annihilated by D(h)");
    BirationalElimination out{birational_substitution(c.h), RationalFunction(n), {}, {}};
    const auto& s = out.substitution.s;
    const std::size_t p = out.substitution.pivot;
    out.eliminated = substitute(f, std::span<const RationalFunction>(s));
    if (!(out.eliminated == RationalFunction(f)))
        fail(ErrorKind::certificate_invalid, "identity f = f(s_1, ..., s_{n-1}, 0) failed");
    std::vector<RationalFunction> hs;
    for (std::size_t j = 0; j < n; ++j) {
        hs.push_back(substitute(c.h[j], std::span<const RationalFunction>(s)));
        if (!(hs.back() == RationalFunction(c.h[j]))) fail(ErrorKind::certificate_invalid, "identity h(s) = h(x) failed");
    }
    RationalFunction xp(MultiPoly::variable(n, p));
    for (std::size_t j = 0; j < n; ++j) {
        out.ratios.push_back(hs[j] / hs[p]);
        RationalFunction back = s[j] + out.ratios.back() * xp;
        if (!(back == RationalFunction(MultiPoly::variable(n, j))))
            fail(ErrorKind::certificate_invalid, "inverse map fails to recover x_" + std::to_string(j + 1));
        out.inverse.push_back(std::move(back));
    }
    return out;
}

/// f'(x') = f(B x') where B is the given constant matrix (x = B x').
inline MultiPoly change_coordinates(const MultiPoly& f, const QMatrix& b) {
    const std::size_t n = f.nvars();
    if (b.rows() != n || b.cols() != n) fail(ErrorKind::dimension, "coordinate change has the wrong size");
    std::vector<MultiPoly> images(n, MultiPoly(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (b(i, j) != 0) images[i] += MultiPoly::variable(n, j) * b(i, j);
    return substitute(f, std::span<const MultiPoly>(images));
}

struct LinearElimination {
    QMatrix transform;  // A with x' = A x
    QMatrix inverse;    // A^{-1}
    MultiPoly form;     // f'(x') = f(A^{-1} x')
    std::size_t span_dimension = 0;  // s: f' involves only x'_1..x'_s
};

/// When the partials of f are linearly dependent, a constant change of coordinates
/// after which f' involves only the first s variables, s = dim span of the partials.
inline std::optional<LinearElimination> eliminate_linear(const MultiPoly& f) {
    const std::size_t n = f.nvars();
    auto grad = gradient(f);
    QMatrix coeffs = coefficient_matrix(grad);
    std::size_t s = rank(coeffs);
    if (s == n) return std::nullopt;
    auto relations = kernel(coeffs.transpose());
    QMatrix inv = complete_basis_last(relations, n);
    auto a = inverse(inv);
    if (!a) fail(ErrorKind::certificate_invalid, "linear elimination produced a singular change of coordinates");
    LinearElimination out{*a, inv, change_coordinates(f, inv), s};
    for (std::size_t j = s; j < n; ++j)
        if (out.form.involves(j))
            fail(ErrorKind::certificate_invalid, "linear elimination left x'_" + std::to_string(j + 1) + " in the form");
    return out;
}

// ---------------------------------------------------------------------------
// Structure reports
// ---------------------------------------------------------------------------

struct RankBoundReport {
    std::size_t jacobian_rank = 0;
    Rational bound;  // n / 2
    bool satisfied = false;
};

/// Jacobian rank of a self-vanishing system against n/2. The bound is only
/// guaranteed for systems arising from forms with vanishing Hessian; arbitrary
/// self-vanishing maps can exceed it.
inline RankBoundReport rank_bound_report(const FormSystem& h) {
    if (!is_self_vanishing(h)) fail(ErrorKind::domain, "rank bound needs a self-vanishing system");
    RankBoundReport r;
    r.jacobian_rank = transcendence_degree(h);
    r.bound = Rational(long(h.nvars()), 2);
    r.bound.canonicalize();
    r.satisfied = Rational(long(r.jacobian_rank)) <= r.bound;
    return r;
}

struct LinearClosureReport {
    std::size_t s = 0;            // dim_K (sum K h_j) - 1
    std::vector<QVector> basis;   // reduced echelon basis of the span of h's values
    bool holds = false;           // D(omega) h_k = 0 for every basis omega and every k
};

/// Constant basis of the linear span of the values h(x), and whether every h_k is
/// constant along that span.
inline LinearClosureReport linear_closure_structure(const FormSystem& h) {
    if (!is_self_vanishing(h)) fail(ErrorKind::domain, "linear closure check needs a self-vanishing system");
    QMatrix coeffs = coefficient_matrix(h.forms());  // n x monomials; columns are value vectors
    Echelon e = rref(coeffs.transpose());
    LinearClosureReport r;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) r.basis.push_back(e.reduced.row(i));
    r.s = r.basis.empty() ? 0 : r.basis.size() - 1;
    r.holds = true;
    for (const auto& omega : r.basis)
        for (const auto& hk : h)
            if (!apply_direction(omega, hk).is_zero()) r.holds = false;
    return r;
}

/// Projective dimension of the closure of the image of x -> h(x): transcendence
/// degree minus one, and 0 for constant systems.
inline std::size_t image_dimension(const FormSystem& h) {
    if (h.degree() == 0) return 0;
    std::size_t t = transcendence_degree(h);
    return t == 0 ? 0 : t - 1;
}

}  // namespace zerohess

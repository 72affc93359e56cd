#pragma once

// Seed-deterministic inputs shared by the unit suites and the acceptance binary.

#include <random>
#include <string>
#include <vector>

#include <zerohess/gn_forms.hpp>
#include <zerohess/hessian.hpp>
#include <zerohess/linalg.hpp>
#include <zerohess/svs.hpp>

namespace corpus {

using namespace zerohess;
using Rng = std::mt19937_64;

inline constexpr const char* kCubic = "x1^2*x3 + x1*x2*x4 + x2^2*x5";

inline MultiPoly cubic() {
    auto x = [](std::size_t i) { return MultiPoly::variable(5, i); };
    return x(0) * x(0) * x(2) + x(0) * x(1) * x(3) + x(1) * x(1) * x(4);
}

/// The five-variable self-vanishing map whose Jacobian rank exceeds n/2.
inline FormSystem rank_bound_counterexample() {
    auto x = [](std::size_t i) { return MultiPoly::variable(5, i); };
    MultiPoly a = x(0) * x(3) - x(1) * x(2);
    MultiPoly s = x(4) * x(4);
    return FormSystem({s * (a * x(0) - s * x(1)), a * (a * x(0) - s * x(1)), s * (a * x(2) - s * x(3)),
                       a * (a * x(2) - s * x(3)), MultiPoly(5)});
}

inline int small_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Rational small_rational(Rng& rng) {
    Rational q(small_int(rng, -9, 9), small_int(rng, 1, 4));
    q.canonicalize();
    return q;
}

/// Dense-ish random form of degree d in n variables.
inline MultiPoly random_form(std::size_t n, unsigned d, Rng& rng, double density = 0.5) {
    std::vector<Term> terms;
    std::bernoulli_distribution keep(density);
    for (const auto& m : zerohess::detail::monomials_of_degree(n, d))
        if (keep(rng)) terms.push_back({m, Rational(small_int(rng, -5, 5))});
    MultiPoly p = MultiPoly::from_terms(n, std::move(terms));
    if (p.is_zero()) p = pow(MultiPoly::variable(n, 0), d);
    return p;
}

inline MultiPoly random_linear_form(std::size_t n, Rng& rng) {
    MultiPoly l(n);
    for (std::size_t i = 0; i < n; ++i) l += MultiPoly::variable(n, i) * Rational(small_int(rng, -3, 3));
    if (l.is_zero()) l = MultiPoly::variable(n, 0);
    return l;
}

/// Random invertible matrix with small integer entries.
inline QMatrix random_invertible(std::size_t n, Rng& rng) {
    while (true) {
        QMatrix b(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) b(i, j) = small_int(rng, -2, 2);
        if (inverse(b)) return b;
    }
}

/// P(L_1, ..., L_k) for a random form P in k < n variables and random linear L_i:
/// the partials are linearly dependent, so the Hessian vanishes.
inline MultiPoly composed_form(std::size_t n, std::size_t k, unsigned d, Rng& rng) {
    MultiPoly p = random_form(k, d, rng, 0.7);
    std::vector<MultiPoly> ls;
    for (std::size_t i = 0; i < k; ++i) ls.push_back(random_linear_form(n, rng));
    return substitute(p, std::span<const MultiPoly>(ls));
}

/// Binary forms of degrees 2..8: powers of linear forms mixed with arbitrary ones.
inline std::vector<MultiPoly> binary_forms(std::size_t count, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<MultiPoly> out;
    for (std::size_t i = 0; i < count; ++i) {
        unsigned d = unsigned(small_int(rng, 2, 8));
        if (i % 2 == 0)
            out.push_back(pow(random_linear_form(2, rng), d) * Rational(small_int(rng, 1, 4)));
        else
            out.push_back(random_form(2, d, rng));
    }
    return out;
}

/// Ternary forms: compositions through two linear forms, pure powers, and arbitrary forms.
inline std::vector<MultiPoly> ternary_forms(std::size_t count, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<MultiPoly> out;
    for (std::size_t i = 0; i < count; ++i) {
        unsigned d = unsigned(small_int(rng, 2, 6));
        switch (i % 3) {
            case 0:
                out.push_back(composed_form(3, 2, d, rng));
                break;
            case 1:
                out.push_back(pow(random_linear_form(3, rng), d));
                break;
            default:
                out.push_back(random_form(3, d, rng));
        }
    }
    return out;
}

/// A generated quinary form with its matrix data; entry degree 1 or 2.
struct GnSample {
    DeltaData data;
    GnProfile profile;
    GnForm form;
};

inline GnProfile gn_profile(std::size_t i) {
    GnProfile p;
    p.entry_degree = i % 3 == 2 ? 2 : 1;
    p.degree = unsigned(3 + i % 6);
    p.terms = unsigned(2 + i % 4);
    p.require_delta = p.degree >= 2 * p.entry_degree + 1;
    return p;
}

inline GnSample gn_sample(std::size_t i, std::uint64_t seed) {
    GnSample s;
    s.profile = gn_profile(i);
    s.data = random_delta_data(s.profile.entry_degree, seed);
    s.form = generate_gn_form(s.data, s.profile, seed);
    return s;
}

/// Zero-Hessian forms of several kinds, n between 3 and 5:
/// GN quinary forms, linear changes of the canonical cubic family, and
/// compositions P(L_1, ..., L_{n-1}).
inline std::vector<MultiPoly> zero_hessian_forms(std::size_t count, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<MultiPoly> out;
    for (std::size_t i = 0; i < count; ++i) {
        switch (i % 4) {
            case 0: {
                GnProfile p;
                p.degree = unsigned(small_int(rng, 3, 5));
                p.terms = 3;
                out.push_back(generate_gn_form(random_delta_data(1, rng()), p, rng()).form);
                break;
            }
            case 1: {
                QMatrix b = random_invertible(5, rng);
                MultiPoly f = cubic() * Rational(small_int(rng, 1, 3));
                out.push_back(change_coordinates(f, b));
                break;
            }
            case 2:
                out.push_back(composed_form(4, 3, unsigned(small_int(rng, 2, 4)), rng));
                break;
            default:
                out.push_back(composed_form(3, 2, unsigned(small_int(rng, 2, 5)), rng));
        }
    }
    return out;
}

/// Self-vanishing systems (0, 0, p_3, ..., p_n) with p_j forms in x1, x2.
inline FormSystem binary_fibre_system(std::size_t n, unsigned d, Rng& rng) {
    std::vector<MultiPoly> h(n, MultiPoly(n));
    for (std::size_t j = 2; j < n; ++j) h[j] = extend(random_form(2, d, rng, 0.8), n);
    bool any = false;
    for (const auto& p : h) any = any || !p.is_zero();
    if (!any) h[n - 1] = pow(MultiPoly::variable(n, 0), d);
    return FormSystem(h);
}

}  // namespace corpus

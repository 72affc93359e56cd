#pragma once

#include <array>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hessian.hpp"
#include "svs.hpp"
#include "text.hpp"

namespace zerohess {

inline constexpr std::size_t kQuinary = 5;

/// A 2x3 matrix over K[x1, x2] together with
///   Delta = det [A ; x3 x4 x5] = d1*x3 - d2*x4 + d3*x5,
/// where d_j is the 2x2 minor of A with column j deleted.
struct DeltaData {
    PolyMatrix a{2, 3, kQuinary};
    MultiPoly delta{kQuinary};
    std::array<MultiPoly, 3> minors{MultiPoly(kQuinary), MultiPoly(kQuinary), MultiPoly(kQuinary)};
    MultiPoly common_factor = MultiPoly::constant(kQuinary, 1);  // removed by saturate()
    bool coprime = false;
};

inline DeltaData build_delta(const PolyMatrix& a) {
    if (a.rows() != 2 || a.cols() != 3) fail(ErrorKind::dimension, "Delta needs a 2x3 matrix");
    if (a.nvars() != kQuinary) fail(ErrorKind::dimension, "Delta matrix entries must live in 5 variables");
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            const MultiPoly& e = a(i, j);
            for (std::size_t v = 2; v < kQuinary; ++v)
                if (e.involves(v)) fail(ErrorKind::domain, "Delta matrix entries may only involve x1 and x2");
            if (!homogeneous_degree(e)) fail(ErrorKind::domain, "Delta matrix entries must be homogeneous");
        }
    DeltaData d;
    d.a = a;
    d.minors[0] = a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1);
    d.minors[1] = a(0, 0) * a(1, 2) - a(0, 2) * a(1, 0);
    d.minors[2] = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    std::optional<int> degree;
    for (const auto& m : d.minors) {
        if (m.is_zero()) continue;
        auto md = homogeneous_degree(m);
        if (!md || (degree && *degree != *md))
            fail(ErrorKind::domain, "the 2x2 minors must share one degree so that Delta is homogeneous");
        degree = md;
    }
    if (!degree) fail(ErrorKind::degenerate_matrix, "all 2x2 minors vanish");
    const auto x = [](std::size_t i) { return MultiPoly::variable(kQuinary, i); };
    d.delta = d.minors[0] * x(2) - d.minors[1] * x(3) + d.minors[2] * x(4);
    d.coprime = gcd(std::span<const MultiPoly>(d.minors)).is_constant();
    return d;
}

/// Divides the minors and Delta by the GCD q of the minors. The kernel of A over
/// K[x1, x2] is generated by the primitive vector (d1, -d2, d3) / q, so the
/// representation algorithm applies to the result.
inline DeltaData saturate(DeltaData d) {
    MultiPoly q = gcd(std::span<const MultiPoly>(d.minors));
    if (q.is_constant()) return d;
    for (auto& m : d.minors) m = divide_or_throw(m, q, "saturate minors");
    d.delta = divide_or_throw(d.delta, q, "saturate Delta");
    d.common_factor *= q;
    d.coprime = true;
    return d;
}

/// Weighted degree profile for elements of K[x1, x2][Delta].
struct GnProfile {
    unsigned degree = 3;        // total degree of the form
    unsigned entry_degree = 1;  // degree of the entries of A (random matrices only)
    unsigned terms = 3;         // number of monomials of P(u, v, w)
    bool require_delta = true;  // P must involve w
};

/// Parses "degree=5,entry=1,terms=3,delta=1"; a bare integer is the degree.
inline GnProfile parse_profile(const std::string& text) {
    GnProfile p;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        std::string key = eq == std::string::npos ? "degree" : item.substr(0, eq);
        std::string value = eq == std::string::npos ? item : item.substr(eq + 1);
        unsigned v = 0;
        try {
            std::size_t used = 0;
            v = unsigned(std::stoul(value, &used));
            if (used != value.size()) throw std::invalid_argument(value);
        } catch (const std::exception&) {
            fail(ErrorKind::parse, "profile value '" + value + "' is not an unsigned integer");
        }
        if (key == "degree")
            p.degree = v;
        else if (key == "entry")
            p.entry_degree = v;
        else if (key == "terms")
            p.terms = v;
        else if (key == "delta")
            p.require_delta = v != 0;
        else
            fail(ErrorKind::parse, "unknown profile key '" + key + "'");
    }
    return p;
}

namespace detail {

inline MultiPoly random_binary_form(unsigned degree, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::vector<Term> terms;
    for (unsigned a = 0; a <= degree; ++a) {
        int c = coeff(rng);
        if (c != 0) terms.push_back({Monomial{a, degree - a}, Rational(c)});
    }
    if (terms.empty()) terms.push_back({Monomial{degree, 0}, Rational(1)});
    return MultiPoly::from_terms(kQuinary, std::move(terms));
}

}  // namespace detail

/// Random 2x3 matrix over K[x1, x2] with entries of one degree and coprime minors.
inline DeltaData random_delta_data(unsigned entry_degree, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        PolyMatrix a(2, 3, kQuinary);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 3; ++j) a(i, j) = detail::random_binary_form(entry_degree, rng);
        try {
            DeltaData d = build_delta(a);
            if (d.coprime) return d;
        } catch (const Error&) {
        }
    }
    fail(ErrorKind::cap_exceeded, "no matrix with coprime minors found");
}

/// Seed-deterministic element of K[x1, x2][Delta] of the requested total degree,
/// verified to have zero Hessian before it is returned. P is returned alongside in
/// the fresh variables (u, v, w).
struct GnForm {
    MultiPoly form{kQuinary};
    MultiPoly p{3};
};

inline GnForm generate_gn_form(const DeltaData& d, const GnProfile& profile, std::uint64_t seed) {
    if (!d.coprime) fail(ErrorKind::domain, "the 2x2 minors have a common factor");
    auto delta_degree = unsigned(d.delta.degree());
    if (profile.degree < 2) fail(ErrorKind::domain, "zero-Hessian forms need degree at least 2");
    if (profile.terms == 0) fail(ErrorKind::domain, "profile asks for no terms");
    if (profile.require_delta && profile.degree < delta_degree)
        fail(ErrorKind::domain, "degree " + std::to_string(profile.degree) + " is below deg Delta = " +
                                    std::to_string(delta_degree));

    std::vector<Monomial> with_w, without_w;
    for (unsigned c = 0; c * delta_degree <= profile.degree; ++c) {
        unsigned rest = profile.degree - c * delta_degree;
        for (unsigned a = 0; a <= rest; ++a) (c > 0 ? with_w : without_w).push_back(Monomial{a, rest - a, c});
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coeff(1, 5);
    std::bernoulli_distribution sign(0.5);
    auto pick = [&](std::vector<Monomial>& pool) {
        std::uniform_int_distribution<std::size_t> idx(0, pool.size() - 1);
        std::size_t i = idx(rng);
        Monomial m = pool[i];
        pool.erase(pool.begin() + std::ptrdiff_t(i));
        int c = coeff(rng);
        return Term{m, Rational(sign(rng) ? -c : c)};
    };
    std::vector<Term> terms;
    if (profile.require_delta) terms.push_back(pick(with_w));
    std::vector<Monomial> pool = with_w;
    pool.insert(pool.end(), without_w.begin(), without_w.end());
    while (terms.size() < profile.terms && !pool.empty()) terms.push_back(pick(pool));

    GnForm out;
    out.p = MultiPoly::from_terms(3, std::move(terms));
    const MultiPoly images[] = {MultiPoly::variable(kQuinary, 0), MultiPoly::variable(kQuinary, 1), d.delta};
    out.form = substitute(out.p, std::span<const MultiPoly>(images));
    if (!has_zero_hessian(out.form))
        fail(ErrorKind::certificate_invalid, "generated form does not have zero Hessian");
    return out;
}

/// True iff a_r3 df/dx3 + a_r4 df/dx4 + a_r5 df/dx5 = 0 for both rows r of A.
inline bool satisfies_delta_equations(const MultiPoly& f, const DeltaData& d) {
    for (std::size_t r = 0; r < 2; ++r) {
        MultiPoly acc(kQuinary);
        for (std::size_t j = 0; j < 3; ++j) acc += d.a(r, j) * derivative(f, 2 + j);
        if (!acc.is_zero()) return false;
    }
    return true;
}

namespace detail {

/// P with g = P(x1, x2, Delta) for g homogeneous of partial degree k in (x3, x4, x5).
inline MultiPoly represent_part(const MultiPoly& g, unsigned k, const DeltaData& d) {
    if (k == 0) {
        std::vector<Term> terms;
        for (const auto& t : g.terms()) terms.push_back({Monomial{t.mono[0], t.mono[1], 0}, t.coeff});
        return MultiPoly::from_terms(3, std::move(terms));
    }
    const std::array<MultiPoly, 3> syzygy{d.minors[0], -d.minors[1], d.minors[2]};
    std::array<MultiPoly, 3> partials{derivative(g, 2), derivative(g, 3), derivative(g, 4)};
    std::size_t j = 0;
    while (syzygy[j].is_zero()) ++j;
    auto c = divide_exact(partials[j], syzygy[j]);
    if (!c) fail(ErrorKind::not_a_member, "(f3, f4, f5) is not a polynomial multiple of (d1, -d2, d3)");
    for (std::size_t i = 0; i < 3; ++i)
        if (!(*c * syzygy[i] == partials[i]))
            fail(ErrorKind::not_a_member, "(f3, f4, f5) is not a polynomial multiple of (d1, -d2, d3)");
    MultiPoly inner = represent_part(*c, k - 1, d);
    return inner * MultiPoly::variable(3, 2) / Rational(k);
}

}  // namespace detail

/// Writes f = P(x1, x2, Delta) by induction on the partial degree in (x3, x4, x5):
/// the partials (f3, f4, f5) of each part are C * (d1, -d2, d3), and k f = C Delta.
/// The reconstruction is checked exactly before returning.
inline MultiPoly represent_in_delta_algebra(const MultiPoly& f, const DeltaData& d) {
    if (f.nvars() != kQuinary) fail(ErrorKind::dimension, "representation needs a form in 5 variables");
    if (!d.coprime) fail(ErrorKind::domain, "the 2x2 minors have a common factor");
    if (!satisfies_delta_equations(f, d))
        fail(ErrorKind::not_a_member, "f does not satisfy the two differential equations of A");
    const std::size_t fibre[] = {2, 3, 4};
    auto parts = split_by_partial_degree(f, fibre);
    MultiPoly p(3);
    for (std::size_t k = 0; k < parts.size(); ++k)
        if (!parts[k].is_zero()) p += detail::represent_part(parts[k], unsigned(k), d);
    const MultiPoly images[] = {MultiPoly::variable(kQuinary, 0), MultiPoly::variable(kQuinary, 1), d.delta};
    if (!(substitute(p, std::span<const MultiPoly>(images)) == f))
        fail(ErrorKind::not_a_member, "reconstruction P(x1, x2, Delta) differs from f");
    return p;
}

// ---------------------------------------------------------------------------
// Quinary structure pipeline
// ---------------------------------------------------------------------------

enum class QuinaryStage {
    input,
    zero_hessian,
    linear_elimination,
    corank,
    extraction,
    linear_closure,
    span_dimension,
    frame,
    coprimality,
    representation,
    done,
};

inline const char* to_string(QuinaryStage s) {
    switch (s) {
        case QuinaryStage::input:
            return "input";
        case QuinaryStage::zero_hessian:
            return "zero-hessian";
        case QuinaryStage::linear_elimination:
            return "linear-elimination";
        case QuinaryStage::corank:
            return "corank";
        case QuinaryStage::extraction:
            return "extraction";
        case QuinaryStage::linear_closure:
            return "linear-closure";
        case QuinaryStage::span_dimension:
            return "span-dimension";
        case QuinaryStage::frame:
            return "frame";
        case QuinaryStage::coprimality:
            return "coprimality";
        case QuinaryStage::representation:
            return "representation";
        case QuinaryStage::done:
            return "done";
    }
    return "?";
}

struct QuinaryReport {
    bool success = false;
    QuinaryStage stage = QuinaryStage::input;  // last stage reached; the failing one when !success
    std::string message;
    std::optional<LinearElimination> linear;  // set when routed to linear elimination
    std::optional<SvsCertificate> certificate;
    std::optional<LinearClosureReport> closure;
    QMatrix change;                           // B with x = B x'
    MultiPoly transformed{kQuinary};          // f'(x') = f(B x')
    std::vector<MultiPoly> frame_h;           // h in the new frame
    std::optional<DeltaData> delta;
    MultiPoly p{3};
};

/// Runs the quinary pipeline: linear elimination if the partials are linearly
/// dependent; otherwise reduced system, linear closure frame with h1 = h2 = 0,
/// recovery of A from dh/dx1 and dh/dx2, and representation in K[x1, x2][Delta].
inline QuinaryReport check_quinary_structure(const MultiPoly& f) {
    QuinaryReport r;
    auto stop = [&](QuinaryStage s, std::string msg) {
        r.stage = s;
        r.message = std::move(msg);
        return r;
    };
    if (f.nvars() != kQuinary) return stop(QuinaryStage::input, "form must have 5 variables");
    try {
        if (!has_zero_hessian(f)) return stop(QuinaryStage::zero_hessian, "the Hessian does not vanish");
    } catch (const Error& e) {
        return stop(QuinaryStage::input, e.what());
    }

    if (auto lin = eliminate_linear(f)) {
        r.linear = std::move(lin);
        r.success = true;
        return stop(QuinaryStage::linear_elimination,
                    "partials are linearly dependent; " + std::to_string(kQuinary - r.linear->span_dimension) +
                        " variable(s) eliminated linearly");
    }
    if (hessian_corank(f) != 1) return stop(QuinaryStage::corank, "Hessian corank is not 1");

    try {
        r.certificate = extract_reduced_svs(f);
    } catch (const Error& e) {
        return stop(QuinaryStage::extraction, e.what());
    }
    const FormSystem& h = r.certificate->h;
    r.closure = linear_closure_structure(h);
    if (!r.closure->holds) return stop(QuinaryStage::linear_closure, "h is not constant along the span of its values");
    if (r.closure->basis.size() != 3)
        return stop(QuinaryStage::span_dimension,
                    "span of the values of h has dimension " + std::to_string(r.closure->basis.size()) + ", expected 3");

    // columns 3..5 of B span the values of h, so h'_1 = h'_2 = 0 in x' = B^{-1} x
    r.change = complete_basis_last(r.closure->basis, kQuinary);
    auto b_inv = inverse(r.change);
    if (!b_inv) return stop(QuinaryStage::frame, "singular frame");
    r.transformed = change_coordinates(f, r.change);
    r.frame_h.assign(kQuinary, MultiPoly(kQuinary));
    for (std::size_t j = 0; j < kQuinary; ++j) {
        MultiPoly hj = change_coordinates(h[j], r.change);
        for (std::size_t i = 0; i < kQuinary; ++i)
            if ((*b_inv)(i, j) != 0) r.frame_h[i] += hj * (*b_inv)(i, j);
    }
    if (!r.frame_h[0].is_zero() || !r.frame_h[1].is_zero())
        return stop(QuinaryStage::frame, "h'_1 or h'_2 does not vanish in the new frame");
    for (std::size_t j = 2; j < kQuinary; ++j)
        for (std::size_t v = 2; v < kQuinary; ++v)
            if (r.frame_h[j].involves(v)) return stop(QuinaryStage::frame, "h'_3..h'_5 involve more than x1, x2");

    PolyMatrix a(2, 3, kQuinary);
    for (std::size_t row = 0; row < 2; ++row)
        for (std::size_t j = 0; j < 3; ++j) a(row, j) = derivative(r.frame_h[2 + j], row);
    try {
        r.delta = build_delta(a);
    } catch (const Error& e) {
        return stop(QuinaryStage::coprimality, e.what());
    }
    if (!r.delta->coprime) {
        r.delta = saturate(*std::move(r.delta));
        r.message = "minors of the recovered matrix share the factor " + to_string(r.delta->common_factor) +
                    "; f' = P(x1, x2, Delta/q)";
    }
    try {
        r.p = represent_in_delta_algebra(r.transformed, *r.delta);
    } catch (const Error& e) {
        return stop(QuinaryStage::representation, e.what());
    }
    r.success = true;
    r.stage = QuinaryStage::done;
    if (r.message.empty()) r.message = "f' = P(x1, x2, Delta)";
    return r;
}

}  // namespace zerohess

// Acceptance checks. Each criterion prints one PASS/FAIL line with its wall time
// against its budget; the exit status is nonzero if any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <zerohess/cli.hpp>

#include "corpus.hpp"
#include "oracles.hpp"

using namespace zerohess;
using cli::run_command;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

bool has_line(const std::string& out, const std::string& line) {
    return ("\n" + out).find("\n" + line + "\n") != std::string::npos;
}

std::string field(const std::string& out, const std::string& key) {
    std::istringstream in(out);
    for (std::string line; std::getline(in, line);)
        if (line.rfind(key + ": ", 0) == 0) return line.substr(key.size() + 2);
    return {};
}

std::string matrix_rows(const std::string& out) {
    std::istringstream in(out);
    std::string m;
    for (std::string line; std::getline(in, line);)
        if (line.rfind("a[", 0) == 0) m += (m.empty() ? "" : ";") + line.substr(6);
    return m;
}

std::vector<MultiPoly> cubic_svs() {
    auto p = [](const char* s) { return parse_polynomial(s, 5); };
    return {MultiPoly(5), MultiPoly(5), p("x2^2"), p("-2*x1*x2"), p("x1^2")};
}

Outcome canonical_cubic_check() {
    Outcome o;
    auto r = run_command({"check", corpus::kCubic});
    o.require(r.exit_code == 0 && r.out == "zero-hessian: true\n", "check did not report a zero Hessian");
    o.require(oracle::det(oracle::hessian(oracle::from(corpus::cubic()), 5)).empty(),
              "cofactor oracle disagrees");
    return o;
}

Outcome svs_golden() {
    Outcome o;
    auto r = run_command({"svs", corpus::kCubic});
    o.require(r.exit_code == 0, "svs failed: " + r.err);
    for (const char* line : {"h[1]: 0", "h[2]: 0", "h[3]: x2^2", "h[4]: -2*x1*x2", "h[5]: x1^2", "self-vanishing: true",
                             "syzygy-f: true", "syzygy-partials: true", "shift-invariance: true",
                             "self-substitution-zero: true"})
        o.require(has_line(r.out, line), std::string("missing line '") + line + "'");
    FormSystem partials(gradient(corpus::cubic()));
    MultiPoly g = find_minimal_relation(partials, default_relation_cap(corpus::cubic()));
    o.require(to_string(g, {"y", {}}) == "y3*y5 - y4^2", "relation is " + to_string(g, {"y", {}}));
    SvsCertificate rel = svs_from_relation(g, partials);
    o.require(oracle::proportional(rel.h.forms(), cubic_svs()), "relation route disagrees");
    o.require(rel.checks.all(), "relation route certificate flags");
    return o;
}

Outcome elimination_round_trip() {
    Outcome o;
    MultiPoly f = corpus::cubic();
    BirationalElimination e = eliminate_birational(f, extract_svs(f));
    o.require(e.substitution.s[e.substitution.pivot].is_zero(), "pivot image is not zero");
    o.require(e.eliminated == RationalFunction(f), "f(s, 0) differs from f");
    for (std::size_t j = 0; j < 5; ++j)
        o.require(e.inverse[j] == RationalFunction(MultiPoly::variable(5, j)), "inverse identity fails");
    auto r = run_command({"eliminate", corpus::kCubic});
    o.require(r.exit_code == 0 && has_line(r.out, "identity-verified: true"), "eliminate command failed");
    return o;
}

std::string gen_profile(std::size_t i) {
    GnProfile p = corpus::gn_profile(i);
    std::ostringstream s;
    s << "degree=" << p.degree << ",entry=" << p.entry_degree << ",terms=" << p.terms
      << ",delta=" << (p.require_delta ? 1 : 0);
    return s.str();
}

std::vector<std::string>& generated_outputs() {
    static std::vector<std::string> outs;
    return outs;
}

Outcome generator_soundness() {
    Outcome o;
    auto& outs = generated_outputs();
    outs.clear();
    for (std::size_t i = 0; i < 100; ++i) {
        auto g = run_command({"gen", "--seed", std::to_string(1000 + i), "--profile", gen_profile(i)});
        o.require(g.exit_code == 0, "gen " + std::to_string(i) + " failed: " + g.err);
        outs.push_back(g.out);
        std::string form = field(g.out, "form");
        o.require(parse_polynomial(form).degree() <= 8, "degree above 8");
        auto c = run_command({"check", form, "-n", "5"});
        o.require(c.exit_code == 0 && c.out == "zero-hessian: true\n", "generated form " + std::to_string(i));
    }
    return o;
}

Outcome representation_round_trip() {
    Outcome o;
    auto& outs = generated_outputs();
    o.require(outs.size() == 100, "generator outputs unavailable");
    for (std::size_t i = 0; i < outs.size(); ++i) {
        std::string form = field(outs[i], "form"), delta = field(outs[i], "delta");
        auto r = run_command({"represent", form, "--matrix", matrix_rows(outs[i])});
        o.require(r.exit_code == 0, "represent " + std::to_string(i) + ": " + r.err);
        // independent reconstruction: P(x1, x2, Delta) with P read back from the output
        std::string p = field(r.out, "p");
        for (auto [from, to] : {std::pair{'u', "x1"}, std::pair{'v', "x2"}, std::pair{'w', "x3"}}) {
            std::string out;
            for (char ch : p) out += ch == from ? std::string(to) : std::string(1, ch);
            p = out;
        }
        MultiPoly pp = parse_polynomial(p, 3);
        MultiPoly rebuilt = substitute(pp, {MultiPoly::variable(5, 0), MultiPoly::variable(5, 1),
                                            parse_polynomial(delta, 5)});
        o.require(rebuilt == parse_polynomial(form, 5), "reconstruction differs for form " + std::to_string(i));
        if (i % 4 == 0) {
            auto st = run_command({"structure", form, "-n", "5"});
            o.require(st.exit_code == 0, "structure pipeline fails on form " + std::to_string(i) + ": " + st.out);
        }
    }
    return o;
}

Outcome solution_rings() {
    Outcome o;
    corpus::Rng rng(6);
    for (int t = 0; t < 50; ++t) {
        std::size_t n = 2 + rng() % 5;
        std::size_t k = 1 + rng() % std::min<std::size_t>(3, n - 1);
        QMatrix a;
        do {
            a = QMatrix(k, n);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < n; ++j) a(i, j) = rng() % 3 ? corpus::small_rational(rng) : Rational(0);
        } while (rank(a) != k);
        ConstantSystem sys(a);
        std::vector<oracle::Row> rows;
        for (const auto& g : sol_generators(sys)) {
            o.require(sol_membership(g, sys), "generator is not a member");
            oracle::Row r(n);
            for (std::size_t j = 0; j < n; ++j) r[j] = g.coefficient(Monomial::unit(j));
            rows.push_back(r);
        }
        o.require(oracle::rank(rows) == n - k, "span dimension differs from n - k");
    }
    return o;
}

Outcome counterexample_regression() {
    Outcome o;
    FormSystem e = corpus::rank_bound_counterexample();
    o.require(is_self_vanishing(e), "counterexample is not self-vanishing");
    RankBoundReport rb = rank_bound_report(e);
    o.require(!rb.satisfied && rb.jacobian_rank == 3, "counterexample satisfies the bound");
    auto forms = corpus::zero_hessian_forms(100, 7);
    for (std::size_t i = 0; i < forms.size(); ++i) {
        SvsCertificate c = extract_svs(forms[i]);
        o.require(c.checks.all(), "certificate flags for corpus form " + std::to_string(i));
        o.require(rank_bound_report(c.h).satisfied, "rank bound fails for corpus form " + std::to_string(i));
    }
    return o;
}

Outcome identity_suite() {
    Outcome o;
    corpus::Rng rng(8);
    int shift = 0, equiv = 0, factor = 0, selfsub = 0;
    for (int t = 0; t < 60; ++t) {
        std::size_t n = 4 + rng() % 2;
        unsigned dh = unsigned(rng() % 3);
        FormSystem h = corpus::binary_fibre_system(n, dh, rng);
        // operator-shift identity for a random f
        MultiPoly f = corpus::random_form(n, 3 + unsigned(rng() % 2), rng);
        for (unsigned i = 0; i <= 3; ++i)
            o.require(apply_operator(h, taylor_coefficient(f, h, i)) ==
                          taylor_coefficient(f, h, i + 1) * Rational(i + 1),
                      "operator-shift identity");
        ++shift;

        // members: polynomials in x1, x2 and p4*x3 - p3*x4; non-members are random
        MultiPoly inv = h[3] * MultiPoly::variable(n, 2) - h[2] * MultiPoly::variable(n, 3);
        MultiPoly g1 = corpus::random_form(2, 2, rng);
        MultiPoly member = extend(g1, n) * (inv.is_zero() ? MultiPoly::variable(n, 0) : inv);
        for (const MultiPoly& cand : {member, f}) {
            bool sol = is_in_sol(h, cand);
            bool taylor = true;
            for (unsigned j = 1; j <= unsigned(std::max(cand.degree(), 1)); ++j)
                taylor = taylor && taylor_coefficient(cand, h, j).is_zero();
            bool shift_inv = is_shift_invariant(cand, h);
            o.require(sol == taylor && taylor == shift_inv, "three-way equivalence");
            ++equiv;
        }
        o.require(is_in_sol(h, member), "constructed member rejected");

        // factor closure: fg in sol iff both factors are
        MultiPoly a = member, b = t % 2 ? f : extend(corpus::random_form(2, 1, rng), n);
        o.require(is_in_sol(h, a * b) == (is_in_sol(h, a) && is_in_sol(h, b)), "factor closure");
        ++factor;

        o.require(h.degree() == 0 || self_substitution_vanishes(h), "self-substitution");
        ++selfsub;
    }
    for (const auto& f : corpus::zero_hessian_forms(20, 88)) {
        SvsCertificate c = extract_svs(f);
        o.require(c.h.degree() == 0 || self_substitution_vanishes(c.h), "self-substitution on extracted SVS");
        ++selfsub;
        MultiPoly g = corpus::random_form(f.nvars(), 3, rng);
        for (unsigned i = 0; i <= 3; ++i)
            o.require(apply_operator(c.h, taylor_coefficient(g, c.h, i)) ==
                          taylor_coefficient(g, c.h, i + 1) * Rational(i + 1),
                      "operator-shift identity on extracted SVS");
        ++shift;
    }
    o.require(shift >= 50 && equiv >= 50 && factor >= 50 && selfsub >= 50, "too few instances");
    return o;
}

Outcome determinant_oracle() {
    Outcome o;
    corpus::Rng rng(9);
    for (int t = 0; t < 200; ++t) {
        std::size_t size = 1 + rng() % 4, nv = 1 + rng() % 3;
        PolyMatrix m(size, size, nv);
        oracle::Matrix om(size, std::vector<oracle::Poly>(size));
        for (std::size_t i = 0; i < size; ++i)
            for (std::size_t j = 0; j < size; ++j) {
                if (rng() % 4) m(i, j) = corpus::random_form(nv, unsigned(rng() % 3), rng, 0.6);
                om[i][j] = oracle::from(m(i, j));
            }
        o.require(determinant(m) == oracle::to(oracle::det(om), nv), "determinant differs from cofactor expansion");
    }
    return o;
}

Outcome small_n_classification() {
    Outcome o;
    int binary_zero = 0, ternary_zero = 0;
    for (const auto& f : corpus::binary_forms(60, 10)) {
        if (!has_zero_hessian(f)) continue;
        ++binary_zero;
        auto lin = eliminate_linear(f);
        o.require(lin && lin->span_dimension == 1, "binary zero-Hessian form not a power of a linear form");
    }
    for (const auto& f : corpus::ternary_forms(60, 11)) {
        if (!has_zero_hessian(f)) continue;
        ++ternary_zero;
        SvsCertificate c = extract_svs(f);
        o.require(c.h.degree() == 0 && c.reduced, "ternary reduced SVS is not constant");
    }
    o.require(binary_zero >= 20 && ternary_zero >= 20, "corpus has too few zero-Hessian members");
    return o;
}

Outcome parser_round_trips() {
    Outcome o;
    corpus::Rng rng(12);
    for (int t = 0; t < 500; ++t) {
        std::size_t n = 1 + rng() % kMaxVars;
        std::vector<Term> terms;
        for (int k = 0; k < int(rng() % 8); ++k) {
            std::vector<unsigned> e(n);
            for (auto& x : e) x = rng() % 3 == 0 ? unsigned(rng() % 7) : 0;
            Rational c(Integer(std::to_string(rng() % 100000)) * (rng() % 2 ? 1 : -1) + 1, Integer(1 + rng() % 97));
            c.canonicalize();
            terms.push_back({Monomial(std::span<const unsigned>(e)), c});
        }
        MultiPoly p = MultiPoly::from_terms(n, std::move(terms));
        std::string s = to_string(p);
        MultiPoly q = parse_polynomial(s, n);
        o.require(q == p && to_string(q) == s, "round trip failed for " + s);
    }
    return o;
}

struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const Criterion criteria[] = {
        {1, "canonical cubic check", 1, canonical_cubic_check},
        {2, "SVS golden test and relation route", 2, svs_golden},
        {3, "elimination round trip", 2, elimination_round_trip},
        {4, "generator soundness (100 forms)", 120, generator_soundness},
        {5, "representation round trip and structure", 120, representation_round_trip},
        {6, "minor-generated solution rings (50 systems)", 30, solution_rings},
        {7, "rank-bound counterexample and corpus bound", 60, counterexample_regression},
        {8, "operator identity suite", 120, identity_suite},
        {9, "Bareiss vs cofactor oracle (200 matrices)", 30, determinant_oracle},
        {10, "binary and ternary classification", 30, small_n_classification},
        {11, "parser round trips (500)", 10, parser_round_trips},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (out.ok && secs > c.budget_s) out = {false, "over time budget"};
        if (!out.ok) ++failures;
        std::printf("%s  %2d  %-46s %8.3f s / %g s%s%s\n", out.ok ? "PASS" : "FAIL", c.id, c.name, secs, c.budget_s,
                    out.ok ? "" : "  ", out.detail.c_str());
    }
    std::printf("%d of %zu criteria passed\n", int(std::size(criteria)) - failures, std::size(criteria));
    return failures == 0 ? 0 : 1;
}

#pragma once

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gn_forms.hpp"
#include "linear_sol.hpp"
#include "svs.hpp"
#include "text.hpp"

namespace zerohess::cli {

enum ExitCode : int { kOk = 0, kFalse = 1, kUsage = 2, kCap = 3, kInvalid = 4 };

struct CommandResult {
    int exit_code = kOk;
    std::string out;
    std::string err;
};

inline int exit_code_for(ErrorKind k) {
    switch (k) {
        case ErrorKind::not_a_member:
            return kFalse;
        case ErrorKind::cap_exceeded:
        case ErrorKind::unsupported_corank:
            return kCap;
        case ErrorKind::certificate_invalid:
            return kInvalid;
        default:
            return kUsage;
    }
}

inline const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::dimension:
            return "dimension";
        case ErrorKind::domain:
            return "domain";
        case ErrorKind::undefined_input:
            return "undefined-input";
        case ErrorKind::parse:
            return "parse";
        case ErrorKind::cap_exceeded:
            return "cap-exceeded";
        case ErrorKind::certificate_invalid:
            return "certificate-invalid";
        case ErrorKind::not_a_member:
            return "not-a-member";
        case ErrorKind::unsupported_corank:
            return "unsupported-corank";
        case ErrorKind::invalid_relation:
            return "invalid-relation";
        case ErrorKind::degenerate_matrix:
            return "degenerate-matrix";
    }
    return "error";
}

/// Ordered key/value report rendered either as "key: value" lines or as one JSON
/// object. Integers go to JSON as decimal strings.
class Report {
   public:
    using json = nlohmann::ordered_json;

    void text(const std::string& key, const std::string& value) { add(key, value, value); }
    void flag(const std::string& key, bool v) { add(key, v ? "true" : "false", v); }
    void count(const std::string& key, std::size_t v) { add(key, std::to_string(v), std::to_string(v)); }
    void rational(const std::string& key, const Rational& q) { add(key, q.get_str(), json(to_json(q))); }
    void poly(const std::string& key, const MultiPoly& p, const VariableNames& names = {}) {
        add(key, to_string(p, names), json(to_json(p)));
    }
    void fraction(const std::string& key, const RationalFunction& r) { add(key, to_string(r), json(to_json(r))); }
    void polys(const std::string& key, const std::vector<MultiPoly>& ps, const VariableNames& names = {}) {
        json arr = json::array();
        for (std::size_t i = 0; i < ps.size(); ++i) {
            lines_.push_back(key + "[" + std::to_string(i + 1) + "]: " + to_string(ps[i], names));
            arr.push_back(json(to_json(ps[i])));
        }
        doc_[key] = std::move(arr);
    }
    void fractions(const std::string& key, const std::vector<RationalFunction>& rs) {
        json arr = json::array();
        for (std::size_t i = 0; i < rs.size(); ++i) {
            lines_.push_back(key + "[" + std::to_string(i + 1) + "]: " + to_string(rs[i]));
            arr.push_back(json(to_json(rs[i])));
        }
        doc_[key] = std::move(arr);
    }
    void matrix(const std::string& key, const QMatrix& m) {
        json rows = json::array();
        for (std::size_t i = 0; i < m.rows(); ++i) {
            std::string line;
            json row = json::array();
            for (std::size_t j = 0; j < m.cols(); ++j) {
                line += (j ? ", " : "") + m(i, j).get_str();
                row.push_back(json(to_json(m(i, j))));
            }
            lines_.push_back(key + "[" + std::to_string(i + 1) + "]: " + line);
            rows.push_back(std::move(row));
        }
        doc_[key] = std::move(rows);
    }
    void matrix(const std::string& key, const PolyMatrix& m) {
        json rows = json::array();
        for (std::size_t i = 0; i < m.rows(); ++i) {
            std::string line;
            json row = json::array();
            for (std::size_t j = 0; j < m.cols(); ++j) {
                line += (j ? ", " : "") + to_string(m(i, j));
                row.push_back(json(to_json(m(i, j))));
            }
            lines_.push_back(key + "[" + std::to_string(i + 1) + "]: " + line);
            rows.push_back(std::move(row));
        }
        doc_[key] = std::move(rows);
    }

    std::string render(bool as_json) const {
        if (as_json) return doc_.dump(2) + "\n";
        std::string s;
        for (const auto& l : lines_) s += l + "\n";
        return s;
    }

   private:
    void add(const std::string& key, const std::string& line, json value) {
        lines_.push_back(key + ": " + line);
        doc_[key] = std::move(value);
    }

    std::vector<std::string> lines_;
    json doc_ = json::object();
};

namespace detail {

/// Parses several expressions into one ring: -n if given, else the largest index.
inline std::vector<MultiPoly> parse_all(const std::vector<std::string>& texts, std::optional<std::size_t> nvars) {
    std::size_t n = nvars.value_or(0);
    if (!nvars)
        for (const auto& t : texts) n = std::max(n, parse_polynomial(t).nvars());
    std::vector<MultiPoly> out;
    for (const auto& t : texts) out.push_back(parse_polynomial(t, n));
    return out;
}

inline std::vector<std::vector<std::string>> split_matrix(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::stringstream rs(text);
    std::string row;
    while (std::getline(rs, row, ';')) {
        std::vector<std::string> cells;
        std::stringstream cs(row);
        std::string cell;
        while (std::getline(cs, cell, ',')) cells.push_back(cell);
        if (!cells.empty()) rows.push_back(std::move(cells));
    }
    if (rows.empty()) fail(ErrorKind::parse, "empty matrix");
    for (const auto& r : rows)
        if (r.size() != rows[0].size()) fail(ErrorKind::dimension, "matrix rows have different lengths");
    return rows;
}

inline QMatrix parse_rational_matrix(const std::string& text) {
    auto cells = split_matrix(text);
    QMatrix m(cells.size(), cells[0].size());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            MultiPoly e = parse_polynomial(cells[i][j], kMaxVars);
            if (!e.is_constant()) fail(ErrorKind::parse, "matrix entry '" + cells[i][j] + "' is not a rational number");
            m(i, j) = e.constant_value();
        }
    return m;
}

inline PolyMatrix parse_poly_matrix(const std::string& text, std::size_t nvars) {
    auto cells = split_matrix(text);
    PolyMatrix m(cells.size(), cells[0].size(), nvars);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = parse_polynomial(cells[i][j], nvars);
    return m;
}

/// A leading space keeps an expression such as "-x1^2" from being read as a flag;
/// the expression grammar ignores whitespace.
inline std::string protect_expression(const std::string& arg) {
    if (arg.size() >= 2 && arg[0] == '-' &&
        (arg[1] == 'x' || arg[1] == '(' || std::isdigit(static_cast<unsigned char>(arg[1]))))
        return " " + arg;
    return arg;
}

inline void add_certificate(Report& r, const SvsCertificate& c) {
    r.text("route", to_string(c.route));
    r.flag("reduced", c.reduced);
    r.polys("h", c.h.forms());
    r.flag("self-vanishing", c.checks.self_vanishing);
    r.flag("syzygy-f", c.checks.syzygy_f);
    r.flag("syzygy-partials", c.checks.syzygy_partials);
    r.flag("shift-invariance", c.checks.shift_invariance);
    r.flag("self-substitution-zero", c.checks.self_substitution_zero);
}

inline const VariableNames kY{"y", {}};
inline const VariableNames kUvw{"x", {"u", "v", "w"}};

}  // namespace detail

struct Options {
    std::optional<std::size_t> nvars;
    bool json = false;
    std::optional<unsigned> max_degree;
    std::vector<std::string> exprs;
    std::string matrix;
    std::uint64_t seed = 0;
    std::string profile = "3";
};

inline int cmd_check(const Options& o, Report& r) {
    MultiPoly f = detail::parse_all(o.exprs, o.nvars)[0];
    bool zero = has_zero_hessian(f);
    r.flag("zero-hessian", zero);
    return zero ? kOk : kFalse;
}

inline int cmd_hessian(const Options& o, Report& r) {
    MultiPoly f = detail::parse_all(o.exprs, o.nvars)[0];
    PolyMatrix h = hessian_matrix(f);
    r.poly("determinant", determinant(h));
    r.count("rank", rank(h));
    return kOk;
}

inline int cmd_svs(const Options& o, Report& r) {
    MultiPoly f = detail::parse_all(o.exprs, o.nvars)[0];
    if (!has_zero_hessian(f)) {
        r.flag("zero-hessian", false);
        return kFalse;
    }
    r.flag("zero-hessian", true);
    auto lin = eliminate_linear(f);
    r.flag("linear-dependence", lin.has_value());
    if (lin) {
        r.count("span-dimension", lin->span_dimension);
        r.matrix("transform", lin->transform);
        r.poly("eliminated", lin->form);
    }
    detail::add_certificate(r, extract_svs(f, o.max_degree));
    return kOk;
}

inline int cmd_verify_svs(const Options& o, Report& r) {
    auto ps = detail::parse_all(o.exprs, o.nvars.value_or(o.exprs.size() - 1));
    if (ps.size() != ps[0].nvars() + 1)
        fail(ErrorKind::dimension, "verify-svs expects the form followed by " + std::to_string(ps[0].nvars()) +
                                       " components h1..hn");
    MultiPoly f = ps[0];
    require_hessian_domain(f);
    SvsCertificate c{FormSystem(std::vector<MultiPoly>(ps.begin() + 1, ps.end())), false, SvsRoute::user_supplied, {}};
    detail::add_certificate(r, verify_certificate(f, std::move(c)));
    return kOk;
}

inline int cmd_eliminate(const Options& o, Report& r) {
    MultiPoly f = detail::parse_all(o.exprs, o.nvars)[0];
    if (!has_zero_hessian(f)) {
        r.flag("zero-hessian", false);
        return kFalse;
    }
    SvsCertificate c = extract_svs(f, o.max_degree);
    BirationalElimination e = eliminate_birational(f, c);
    r.polys("h", c.h.forms());
    r.count("pivot", e.substitution.pivot + 1);
    r.fractions("s", e.substitution.s);
    r.fraction("f(s)", e.eliminated);
    r.text("inverse", "x_j = s_j + c_j*x" + std::to_string(e.substitution.pivot + 1));
    r.fractions("c", e.ratios);
    r.flag("identity-verified", true);
    return kOk;
}

inline int cmd_relation(const Options& o, Report& r) {
    MultiPoly f = detail::parse_all(o.exprs, o.nvars)[0];
    require_hessian_domain(f);
    FormSystem partials(gradient(f));
    MultiPoly g = find_minimal_relation(partials, o.max_degree.value_or(default_relation_cap(f)));
    r.poly("relation", g, detail::kY);
    r.count("degree", std::size_t(g.degree()));
    return kOk;
}

inline int cmd_solgen(const Options& o, Report& r) {
    ConstantSystem sys(detail::parse_rational_matrix(o.matrix));
    auto gens = sol_generators(sys);
    r.polys("generator", gens);
    r.count("span-dimension", rank(coefficient_matrix(gens)));
    return kOk;
}

inline int cmd_solcheck(const Options& o, Report& r) {
    ConstantSystem sys(detail::parse_rational_matrix(o.matrix));
    MultiPoly f = detail::parse_all(o.exprs, o.nvars.value_or(sys.nvars()))[0];
    bool member = sol_membership(f, sys);
    r.flag("member", member);
    return member ? kOk : kFalse;
}

inline void add_delta(Report& r, const DeltaData& d) {
    r.matrix("a", d.a);
    r.poly("delta", d.delta);
    r.polys("minors", {d.minors.begin(), d.minors.end()});
    if (!d.common_factor.is_constant()) r.poly("common-factor", d.common_factor);
}

inline int cmd_gen(const Options& o, Report& r) {
    GnProfile profile = parse_profile(o.profile);
    DeltaData d = random_delta_data(profile.entry_degree, o.seed);
    GnForm g = generate_gn_form(d, profile, o.seed);
    r.text("seed", std::to_string(o.seed));
    r.poly("form", g.form);
    add_delta(r, d);
    r.poly("p", g.p, detail::kUvw);
    r.flag("zero-hessian", true);
    return kOk;
}

inline int cmd_represent(const Options& o, Report& r) {
    MultiPoly f = detail::parse_all(o.exprs, kQuinary)[0];
    PolyMatrix a = detail::parse_poly_matrix(o.matrix, kQuinary);
    DeltaData d = saturate(build_delta(a));
    MultiPoly p = represent_in_delta_algebra(f, d);
    add_delta(r, d);
    r.poly("p", p, detail::kUvw);
    r.flag("reconstruction-verified", true);
    return kOk;
}

inline int cmd_rank_bound(const Options& o, Report& r) {
    FormSystem h(detail::parse_all(o.exprs, o.nvars.value_or(o.exprs.size())));
    if (h.size() != h.nvars()) fail(ErrorKind::dimension, "rank-bound expects n components in n variables");
    bool sv = is_self_vanishing(h);
    r.flag("self-vanishing", sv);
    if (!sv) return kFalse;
    RankBoundReport b = rank_bound_report(h);
    r.count("jacobian-rank", b.jacobian_rank);
    r.rational("bound", b.bound);
    r.flag("satisfied", b.satisfied);
    return b.satisfied ? kOk : kFalse;
}

inline int cmd_structure(const Options& o, Report& r) {
    MultiPoly f = detail::parse_all(o.exprs, o.nvars)[0];
    QuinaryReport q = check_quinary_structure(f);
    r.flag("success", q.success);
    r.text("stage", to_string(q.stage));
    r.text("message", q.message);
    if (q.linear) {
        r.count("span-dimension", q.linear->span_dimension);
        r.matrix("transform", q.linear->transform);
        r.poly("eliminated", q.linear->form);
    }
    if (q.success && !q.linear) {
        r.polys("h", q.certificate->h.forms());
        r.matrix("change", q.change);
        r.poly("transformed", q.transformed);
        add_delta(r, *q.delta);
        r.poly("p", q.p, detail::kUvw);
    }
    if (q.success) return kOk;
    return q.stage == QuinaryStage::input ? kUsage : kFalse;
}

/// Runs one command; `args` excludes the program name.
inline CommandResult run_command(const std::vector<std::string>& args) {
    CLI::App app{"Exact tools for forms with vanishing Hessian", "zhess"};
    app.fallthrough();
    app.require_subcommand(1);
    Options o;
    app.add_option("-n,--nvars", o.nvars, "number of variables (default: largest index used)")->check(
        CLI::Range(1, int(kMaxVars)));
    app.add_flag("--json", o.json, "print one JSON document");
    app.add_option("--max-degree", o.max_degree, "degree cap for the relation search");

    using Handler = int (*)(const Options&, Report&);
    struct Command {
        const char* name;
        const char* help;
        Handler run;
        int min_exprs;  // -1: any number >= 1
        int max_exprs;
        bool matrix;
    };
    const Command commands[] = {
        {"check", "decide whether the Hessian vanishes", cmd_check, 1, 1, false},
        {"hessian", "print the Hessian determinant and rank", cmd_hessian, 1, 1, false},
        {"svs", "extract and verify a reduced self-vanishing system", cmd_svs, 1, 1, false},
        {"verify-svs", "verify <f> <h1> ... <hn> as a certificate", cmd_verify_svs, 2, -1, false},
        {"eliminate", "eliminate a variable birationally", cmd_eliminate, 1, 1, false},
        {"relation", "least-degree relation among the partials", cmd_relation, 1, 1, false},
        {"solgen", "generators of the solution ring of a constant system", cmd_solgen, 0, 0, true},
        {"solcheck", "membership in the solution ring of a constant system", cmd_solcheck, 1, 1, true},
        {"gen", "generate a quinary form in K[x1, x2][Delta]", cmd_gen, 0, 0, false},
        {"represent", "write f as P(x1, x2, Delta) for a 2x3 matrix", cmd_represent, 1, 1, true},
        {"rank-bound", "Jacobian rank of a self-vanishing map against n/2", cmd_rank_bound, 1, -1, false},
        {"structure", "run the quinary structure pipeline", cmd_structure, 1, 1, false},
    };
    std::vector<std::pair<CLI::App*, const Command*>> subs;
    for (const auto& s : commands) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        if (s.max_exprs != 0) {
            auto* opt = sub->add_option("exprs", o.exprs, "polynomial expressions")->required();
            if (s.max_exprs > 0) opt->expected(s.min_exprs, s.max_exprs);
        }
        if (s.matrix) sub->add_option("--matrix", o.matrix, "rows separated by ';', entries by ','")->required();
        if (std::string(s.name) == "gen") {
            sub->add_option("--seed", o.seed, "random seed");
            sub->add_option("--profile", o.profile, "degree=D,entry=E,terms=T,delta=0|1 or just D");
        }
        subs.emplace_back(sub, &s);
    }

    CommandResult res;
    std::ostringstream out, err;
    std::vector<std::string> reversed;
    for (const auto& a : args) reversed.push_back(detail::protect_expression(a));
    std::reverse(reversed.begin(), reversed.end());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        res.exit_code = code == 0 ? kOk : kUsage;
        res.out = out.str();
        res.err = err.str();
        return res;
    }

    const Command* chosen = nullptr;
    std::string name;
    for (auto& [sub, command] : subs)
        if (sub->parsed()) {
            chosen = command;
            name = command->name;
        }
    Report report;
    try {
        if (chosen->min_exprs >= 0 && int(o.exprs.size()) < chosen->min_exprs)
            fail(ErrorKind::parse, name + " needs at least " + std::to_string(chosen->min_exprs) + " expression(s)");
        res.exit_code = chosen->run(o, report);
        res.out = report.render(o.json);
    } catch (const Error& e) {
        res.exit_code = exit_code_for(e.kind());
        if (o.json) {
            nlohmann::ordered_json doc{{"error", to_string(e.kind())}, {"message", e.what()}};
            res.out = doc.dump(2) + "\n";
        }
        res.err = "error: " + std::string(e.what()) + "\n";
    }
    return res;
}

}  // namespace zerohess::cli

#pragma once

#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hessian.hpp"
#include "rational_function.hpp"

namespace zerohess {

// Grammar (whitespace insignificant, no implicit multiplication):
//   poly   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor (('*' factor) | ('/' rational))*
//   factor := rational | var ['^' uint] | '(' poly ')' ['^' uint]
//   var    := 'x' uint            (1-indexed)

namespace detail {

class Parser {
   public:
    explicit Parser(std::string_view text) : text_(text) {}

    MultiPoly parse() {
        MultiPoly p = poly();
        skip_ws();
        if (pos_ != text_.size()) error("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return p;
    }

    std::size_t max_index() const { return max_index_; }

   private:
    static constexpr std::size_t kRing = kMaxVars;

    [[noreturn]] void error(const std::string& what) const {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
            if (text_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(what, line, col);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Integer uint_literal() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) error("expected an unsigned integer");
        return Integer(std::string(text_.substr(start, pos_ - start)));
    }

    unsigned small_uint(const char* what) {
        std::size_t at = pos_;
        Integer v = uint_literal();
        if (v > 4096) {
            pos_ = at;
            error(std::string(what) + " is too large");
        }
        return unsigned(v.get_ui());
    }

    MultiPoly poly() {
        bool negate = false;
        if (accept('-'))
            negate = true;
        else
            accept('+');
        MultiPoly acc = term();
        if (negate) acc = -acc;
        while (true) {
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                break;
        }
        return acc;
    }

    MultiPoly term() {
        MultiPoly acc = factor();
        while (true) {
            if (accept('*')) {
                acc *= factor();
            } else if (accept('/')) {
                skip_ws();
                std::size_t at = pos_;
                Integer d = uint_literal();
                if (d == 0) {
                    pos_ = at;
                    error("division by zero");
                }
                acc /= Rational(d);
            } else {
                break;
            }
        }
        return acc;
    }

    MultiPoly factor() {
        skip_ws();
        if (pos_ >= text_.size()) error("unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            MultiPoly inner = poly();
            if (!accept(')')) error("expected ')'");
            if (accept('^')) return zerohess::pow(inner, small_uint("exponent"));
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return MultiPoly::constant(kRing, Rational(uint_literal()));
        if (c == 'x') {
            ++pos_;
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                error("expected a variable index after 'x'");
            std::size_t at = pos_;
            Integer idx = uint_literal();
            if (idx == 0) {
                pos_ = at;
                error("variable indices start at 1");
            }
            if (idx > Integer(kRing)) {
                pos_ = at;
                error("at most 16 variables are supported");
            }
            std::size_t i = idx.get_ui();
            max_index_ = std::max(max_index_, i);
            unsigned e = 1;
            if (accept('^')) e = small_uint("exponent");
            return MultiPoly::monomial(kRing, Monomial::unit(i - 1, e));
        }
        error("unexpected character '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t max_index_ = 0;
};

}  // namespace detail

/// Parses a polynomial. The ring size is `nvars` when given, otherwise the largest
/// variable index that occurs.
inline MultiPoly parse_polynomial(std::string_view text, std::optional<std::size_t> nvars = std::nullopt) {
    detail::Parser parser(text);
    MultiPoly wide = parser.parse();
    std::size_t n = nvars.value_or(parser.max_index());
    if (n < parser.max_index())
        fail(ErrorKind::dimension, "expression uses x" + std::to_string(parser.max_index()) + " but the ring has " +
                                       std::to_string(n) + " variables");
    return restrict_to(wide, n);
}

/// Variable naming for printing; names[i] if given, else prefix + (i+1).
struct VariableNames {
    std::string prefix = "x";
    std::vector<std::string> names;

    std::string operator()(std::size_t i) const { return i < names.size() ? names[i] : prefix + std::to_string(i + 1); }
};

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Canonical text: graded-lex descending, explicit '*', '^' powers, unit
/// coefficients suppressed, sign folded into the separators.
inline std::string to_string(const MultiPoly& p, const VariableNames& names = {}) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : p.terms()) {
        bool negative = t.coeff < 0;
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        first = false;
        Rational a = abs(t.coeff);
        std::string mono;
        for (std::size_t i = 0; i < p.nvars(); ++i) {
            unsigned e = t.mono[i];
            if (e == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += names(i);
            if (e > 1) mono += "^" + std::to_string(e);
        }
        if (mono.empty())
            out += a.get_str();
        else if (a == 1)
            out += mono;
        else
            out += a.get_str() + "*" + mono;
    }
    return out;
}

inline std::string to_string(const RationalFunction& r, const VariableNames& names = {}) {
    if (r.is_polynomial()) return to_string(r.num() / r.den().constant_value(), names);
    return "(" + to_string(r.num(), names) + ")/(" + to_string(r.den(), names) + ")";
}

inline nlohmann::json to_json(const Rational& q) { return nlohmann::json::array({q.get_num().get_str(), q.get_den().get_str()}); }

/// {"nvars": n, "terms": [{"exponents": [...], "coefficient": ["num", "den"]}, ...]}
inline nlohmann::json to_json(const MultiPoly& p) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : p.terms()) {
        std::vector<unsigned> exps(p.nvars());
        for (std::size_t i = 0; i < p.nvars(); ++i) exps[i] = t.mono[i];
        terms.push_back({{"exponents", exps}, {"coefficient", to_json(t.coeff)}});
    }
    return {{"nvars", p.nvars()}, {"terms", terms}};
}

inline nlohmann::json to_json(const RationalFunction& r) { return {{"num", to_json(r.num())}, {"den", to_json(r.den())}}; }

inline MultiPoly poly_from_json(const nlohmann::json& j) {
    std::size_t n = j.at("nvars").get<std::size_t>();
    std::vector<Term> terms;
    for (const auto& t : j.at("terms")) {
        auto exps = t.at("exponents").get<std::vector<unsigned>>();
        if (exps.size() != n) fail(ErrorKind::dimension, "exponent vector length differs from nvars");
        const auto& c = t.at("coefficient");
        Integer den(c.at(1).get<std::string>());
        if (den == 0) fail(ErrorKind::domain, "zero denominator in coefficient");
        Rational q(Integer(c.at(0).get<std::string>()), den);
        q.canonicalize();
        terms.push_back({Monomial(std::span<const unsigned>(exps)), q});
    }
    return MultiPoly::from_terms(n, std::move(terms));
}

}  // namespace zerohess

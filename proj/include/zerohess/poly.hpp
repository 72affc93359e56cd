#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <cstring>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "error.hpp"

namespace zerohess {

using Rational = mpq_class;
using Integer = mpz_class;

inline constexpr std::size_t kMaxVars = 16;
inline constexpr unsigned kMaxExponent = 255;

/// Exponent vector with a fixed capacity of kMaxVars variables.
/// Ordering is graded lexicographic with x1 > x2 > ... > xn.
class Monomial {
   public:
    Monomial() = default;

    Monomial(std::initializer_list<unsigned> exps) {
        if (exps.size() > kMaxVars) fail(ErrorKind::dimension, "too many variables in monomial");
        std::size_t i = 0;
        for (unsigned e : exps) set(i++, e);
    }

    explicit Monomial(std::span<const unsigned> exps) {
        if (exps.size() > kMaxVars) fail(ErrorKind::dimension, "too many variables in monomial");
        for (std::size_t i = 0; i < exps.size(); ++i) set(i, exps[i]);
    }

    static Monomial unit(std::size_t var, unsigned power = 1) {
        Monomial m;
        m.set(var, power);
        return m;
    }

    unsigned operator[](std::size_t i) const { return exps_[i]; }
    unsigned degree() const { return degree_; }
    bool is_one() const { return degree_ == 0; }

    void set(std::size_t i, unsigned e) {
        if (i >= kMaxVars) fail(ErrorKind::dimension, "variable index exceeds capacity");
        if (e > kMaxExponent) fail(ErrorKind::domain, "exponent exceeds 255");
        degree_ = static_cast<std::uint16_t>(degree_ - exps_[i] + e);
        exps_[i] = static_cast<std::uint8_t>(e);
    }

    /// Highest variable index with nonzero exponent plus one (0 for the unit monomial).
    std::size_t support_end() const {
        for (std::size_t i = kMaxVars; i > 0; --i)
            if (exps_[i - 1] != 0) return i;
        return 0;
    }

    bool divides(const Monomial& other) const {
        for (std::size_t i = 0; i < kMaxVars; ++i)
            if (exps_[i] > other.exps_[i]) return false;
        return true;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial r;
        for (std::size_t i = 0; i < kMaxVars; ++i) {
            unsigned e = unsigned(a.exps_[i]) + b.exps_[i];
            if (e > kMaxExponent) fail(ErrorKind::domain, "exponent exceeds 255");
            r.exps_[i] = static_cast<std::uint8_t>(e);
        }
        r.degree_ = static_cast<std::uint16_t>(a.degree_ + b.degree_);
        return r;
    }

    /// Quotient; the caller guarantees b divides a.
    friend Monomial operator/(const Monomial& a, const Monomial& b) {
        Monomial r;
        for (std::size_t i = 0; i < kMaxVars; ++i) r.exps_[i] = static_cast<std::uint8_t>(a.exps_[i] - b.exps_[i]);
        r.degree_ = static_cast<std::uint16_t>(a.degree_ - b.degree_);
        return r;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.degree_ == b.degree_ && a.exps_ == b.exps_;
    }

    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
        if (a.degree_ != b.degree_) return a.degree_ <=> b.degree_;
        int c = std::memcmp(a.exps_.data(), b.exps_.data(), kMaxVars);
        return c <=> 0;
    }

    std::size_t hash() const {
        std::uint64_t lo, hi;
        std::memcpy(&lo, exps_.data(), 8);
        std::memcpy(&hi, exps_.data() + 8, 8);
        return std::hash<std::uint64_t>{}(lo * 0x9E3779B97F4A7C15ULL ^ (hi + 0x7F4A7C15ULL));
    }

   private:
    std::array<std::uint8_t, kMaxVars> exps_{};
    std::uint16_t degree_ = 0;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

struct Term {
    Monomial mono;
    Rational coeff;
};

/// Sentinel for deg(0).
inline constexpr int kMinusInfinity = -2147483647 - 1;

/// Sparse multivariate polynomial over Q in a fixed number of variables.
/// Terms are stored in descending graded-lex order with nonzero coefficients.
class MultiPoly {
   public:
    explicit MultiPoly(std::size_t nvars = 0) : nvars_(nvars) { check_nvars(nvars); }

    MultiPoly(std::size_t nvars, const Rational& c) : nvars_(nvars) {
        check_nvars(nvars);
        if (c != 0) terms_.push_back({Monomial{}, c});
    }

    static MultiPoly constant(std::size_t nvars, const Rational& c) { return MultiPoly(nvars, c); }

    /// The variable x_{index+1}.
    static MultiPoly variable(std::size_t nvars, std::size_t index) {
        if (index >= nvars) fail(ErrorKind::dimension, "variable index out of range");
        MultiPoly p(nvars);
        p.terms_.push_back({Monomial::unit(index), Rational(1)});
        return p;
    }

    static MultiPoly monomial(std::size_t nvars, const Monomial& m, const Rational& c = 1) {
        if (m.support_end() > nvars) fail(ErrorKind::dimension, "monomial uses more variables than the ring");
        MultiPoly p(nvars);
        if (c != 0) p.terms_.push_back({m, c});
        return p;
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
    static MultiPoly from_terms(std::size_t nvars, std::vector<Term> terms) {
        MultiPoly p(nvars);
        std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.mono > b.mono; });
        for (auto& t : terms) {
            if (t.mono.support_end() > nvars) fail(ErrorKind::dimension, "monomial uses more variables than the ring");
            if (!p.terms_.empty() && p.terms_.back().mono == t.mono)
                p.terms_.back().coeff += t.coeff;
            else
                p.terms_.push_back(std::move(t));
            if (p.terms_.back().coeff == 0) p.terms_.pop_back();
        }
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

    Rational constant_value() const {
        if (terms_.empty()) return 0;
        if (!is_constant()) fail(ErrorKind::domain, "polynomial is not constant");
        return terms_[0].coeff;
    }

    /// Leading term in graded-lex order; undefined on zero.
    const Term& leading() const { return terms_.front(); }

    /// Total degree, or kMinusInfinity for the zero polynomial.
    int degree() const { return terms_.empty() ? kMinusInfinity : int(terms_.front().mono.degree()); }

    int degree_in(std::size_t var) const {
        if (terms_.empty()) return kMinusInfinity;
        int d = 0;
        for (const auto& t : terms_) d = std::max(d, int(t.mono[var]));
        return d;
    }

    bool involves(std::size_t var) const {
        for (const auto& t : terms_)
            if (t.mono[var] != 0) return true;
        return false;
    }

    Rational coefficient(const Monomial& m) const {
        for (const auto& t : terms_)
            if (t.mono == m) return t.coeff;
        return 0;
    }

    MultiPoly operator-() const {
        MultiPoly r = *this;
        for (auto& t : r.terms_) t.coeff = -t.coeff;
        return r;
    }

    MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
    MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
    MultiPoly& operator*=(const Rational& c) {
        if (c == 0) {
            terms_.clear();
        } else {
            for (auto& t : terms_) t.coeff *= c;
        }
        return *this;
    }
    MultiPoly& operator/=(const Rational& c) {
        if (c == 0) fail(ErrorKind::domain, "division by zero");
        for (auto& t : terms_) t.coeff /= c;
        return *this;
    }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) { return merge(a, b, false); }
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return merge(a, b, true); }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        same_ring(a, b);
        MultiPoly r(a.nvars_);
        if (a.is_zero() || b.is_zero()) return r;
        if (a.size() == 1 || b.size() == 1) {
            const MultiPoly& single = a.size() == 1 ? a : b;
            const MultiPoly& other = a.size() == 1 ? b : a;
            const Term& s = single.terms_[0];
            r.terms_.reserve(other.size());
            for (const auto& t : other.terms_) r.terms_.push_back({t.mono * s.mono, t.coeff * s.coeff});
            return r;
        }
        std::unordered_map<Monomial, Rational, MonomialHash> acc;
        acc.reserve(a.size() * b.size());
        Rational prod;
        for (const auto& ta : a.terms_) {
            for (const auto& tb : b.terms_) {
                mpq_mul(prod.get_mpq_t(), ta.coeff.get_mpq_t(), tb.coeff.get_mpq_t());
                auto [it, inserted] = acc.try_emplace(ta.mono * tb.mono, prod);
                if (!inserted) it->second += prod;
            }
        }
        r.terms_.reserve(acc.size());
        for (auto& [m, c] : acc)
            if (c != 0) r.terms_.push_back({m, std::move(c)});
        std::sort(r.terms_.begin(), r.terms_.end(), [](const Term& x, const Term& y) { return x.mono > y.mono; });
        return r;
    }

    friend MultiPoly operator*(const MultiPoly& a, const Rational& c) {
        MultiPoly r = a;
        r *= c;
        return r;
    }
    friend MultiPoly operator*(const Rational& c, const MultiPoly& a) { return a * c; }
    friend MultiPoly operator/(const MultiPoly& a, const Rational& c) {
        MultiPoly r = a;
        r /= c;
        return r;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i)
            if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
        return true;
    }

    /// Multiplies every monomial by m.
    MultiPoly shifted(const Monomial& m) const {
        MultiPoly r = *this;
        for (auto& t : r.terms_) t.mono = t.mono * m;
        if (m.support_end() > nvars_) fail(ErrorKind::dimension, "monomial uses more variables than the ring");
        return r;
    }

   private:
    static void check_nvars(std::size_t n) {
        if (n > kMaxVars) fail(ErrorKind::dimension, "at most 16 variables are supported");
    }

    static void same_ring(const MultiPoly& a, const MultiPoly& b) {
        if (a.nvars_ != b.nvars_)
            fail(ErrorKind::dimension, "operands live in rings with " + std::to_string(a.nvars_) + " and " +
                                           std::to_string(b.nvars_) + " variables");
    }

    static MultiPoly merge(const MultiPoly& a, const MultiPoly& b, bool subtract) {
        same_ring(a, b);
        MultiPoly r(a.nvars_);
        r.terms_.reserve(a.size() + b.size());
        std::size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && a.terms_[i].mono > b.terms_[j].mono)) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (i == a.size() || b.terms_[j].mono > a.terms_[i].mono) {
                r.terms_.push_back(b.terms_[j++]);
                if (subtract) r.terms_.back().coeff = -r.terms_.back().coeff;
            } else {
                Rational c = subtract ? Rational(a.terms_[i].coeff - b.terms_[j].coeff) : Rational(a.terms_[i].coeff + b.terms_[j].coeff);
                if (c != 0) r.terms_.push_back({a.terms_[i].mono, std::move(c)});
                ++i;
                ++j;
            }
        }
        return r;
    }

    std::size_t nvars_;
    std::vector<Term> terms_;
};

inline MultiPoly pow(const MultiPoly& base, unsigned exponent) {
    MultiPoly result = MultiPoly::constant(base.nvars(), 1);
    MultiPoly b = base;
    while (exponent > 0) {
        if (exponent & 1U) result *= b;
        exponent >>= 1U;
        if (exponent > 0) b *= b;
    }
    return result;
}

/// Formal partial derivative with respect to x_{var+1}.
inline MultiPoly derivative(const MultiPoly& p, std::size_t var) {
    if (var >= p.nvars()) fail(ErrorKind::dimension, "derivative: variable index out of range");
    std::vector<Term> out;
    for (const auto& t : p.terms()) {
        unsigned e = t.mono[var];
        if (e == 0) continue;
        Monomial m = t.mono;
        m.set(var, e - 1);
        out.push_back({m, t.coeff * e});
    }
    return MultiPoly::from_terms(p.nvars(), std::move(out));
}

/// Degree d if every term has total degree d, nullopt otherwise; kMinusInfinity for 0.
inline std::optional<int> homogeneous_degree(const MultiPoly& p) {
    if (p.is_zero()) return kMinusInfinity;
    unsigned d = p.terms().front().mono.degree();
    for (const auto& t : p.terms())
        if (t.mono.degree() != d) return std::nullopt;
    return int(d);
}

/// Exact quotient a / b, or nullopt when b does not divide a.
inline std::optional<MultiPoly> divide_exact(const MultiPoly& a, const MultiPoly& b) {
    if (b.is_zero()) fail(ErrorKind::domain, "division by the zero polynomial");
    if (a.nvars() != b.nvars()) fail(ErrorKind::dimension, "divide_exact: mismatched rings");
    if (b.is_constant()) return a / b.constant_value();
    std::map<Monomial, Rational, std::greater<>> rem;
    for (const auto& t : a.terms()) rem.emplace_hint(rem.end(), t.mono, t.coeff);
    std::vector<Term> quotient;
    const Term& lb = b.leading();
    Rational prod;
    while (!rem.empty()) {
        auto lead = rem.begin();
        if (!lb.mono.divides(lead->first)) return std::nullopt;
        Term q{lead->first / lb.mono, lead->second / lb.coeff};
        rem.erase(lead);
        for (std::size_t i = 1; i < b.size(); ++i) {
            const Term& tb = b.terms()[i];
            mpq_mul(prod.get_mpq_t(), q.coeff.get_mpq_t(), tb.coeff.get_mpq_t());
            auto [it, inserted] = rem.try_emplace(tb.mono * q.mono);
            it->second -= prod;
            if (it->second == 0) rem.erase(it);
        }
        quotient.push_back(std::move(q));
    }
    return MultiPoly::from_terms(a.nvars(), std::move(quotient));
}

inline MultiPoly divide_or_throw(const MultiPoly& a, const MultiPoly& b, const char* what) {
    auto q = divide_exact(a, b);
    if (!q) fail(ErrorKind::domain, std::string(what) + ": inexact division");
    return *std::move(q);
}

/// Rational content c with p = c * q, q having coprime integer coefficients and positive leading coefficient.
inline std::pair<Rational, MultiPoly> integer_primitive(const MultiPoly& p) {
    if (p.is_zero()) return {Rational(0), p};
    Integer num_gcd = 0, den_lcm = 1;
    for (const auto& t : p.terms()) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coeff.get_num_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.get_den_mpz_t());
    }
    Rational content(num_gcd, den_lcm);
    content.canonicalize();
    if (p.leading().coeff < 0) content = -content;
    return {content, p / content};
}

/// Evaluation at a rational point.
inline Rational evaluate(const MultiPoly& p, std::span<const Rational> point) {
    if (point.size() != p.nvars()) fail(ErrorKind::dimension, "evaluate: point has wrong length");
    std::vector<std::vector<Rational>> powers(p.nvars(), std::vector<Rational>{Rational(1)});
    Rational sum = 0;
    for (const auto& t : p.terms()) {
        Rational v = t.coeff;
        for (std::size_t i = 0; i < p.nvars(); ++i) {
            unsigned e = t.mono[i];
            if (e == 0) continue;
            auto& pw = powers[i];
            while (pw.size() <= e) pw.push_back(pw.back() * point[i]);
            v *= pw[e];
        }
        sum += v;
    }
    return sum;
}

/// Composition p(images[0], ..., images[n-1]); all images share one ring.
inline MultiPoly substitute(const MultiPoly& p, std::span<const MultiPoly> images) {
    if (images.size() != p.nvars()) fail(ErrorKind::dimension, "substitute: need one image per variable");
    if (images.empty()) return p;
    std::size_t target = images[0].nvars();
    for (const auto& img : images)
        if (img.nvars() != target) fail(ErrorKind::dimension, "substitute: images live in different rings");
    std::vector<std::vector<MultiPoly>> powers(images.size());
    for (std::size_t i = 0; i < images.size(); ++i) powers[i].push_back(MultiPoly::constant(target, 1));
    MultiPoly sum(target);
    for (const auto& t : p.terms()) {
        MultiPoly v = MultiPoly::constant(target, t.coeff);
        for (std::size_t i = 0; i < p.nvars(); ++i) {
            unsigned e = t.mono[i];
            if (e == 0) continue;
            auto& pw = powers[i];
            while (pw.size() <= e) pw.push_back(pw.back() * images[i]);
            v *= pw[e];
        }
        sum += v;
    }
    return sum;
}

inline MultiPoly substitute(const MultiPoly& p, std::initializer_list<MultiPoly> images) {
    return substitute(p, std::span<const MultiPoly>(images.begin(), images.size()));
}

/// Re-embeds p into a ring with more variables; new variables are appended.
inline MultiPoly extend(const MultiPoly& p, std::size_t nvars) {
    if (nvars < p.nvars()) fail(ErrorKind::dimension, "extend: target ring is smaller");
    return MultiPoly::from_terms(nvars, std::vector<Term>(p.terms().begin(), p.terms().end()));
}

/// Drops trailing variables that p does not involve.
inline MultiPoly restrict_to(const MultiPoly& p, std::size_t nvars) {
    for (const auto& t : p.terms())
        if (t.mono.support_end() > nvars) fail(ErrorKind::dimension, "restrict: polynomial involves a dropped variable");
    return MultiPoly::from_terms(nvars, std::vector<Term>(p.terms().begin(), p.terms().end()));
}

/// Splits p by the total degree of the exponents restricted to `vars`.
inline std::vector<MultiPoly> split_by_partial_degree(const MultiPoly& p, std::span<const std::size_t> vars) {
    std::vector<std::vector<Term>> buckets;
    for (const auto& t : p.terms()) {
        unsigned d = 0;
        for (std::size_t v : vars) d += t.mono[v];
        if (buckets.size() <= d) buckets.resize(d + 1);
        buckets[d].push_back(t);
    }
    std::vector<MultiPoly> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) out.push_back(MultiPoly::from_terms(p.nvars(), std::move(b)));
    return out;
}

}  // namespace zerohess

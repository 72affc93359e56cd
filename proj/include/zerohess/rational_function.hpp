#pragma once

#include <span>
#include <vector>

#include "gcd.hpp"

namespace zerohess {

/// Reduced quotient num/den of two polynomials in one ring. The denominator is
/// integer-primitive with positive leading coefficient, which makes the
/// representation canonical.
class RationalFunction {
   public:
    explicit RationalFunction(std::size_t nvars = 0) : num_(nvars), den_(MultiPoly::constant(nvars, 1)) {}
    RationalFunction(const MultiPoly& p) : num_(p), den_(MultiPoly::constant(p.nvars(), 1)) {}  // NOLINT
    RationalFunction(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }

    const MultiPoly& num() const { return num_; }
    const MultiPoly& den() const { return den_; }
    std::size_t nvars() const { return num_.nvars(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        if (a.is_polynomial() && b.is_polynomial()) return RationalFunction(a.num_ + b.num_);
        if (a.den_ == b.den_) return {a.num_ + b.num_, a.den_};
        MultiPoly g = gcd(a.den_, b.den_);
        MultiPoly ca = divide_or_throw(b.den_, g, "rf add");
        MultiPoly cb = divide_or_throw(a.den_, g, "rf add");
        return {a.num_ * ca + b.num_ * cb, a.den_ * ca};
    }
    friend RationalFunction operator-(const RationalFunction& a) { return RationalFunction(-a.num_, a.den_, raw_tag{}); }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        if (a.is_polynomial() && b.is_polynomial()) return RationalFunction(a.num_ * b.num_);
        MultiPoly g1 = a.num_.is_zero() ? MultiPoly::constant(a.nvars(), 1) : gcd(a.num_, b.den_);
        MultiPoly g2 = b.num_.is_zero() ? MultiPoly::constant(a.nvars(), 1) : gcd(b.num_, a.den_);
        MultiPoly n = divide_or_throw(a.num_, g1, "rf mul") * divide_or_throw(b.num_, g2, "rf mul");
        MultiPoly d = divide_or_throw(a.den_, g2, "rf mul") * divide_or_throw(b.den_, g1, "rf mul");
        return {std::move(n), std::move(d)};
    }

    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) fail(ErrorKind::domain, "division by the zero rational function");
        return a * RationalFunction(b.den_, b.num_);
    }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

   private:
    struct raw_tag {};
    RationalFunction(MultiPoly num, MultiPoly den, raw_tag) : num_(std::move(num)), den_(std::move(den)) {}

    void reduce() {
        if (num_.nvars() != den_.nvars()) fail(ErrorKind::dimension, "rational function: mismatched rings");
        if (den_.is_zero()) fail(ErrorKind::domain, "rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = MultiPoly::constant(num_.nvars(), 1);
            return;
        }
        if (!den_.is_constant()) {
            MultiPoly g = gcd(num_, den_);
            if (!g.is_constant()) {
                num_ = divide_or_throw(num_, g, "rf reduce");
                den_ = divide_or_throw(den_, g, "rf reduce");
            }
        }
        auto [c, pp] = integer_primitive(den_);
        num_ /= c;
        den_ = std::move(pp);
    }

    MultiPoly num_;
    MultiPoly den_;
};

/// Composition p(images); images are rational functions in one common ring.
/// Brought to a common denominator once, then reduced once.
inline RationalFunction substitute(const MultiPoly& p, std::span<const RationalFunction> images) {
    if (images.size() != p.nvars()) fail(ErrorKind::dimension, "substitute: need one image per variable");
    if (images.empty()) return RationalFunction(p);
    std::size_t target = images[0].nvars();
    MultiPoly common = MultiPoly::constant(target, 1);
    for (const auto& img : images) {
        if (img.nvars() != target) fail(ErrorKind::dimension, "substitute: images live in different rings");
        if (!img.den().is_constant()) common = lcm(common, img.den());
    }
    std::vector<MultiPoly> numerators;
    numerators.reserve(images.size());
    for (const auto& img : images) numerators.push_back(img.num() * divide_or_throw(common, img.den(), "substitute"));
    if (common.is_constant()) return RationalFunction(substitute(p, std::span<const MultiPoly>(numerators)));

    int top = std::max(p.degree(), 0);
    std::vector<MultiPoly> common_powers{MultiPoly::constant(target, 1)};
    for (int k = 1; k <= top; ++k) common_powers.push_back(common_powers.back() * common);
    std::vector<std::vector<MultiPoly>> powers(images.size(), std::vector<MultiPoly>{MultiPoly::constant(target, 1)});
    MultiPoly sum(target);
    for (const auto& t : p.terms()) {
        MultiPoly v = MultiPoly::constant(target, t.coeff);
        for (std::size_t i = 0; i < p.nvars(); ++i) {
            unsigned e = t.mono[i];
            if (e == 0) continue;
            auto& pw = powers[i];
            while (pw.size() <= e) pw.push_back(pw.back() * numerators[i]);
            v *= pw[e];
        }
        sum += v * common_powers[std::size_t(top) - t.mono.degree()];
    }
    return {std::move(sum), common_powers[std::size_t(top)]};
}

}  // namespace zerohess

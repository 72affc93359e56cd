#include <gtest/gtest.h>

#include <zerohess/text.hpp>

#include "corpus.hpp"

using namespace zerohess;

TEST(Parser, Examples) {
    MultiPoly c = parse_polynomial(corpus::kCubic);
    EXPECT_EQ(c, corpus::cubic());
    EXPECT_EQ(parse_polynomial("(x1+x2)^3"), parse_polynomial("x1^3 + 3*x1^2*x2 + 3*x1*x2^2 + x2^3"));
    EXPECT_EQ(parse_polynomial("3/2*x1 - x1/2"), parse_polynomial("x1"));
    EXPECT_EQ(parse_polynomial("-x1 + 2").nvars(), 1u);
    EXPECT_EQ(parse_polynomial("x2", 4).nvars(), 4u);
}

TEST(Parser, Errors) {
    auto kind = [](const char* s) {
        try {
            parse_polynomial(s);
        } catch (const ParseError& e) {
            return std::make_pair(e.line(), e.column());
        }
        return std::make_pair(std::size_t(0), std::size_t(0));
    };
    EXPECT_EQ(kind("x0"), std::make_pair(std::size_t(1), std::size_t(2)));
    EXPECT_EQ(kind("x1 +\n  * x2"), std::make_pair(std::size_t(2), std::size_t(3)));
    EXPECT_EQ(kind("2x1").first, 1u);  // no implicit multiplication
    EXPECT_EQ(kind("x1/0").first, 1u);
    EXPECT_EQ(kind("x17").first, 1u);
    EXPECT_THROW(parse_polynomial("x3", 2), Error);
}

TEST(Printer, Canonical) {
    EXPECT_EQ(to_string(parse_polynomial("x5*x2^2 + x1*x4*x2 + x3*x1^2")), corpus::kCubic);
    EXPECT_EQ(to_string(parse_polynomial("-x1 + 1/3 - 2*x2^2")), "-2*x2^2 - x1 + 1/3");
    EXPECT_EQ(to_string(MultiPoly(3)), "0");
    EXPECT_EQ(to_string(parse_polynomial("x1*x2"), {"y", {}}), "y1*y2");
}

TEST(Json, RoundTrip) {
    MultiPoly p = parse_polynomial("-7/3*x1^2*x3 + 123456789012345678901234567890*x2");
    auto j = to_json(p);
    EXPECT_EQ(j["terms"][1]["coefficient"][0], "123456789012345678901234567890");
    EXPECT_EQ(poly_from_json(j), p);
    j["terms"][0]["coefficient"][1] = "0";
    EXPECT_THROW(poly_from_json(j), Error);
}

class TextProperties : public ::testing::TestWithParam<int> {};

TEST_P(TextProperties, PrintParseRoundTrip) {
    corpus::Rng rng(8080 + GetParam());
    std::size_t n = 1 + rng() % kMaxVars;
    std::vector<Term> terms;
    for (int t = 0; t < int(rng() % 6); ++t) {
        std::vector<unsigned> e(n);
        for (auto& x : e) x = rng() % 3 == 0 ? unsigned(rng() % 5) : 0;
        terms.push_back({Monomial(std::span<const unsigned>(e)), corpus::small_rational(rng)});
    }
    MultiPoly p = MultiPoly::from_terms(n, std::move(terms));
    std::string s = to_string(p);
    MultiPoly q = parse_polynomial(s, n);
    EXPECT_EQ(q, p) << s;
    EXPECT_EQ(to_string(q), s);
}

INSTANTIATE_TEST_SUITE_P(Seeds, TextProperties, ::testing::Range(0, 40));

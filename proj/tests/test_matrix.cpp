#include <gtest/gtest.h>

#include <zerohess/hessian.hpp>
#include <zerohess/linalg.hpp>
#include <zerohess/matrix.hpp>
#include <zerohess/text.hpp>

#include "corpus.hpp"
#include "oracles.hpp"

using namespace zerohess;

namespace {

MultiPoly P(const char* s, std::size_t n) { return parse_polynomial(s, n); }

PolyMatrix random_matrix(std::size_t size, std::size_t nvars, corpus::Rng& rng) {
    PolyMatrix m(size, size, nvars);
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j)
            if (rng() % 4) m(i, j) = corpus::random_form(nvars, unsigned(rng() % 3), rng, 0.6);
    return m;
}

oracle::Matrix to_oracle(const PolyMatrix& m) {
    oracle::Matrix o(m.rows(), std::vector<oracle::Poly>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) o[i][j] = oracle::from(m(i, j));
    return o;
}

}  // namespace

TEST(Matrix, DeterminantExamples) {
    PolyMatrix m(2, 2, 2);
    m(0, 0) = P("x1", 2);
    m(1, 1) = P("x2", 2);
    EXPECT_EQ(determinant(m), P("x1*x2", 2));
    EXPECT_EQ(determinant(PolyMatrix::identity(3, 1)), P("1", 1));
    EXPECT_THROW(determinant(PolyMatrix(2, 3, 1)), Error);
}

TEST(Matrix, AdjugateExample) {
    PolyMatrix m(2, 2, 2);
    m(0, 0) = P("x1", 2);
    m(1, 1) = P("x2", 2);
    PolyMatrix adj = adjugate(m);
    EXPECT_EQ(adj(0, 0), P("x2", 2));
    EXPECT_EQ(adj(1, 1), P("x1", 2));
    EXPECT_TRUE(adj(0, 1).is_zero());
}

TEST(Matrix, RankExamples) {
    EXPECT_EQ(rank(PolyMatrix::identity(3, 2)), 3u);
    EXPECT_EQ(rank(PolyMatrix(3, 4, 2)), 0u);
}

TEST(Matrix, CubicHessianRankAgainstOracle) {
    MultiPoly f = corpus::cubic();
    EXPECT_EQ(rank(hessian_matrix(f)), 4u);
    // oracle: a nonzero 4x4 minor and a vanishing full determinant
    auto h = oracle::hessian(oracle::from(f), 5);
    EXPECT_TRUE(oracle::det(h).empty());
    bool found = false;
    for (std::size_t skip_r = 0; skip_r < 5 && !found; ++skip_r)
        for (std::size_t skip_c = 0; skip_c < 5 && !found; ++skip_c) {
            oracle::Matrix sub;
            for (std::size_t i = 0; i < 5; ++i) {
                if (i == skip_r) continue;
                std::vector<oracle::Poly> row;
                for (std::size_t j = 0; j < 5; ++j)
                    if (j != skip_c) row.push_back(h[i][j]);
                sub.push_back(row);
            }
            found = !oracle::det(sub).empty();
        }
    EXPECT_TRUE(found);
}

TEST(Matrix, CubicAdjugateRowsProportionalToSvs) {
    PolyMatrix adj = adjugate(hessian_matrix(corpus::cubic()));
    std::vector<MultiPoly> h{MultiPoly(5), MultiPoly(5), P("x2^2", 5), P("-2*x1*x2", 5), P("x1^2", 5)};
    for (std::size_t i = 0; i < 5; ++i) {
        auto row = adj.row(i);
        bool zero = std::all_of(row.begin(), row.end(), [](const MultiPoly& p) { return p.is_zero(); });
        if (zero) continue;
        auto g = gcd(std::span<const MultiPoly>(row));
        std::vector<MultiPoly> reduced;
        for (auto& e : row) reduced.push_back(e.is_zero() ? e : *divide_exact(e, g));
        EXPECT_TRUE(oracle::proportional(h, reduced)) << "row " << i;
    }
}

class MatrixProperties : public ::testing::TestWithParam<int> {};

TEST_P(MatrixProperties, DeterminantMatchesCofactorOracle) {
    corpus::Rng rng(77 + GetParam());
    PolyMatrix m = random_matrix(1 + rng() % 4, 1 + rng() % 3, rng);
    EXPECT_EQ(determinant(m), oracle::to(oracle::det(to_oracle(m)), m.nvars()));
}

TEST_P(MatrixProperties, AdjugateIdentity) {
    corpus::Rng rng(177 + GetParam());
    PolyMatrix m = random_matrix(1 + rng() % 4, 2, rng);
    MultiPoly d = determinant(m);
    PolyMatrix prod = m * adjugate(m);
    EXPECT_EQ(prod, d * PolyMatrix::identity(m.rows(), m.nvars()));
}

TEST_P(MatrixProperties, RankIsLargestNonzeroMinorOnLowRankProducts) {
    corpus::Rng rng(277 + GetParam());
    std::size_t r = 1 + rng() % 2;
    PolyMatrix a(4, r, 2), b(r, 4, 2);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            a(i, j) = corpus::random_form(2, 1, rng, 0.8);
            b(j, i) = corpus::random_form(2, 1, rng, 0.8);
        }
    PolyMatrix m = a * b;
    EXPECT_LE(rank(m), r);
    EXPECT_TRUE(determinant(m).is_zero());
}

INSTANTIATE_TEST_SUITE_P(Seeds, MatrixProperties, ::testing::Range(0, 25));

TEST(QLinalg, KernelAndInverse) {
    QMatrix m = QMatrix::from_rows({{1, 2, 3}, {2, 4, 6}});
    EXPECT_EQ(rank(m), 1u);
    auto ker = kernel(m);
    ASSERT_EQ(ker.size(), 2u);
    for (const auto& v : ker) EXPECT_EQ(v[0] + 2 * v[1] + 3 * v[2], 0);
    QMatrix b = QMatrix::from_rows({{2, 1}, {1, 1}});
    auto inv = inverse(b);
    ASSERT_TRUE(inv);
    EXPECT_EQ(b * *inv, QMatrix::identity(2));
    EXPECT_FALSE(inverse(QMatrix::from_rows({{1, 1}, {1, 1}})));
}

TEST(QLinalg, CompleteBasisPutsGivenColumnsLast) {
    QMatrix b = complete_basis_last({{0, 1, 1}}, 3);
    EXPECT_TRUE(inverse(b).has_value());
    EXPECT_EQ(b(1, 2), 1);
    EXPECT_EQ(b(2, 2), 1);
}

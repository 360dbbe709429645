#include <gtest/gtest.h>

#include <random>

#include "natop/linalg.hpp"

using namespace natop;

namespace {

RationalMatrix random_matrix(std::mt19937_64& rng, int rows, int cols, int rank_cap) {
  // Product of random rows x rank_cap and rank_cap x cols factors.
  std::uniform_int_distribution<int> d(-4, 4);
  std::vector<RationalVector> left(static_cast<std::size_t>(rows), RationalVector(static_cast<std::size_t>(rank_cap)));
  std::vector<RationalVector> right(static_cast<std::size_t>(rank_cap), RationalVector(static_cast<std::size_t>(cols)));
  for (auto& r : left)
    for (auto& x : r) x = d(rng);
  for (auto& r : right)
    for (auto& x : r) x = Rational(d(rng), 1 + (d(rng) + 4) % 3);
  std::vector<RationalVector> prod(static_cast<std::size_t>(rows), RationalVector(static_cast<std::size_t>(cols)));
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < rank_cap; ++k)
      for (int j = 0; j < cols; ++j) prod[i][j] += left[i][k] * right[k][j];
  return RationalMatrix::from_dense(prod, cols);
}

}  // namespace

TEST(Linalg, RrefOfKnownMatrix) {
  auto m = RationalMatrix::from_dense({{2, 4, 6}, {1, 2, 4}, {3, 6, 10}}, 3);
  auto r = rref(m);
  EXPECT_EQ(r.rank, 2);
  EXPECT_EQ(r.pivots, (std::vector<int>{0, 2}));
  EXPECT_EQ(r.reduced.dense_row(0), (RationalVector{1, 2, 0}));
  EXPECT_EQ(r.reduced.dense_row(1), (RationalVector{0, 0, 1}));
}

TEST(Linalg, NullspaceOfKnownMatrix) {
  auto m = RationalMatrix::from_dense({{1, 1, 0, 0}, {0, 0, 1, 0}}, 4);
  auto n = nullspace(m);
  ASSERT_EQ(n.size(), 2u);
  EXPECT_EQ(n[0], (RationalVector{-1, 1, 0, 0}));
  EXPECT_EQ(n[1], (RationalVector{0, 0, 0, 1}));
}

TEST(Linalg, MembershipReportsResidual) {
  std::vector<RationalVector> basis{{1, 0, 1}, {0, 1, 1}};
  auto in = solve_membership({2, 3, 5}, basis);
  EXPECT_TRUE(in.member);
  EXPECT_EQ(in.coordinates, (RationalVector{2, 3}));
  auto out = solve_membership({1, 1, 0}, basis);
  EXPECT_FALSE(out.member);
  EXPECT_NE(out.residual, (RationalVector{0, 0, 0}));
}

TEST(Linalg, EmptyAndZeroMatrices) {
  RationalMatrix z(0, 3);
  EXPECT_EQ(rref(z).rank, 0);
  EXPECT_EQ(nullspace(z).size(), 3u);
  RationalMatrix zeros(2, 2);
  EXPECT_EQ(nullspace(zeros).size(), 2u);
}

TEST(LinalgProperty, RankPlusNullityAndKernel) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    int rows = 2 + trial % 7, cols = 3 + trial % 9, cap = 1 + trial % 5;
    auto m = random_matrix(rng, rows, cols, cap);
    auto r = rref(m);
    auto n = nullspace(m);
    EXPECT_EQ(r.rank + static_cast<int>(n.size()), cols);
    EXPECT_LE(r.rank, cap);
    for (const auto& v : n)
      for (const auto& x : m.multiply(v)) EXPECT_EQ(x, 0);
    EXPECT_EQ(rank_of(n, cols), static_cast<int>(n.size()));
    EXPECT_TRUE(same_row_space(m, r.reduced));
    EXPECT_EQ(rref(r.reduced).reduced, r.reduced);
  }
}

TEST(LinalgProperty, RowSpaceIgnoresRowOperations) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto m = random_matrix(rng, 5, 7, 3);
    RationalMatrix shuffled(0, 7);
    for (int r = m.rows() - 1; r >= 0; --r) {
      SparseRow row = m.row(r);
      for (auto& [c, v] : row) v *= Rational(-3, 2);
      if (r > 0)
        for (const auto& [c, v] : m.row(r - 1)) row[c] += v;
      std::erase_if(row, [](const auto& kv) { return is_zero(kv.second); });
      shuffled.append_row(row);
    }
    shuffled.append_row(m.row(0));
    EXPECT_TRUE(same_row_space(m, shuffled));
  }
}

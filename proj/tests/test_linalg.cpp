// Copyright 2026 The ia3 Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <sstream>
#include <vector>

#include "ia3/linalg.hpp"
#include "ia3/properties.hpp"

namespace ia3 {
namespace {

IntegerMatrix mat(std::vector<std::vector<long>> rows) {
  IntegerMatrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  return m;
}

// gcd of all k x k minors, by cofactor expansion on selected rows/cols.
BigInt minor_det(const IntegerMatrix& m, std::vector<std::size_t> rs, std::vector<std::size_t> cs) {
  if (rs.size() == 1) return m(rs[0], cs[0]);
  BigInt acc = 0;
  for (std::size_t j = 0; j < cs.size(); ++j) {
    std::vector<std::size_t> sub_c;
    for (std::size_t t = 0; t < cs.size(); ++t)
      if (t != j) sub_c.push_back(cs[t]);
    const BigInt term = m(rs[0], cs[j]) * minor_det(m, {rs.begin() + 1, rs.end()}, sub_c);
    acc += (j % 2 ? -term : term);
  }
  return acc;
}

void subsets(std::size_t n, std::size_t k, std::size_t from, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = from; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

BigInt determinantal_divisor(const IntegerMatrix& m, std::size_t k) {
  std::vector<std::vector<std::size_t>> rs, cs;
  std::vector<std::size_t> cur;
  subsets(m.rows(), k, 0, cur, rs);
  subsets(m.cols(), k, 0, cur, cs);
  BigInt g = 0;
  for (const auto& r : rs)
    for (const auto& c : cs) g = boost::multiprecision::gcd(g, minor_det(m, r, c));
  return abs(g);
}

TEST(Linalg, Rank) {
  EXPECT_EQ(rank_exact(IntegerMatrix::identity(5)), 5u);
  EXPECT_EQ(rank_exact(IntegerMatrix(4, 3)), 0u);
  EXPECT_EQ(rank_exact(mat({{1, 2}, {2, 4}})), 1u);
  EXPECT_EQ(rank_mod_prime(mat({{1, 2}, {2, 4}})), 1u);
}

TEST(Linalg, Determinant) {
  EXPECT_EQ(determinant(mat({{2, 1}, {7, 4}})), 1);
  EXPECT_EQ(determinant(mat({{0, 1}, {1, 0}})), -1);
  EXPECT_EQ(determinant(mat({{1, 2}, {2, 4}})), 0);
  EXPECT_THROW((void)determinant(IntegerMatrix(2, 3)), std::invalid_argument);
}

TEST(Linalg, SmithFormByHand) {
  EXPECT_EQ(snf(mat({{2, 0}, {0, 4}})).invariant_factors, (std::vector<BigInt>{2, 4}));
  EXPECT_EQ(snf(mat({{0, 1}, {1, 0}})).invariant_factors, (std::vector<BigInt>{1, 1}));
  EXPECT_EQ(snf(mat({{2, 0}, {0, 3}})).invariant_factors, (std::vector<BigInt>{1, 6}));
  EXPECT_EQ(snf(mat({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}})).invariant_factors, (std::vector<BigInt>{2, 6, 12}));
  EXPECT_TRUE(snf(mat({{1, 0}, {0, 1}, {0, 0}})).all_units());
}

TEST(Linalg, SmithFormAgreesWithMinors) {
  props::Rng rng(61);
  for (int trial = 0; trial < 1000; ++trial) {
    const IntegerMatrix m = props::random_matrix(rng, 4, 6);
    const SnfResult s = snf(m);
    BigInt prod = 1;
    for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
      const BigInt dk = determinantal_divisor(m, k);
      if (k <= s.rank()) {
        prod *= s.invariant_factors[k - 1];
        ASSERT_EQ(dk, prod) << "trial " << trial << " k=" << k;
      } else {
        ASSERT_EQ(dk, 0) << "trial " << trial << " k=" << k;
      }
    }
    ASSERT_LE(rank_mod_prime(m), rank_exact(m));
  }
}

TEST(Linalg, InSpan) {
  const IntegerMatrix m = mat({{1, 0}, {0, 1}, {0, 0}});
  const auto x = in_span(std::vector<BigInt>{0, 1, 0}, m);
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, (std::vector<Rational>{0, 1}));
  EXPECT_FALSE(in_span(std::vector<BigInt>{0, 0, 1}, m));
  const auto h = in_span(std::vector<BigInt>{1}, mat({{2}}));
  ASSERT_TRUE(h);
  EXPECT_EQ(h->front(), Rational(1, 2));
}

TEST(Linalg, SolveSquare) {
  const RationalMatrix a = to_rational(mat({{2, 1}, {7, 4}}));
  const auto x = solve_square(a, RationalMatrix::identity(2));
  ASSERT_TRUE(x);
  EXPECT_EQ(a * *x, RationalMatrix::identity(2));
  EXPECT_EQ(*x, to_rational(mat({{4, -1}, {-7, 2}})));
  EXPECT_FALSE(solve_square(to_rational(mat({{1, 2}, {2, 4}})), RationalMatrix::identity(2)));
}

TEST(Linalg, CsvRoundTrip) {
  const IntegerMatrix m = mat({{1, -2, 3}, {0, 0, 123456789}});
  std::stringstream ss;
  write_csv(ss, m);
  EXPECT_EQ(ss.str(), "1,-2,3\n0,0,123456789\n");
  EXPECT_EQ(read_csv(ss), m);
  std::stringstream bad("1,2\n3\n");
  EXPECT_THROW((void)read_csv(bad), std::invalid_argument);
  std::stringstream junk("1,x\n");
  EXPECT_THROW((void)read_csv(junk), std::invalid_argument);
}

TEST(LinalgProperties, SmithRecomposition) {
  props::Rng rng(62);
  const auto r = props::snf_recomposition(rng, 1000);
  EXPECT_TRUE(r.ok()) << r.counterexample;
}

}  // namespace
}  // namespace ia3

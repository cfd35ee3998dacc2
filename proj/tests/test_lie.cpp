// Copyright 2026 The ia3 Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <set>
#include <string>
#include <vector>

#include "ia3/lie.hpp"
#include "ia3/properties.hpp"

namespace ia3 {
namespace {

// Lyndon words of length k over n letters, by enumeration.
long long count_lyndon(int n, int k) {
  long long count = 0;
  std::vector<int> w(k, 0);
  for (;;) {
    bool lyndon = true;
    for (int r = 1; r < k && lyndon; ++r) {
      // strictly smaller than every proper rotation
      for (int i = 0; i < k; ++i) {
        const int a = w[i], b = w[(i + r) % k];
        if (a < b) break;
        if (a > b || i == k - 1) {
          lyndon = false;
          break;
        }
      }
    }
    count += lyndon;
    int pos = k - 1;
    while (pos >= 0 && w[pos] == n - 1) w[pos--] = 0;
    if (pos < 0) break;
    ++w[pos];
  }
  return count;
}

TEST(Lie, WittRankMatchesLyndonCount) {
  for (int n = 1; n <= 4; ++n)
    for (int k = 1; k <= 5; ++k) EXPECT_EQ(witt_rank(n, k), count_lyndon(n, k)) << n << " " << k;
  EXPECT_EQ(witt_rank(9, 2), count_lyndon(9, 2));
  EXPECT_EQ(witt_rank(9, 3), count_lyndon(9, 3));
}

TEST(Lie, HallBasisSizes) {
  EXPECT_EQ(witt_rank(9, 2), 36);
  EXPECT_EQ(witt_rank(9, 3), 240);
  EXPECT_EQ(witt_rank(3, 2), 3);
  EXPECT_EQ(witt_rank(3, 3), 8);
  for (int n = 2; n <= 4; ++n) {
    const auto alg = lie_algebra(free_basis(n));
    for (int k = 1; k <= 5; ++k) EXPECT_EQ(BigInt(alg->dimension(k)), witt_rank(n, k)) << n << " " << k;
  }
  const auto mag = lie_algebra(magnus_alphabet(3));
  EXPECT_EQ(mag->dimension(2), 36u);
  EXPECT_EQ(mag->dimension(3), 240u);
}

TEST(Lie, LowWeightBasisIsTheTextbookList) {
  // weight 2: [x_i,x_j] with j < i; weight 3: [x_i,x_j,x_l] with i > j <= l
  const int n = 4;
  const AlphabetPtr f = free_basis(n);
  std::set<std::string> two, three;
  auto nm = [&](int i) { return f->names()[i - 1]; };
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j < i; ++j) {
      two.insert("[" + nm(i) + "," + nm(j) + "]");
      for (int l = j; l <= n; ++l) three.insert("[" + nm(i) + "," + nm(j) + "," + nm(l) + "]");
    }
  const auto b2 = hall_basis_strings(f, 2), b3 = hall_basis_strings(f, 3);
  EXPECT_EQ(std::set<std::string>(b2.begin(), b2.end()), two);
  EXPECT_EQ(std::set<std::string>(b3.begin(), b3.end()), three);
}

TEST(Lie, MagnusBasisStartsInTableOrder) {
  const auto b = hall_basis_strings(magnus_alphabet(3), 3);
  ASSERT_EQ(b.size(), 240u);
  EXPECT_EQ(b[0], "[K13,K12,K12]");
  EXPECT_EQ(b[9], "[K21,K12,K12]");
  EXPECT_EQ(b.back(), "[K312,K213,K312]");
}

TEST(Lie, JacobiRewriteByHand) {
  const AlphabetPtr f = free_basis(3);
  auto e = [&](const char* s) { return parse_lie_expression(f, s); };
  // [[x3,x2],x1] = [[x3,x1],x2] - [[x2,x1],x3]
  EXPECT_EQ(e("[x3,x2,x1]"), e("[x3,x1,x2]") - e("[x2,x1,x3]"));
  EXPECT_EQ(e("[x1,x2]"), -e("[x2,x1]"));
  EXPECT_TRUE(e("[x1,x1]").is_zero());
  EXPECT_THROW((void)parse_hall_tree(f, "[x3,x2,x1]"), std::invalid_argument);
  EXPECT_EQ(parse_hall_tree(f, "[x3,x1,x2]").weight, 3);
}

TEST(Lie, TensorOutsideTheLieAlgebraIsRejected) {
  const AlphabetPtr f = free_basis(3);
  RatTensor t(f, 2);
  t.add({GenId{0}, GenId{1}}, 1);  // X1 X2 alone is not a Lie element
  EXPECT_THROW((void)tensor_to_hall(t), std::domain_error);
}

TEST(Lie, JsonRoundTrip) {
  const AlphabetPtr mag = magnus_alphabet(3);
  const LieVector w = Rational(-3) * parse_lie_expression(mag, "[K312,K31,K312]") +
                      Rational(1, 2) * parse_lie_expression(mag, "[K21,K13,K12]");
  EXPECT_EQ(lie_vector_from_json(mag, 3, w.to_json()), w);
  EXPECT_THROW((void)lie_vector_from_json(mag, 2, w.to_json()), std::invalid_argument);
  EXPECT_THROW((void)(w + parse_lie_expression(mag, "[K21,K12]")), std::invalid_argument);
}

TEST(LieProperties, JacobiAndAntisymmetry) {
  props::Rng rng(31);
  const auto r = props::jacobi_antisymmetry(rng, 1000);
  EXPECT_TRUE(r.ok()) << r.counterexample;
}

TEST(LieProperties, TensorHallRoundTrips) {
  props::Rng rng(32);
  const auto r = props::tensor_hall_round_trip(rng, 1000);
  EXPECT_TRUE(r.ok()) << r.counterexample;
}

}  // namespace
}  // namespace ia3

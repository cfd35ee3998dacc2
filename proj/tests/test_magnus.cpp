// Copyright 2026 The ia3 Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <string>

#include "ia3/lie.hpp"
#include "ia3/magnus.hpp"
#include "ia3/properties.hpp"

namespace ia3 {
namespace {

AlphabetPtr F() { return free_basis(3); }
Word x(int i, int sign = 1) { return Word::generator(F(), "x" + std::to_string(i), sign); }
GenId X(int i) { return GenId{static_cast<std::uint16_t>(i - 1)}; }

TEST(Magnus, GeneratorAndInverse) {
  const NcSeries s = expand(x(1), 3);
  EXPECT_EQ(s.coeff({}), 1);
  EXPECT_EQ(s.coeff({X(1)}), 1);
  EXPECT_EQ(s.coeff({X(1), X(1)}), 0);

  // x^-1 = 1 - X + X^2 - X^3
  const NcSeries inv = expand(x(1, -1), 3);
  EXPECT_EQ(inv.coeff({X(1)}), -1);
  EXPECT_EQ(inv.coeff({X(1), X(1)}), 1);
  EXPECT_EQ(inv.coeff({X(1), X(1), X(1)}), -1);
  EXPECT_EQ(inv.terms().size(), 4u);
}

TEST(Magnus, CommutatorClassByHand) {
  // [x1,x2] = 1 + X1X2 - X2X1 + higher terms
  const IntTensor c = lcs_class(commutator(x(1), x(2)), 2);
  EXPECT_EQ(c.coeff({X(1), X(2)}), 1);
  EXPECT_EQ(c.coeff({X(2), X(1)}), -1);
  EXPECT_EQ(c.terms().size(), 2u);
  EXPECT_EQ(gamma_degree(commutator(x(1), x(2)), 3), 2);
  EXPECT_FALSE(gamma_degree(Word(F()), 3).has_value());
}

TEST(Magnus, TripleCommutatorClass) {
  // [[x1,x2],x3] has class (X1X2 - X2X1)X3 - X3(X1X2 - X2X1)
  const IntTensor c = lcs_class(left_normed({x(1), x(2), x(3)}), 3);
  EXPECT_EQ(c.coeff({X(1), X(2), X(3)}), 1);
  EXPECT_EQ(c.coeff({X(2), X(1), X(3)}), -1);
  EXPECT_EQ(c.coeff({X(3), X(1), X(2)}), -1);
  EXPECT_EQ(c.coeff({X(3), X(2), X(1)}), 1);
  EXPECT_EQ(c.terms().size(), 4u);
}

TEST(Magnus, LcsClassReportsLowerDegree) {
  try {
    (void)lcs_class(x(1) * x(2), 2);
    FAIL() << "expected domain_error";
  } catch (const std::domain_error& e) {
    EXPECT_NE(std::string(e.what()).find("degree 1"), std::string::npos) << e.what();
  }
}

TEST(Magnus, ClassesAreLieElements) {
  props::Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const Word w = commutator(props::random_word(rng, F(), 5), props::random_word(rng, F(), 5));
    EXPECT_NO_THROW((void)tensor_to_hall(lcs_class(w, 2))) << w.to_string();
  }
}

TEST(MagnusProperties, MultiplicativityAndInverse) {
  props::Rng rng(21);
  const auto r = props::magnus_multiplicativity(rng, 1000);
  EXPECT_TRUE(r.ok()) << r.counterexample;
}

TEST(MagnusProperties, BracketCompatibility) {
  props::Rng rng(22);
  const auto r = props::lcs_bracket_compatibility(rng, 1000);
  EXPECT_TRUE(r.ok()) << r.counterexample;
}

}  // namespace
}  // namespace ia3

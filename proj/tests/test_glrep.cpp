// Copyright 2026 The ia3 Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <string>

#include "ia3/glrep.hpp"
#include "ia3/properties.hpp"

namespace ia3 {
namespace {

AlphabetPtr M() { return magnus_alphabet(3); }
Weight w3(int a, int b, int c) { return Weight{{a, b, c}}; }

TEST(Weights, WeylDimension) {
  EXPECT_EQ(weyl_dim(w3(1, 0, 0)), 3);
  EXPECT_EQ(weyl_dim(w3(1, 1, -1)), 6);
  EXPECT_EQ(weyl_dim(w3(2, 1, -1)), 15);
  EXPECT_EQ(weyl_dim(w3(3, 2, -2)), 35);
  EXPECT_EQ(weyl_dim(w3(1, 1, 1)), 1);
  EXPECT_THROW((void)weyl_dim(w3(0, 1, 0)), std::invalid_argument);
}

TEST(Weights, Parse) {
  EXPECT_EQ(parse_weight("[3,2,-2]"), w3(3, 2, -2));
  EXPECT_EQ(parse_weight("3,2"), w3(3, 2, 0));
  EXPECT_THROW((void)parse_weight("1,2,3,4"), std::invalid_argument);
  EXPECT_THROW((void)parse_weight("a"), std::invalid_argument);
  EXPECT_THROW((void)parse_weight(""), std::invalid_argument);
}

TEST(Characters, IrreducibleCharactersEvaluateToDimension) {
  for (int a = -2; a <= 4; ++a)
    for (int b = -2; b <= a; ++b)
      for (int c = -2; c <= b; ++c) {
        const Character chi = irr_char(w3(a, b, c));
        EXPECT_EQ(chi.eval_at_one(), weyl_dim(w3(a, b, c)));
        EXPECT_TRUE(chi.is_symmetric());
        EXPECT_EQ(decompose_char(chi), make_decomposition({{w3(a, b, c), 1}}));
      }
}

TEST(Characters, StandardRepresentationByHand) {
  Character h;
  h.add({1, 0, 0}, 1);
  h.add({0, 1, 0}, 1);
  h.add({0, 0, 1}, 1);
  EXPECT_EQ(irr_char(w3(1, 0, 0)), h);
  EXPECT_EQ(module_char("H"), h);
}

TEST(Decompositions, ModulesOfTheAbelianization) {
  EXPECT_EQ(decompose_char(module_char("W")), make_decomposition({{w3(1, 0, 0), 1}, {w3(1, 1, -1), 1}}));
  EXPECT_EQ(decompose_char(module_char("Lambda2W")), make_decomposition({{w3(1, 1, 0), 2}, {w3(2, 1, -1), 2}}));
  EXPECT_EQ(decompose_char(module_char("LF2")), decompose_char(module_char("Lambda2W")));
  EXPECT_EQ(decompose_char(module_char("Lambda3W")),
            make_decomposition({{w3(1, 1, 1), 1}, {w3(2, 1, 0), 2}, {w3(3, 0, 0), 1}, {w3(2, 2, -1), 3}, {w3(3, 1, -1), 1}}));
  EXPECT_EQ(decompose_char(module_char("LF3")),
            make_decomposition({{w3(3, 0, 0), 1},
                                {w3(2, 1, 0), 6},
                                {w3(1, 1, 1), 1},
                                {w3(2, 2, -1), 3},
                                {w3(3, 1, -1), 3},
                                {w3(3, 2, -2), 2}}));
}

TEST(Decompositions, ExteriorAndTensorProducts) {
  EXPECT_EQ(ext_decompose(w3(1, 1, -1), 2), make_decomposition({{w3(2, 1, -1), 1}}));
  EXPECT_EQ(ext_decompose(w3(1, 1, -1), 3), make_decomposition({{w3(3, 0, 0), 1}, {w3(2, 2, -1), 1}}));
  EXPECT_EQ(tensor_decompose(w3(3, 2, 0), w3(2, 2, 0)),
            make_decomposition({{w3(5, 2, 2), 1}, {w3(4, 3, 2), 1}, {w3(5, 3, 1), 1}, {w3(5, 4, 0), 1}, {w3(4, 4, 1), 1}}));
  EXPECT_EQ(tensor_decompose(w3(1, 0, 0), w3(1, 1, -1)), make_decomposition({{w3(1, 1, 0), 1}, {w3(2, 1, -1), 1}}));
}

TEST(Decompositions, DimensionsAddUp) {
  for (const auto& name : module_names()) {
    const Character chi = module_char(name);
    EXPECT_EQ(decompose_char(chi).dimension(), chi.eval_at_one()) << name;
  }
  // W has 9 elements, so Lambda^3 W has 84 and L(3) = 9*36 - 84 = 240.
  EXPECT_EQ(module_char("Lambda3W").eval_at_one(), 84);
  EXPECT_EQ(module_char("LF3").eval_at_one(), 240);
}

TEST(Decompositions, RejectsNonCharacters) {
  EXPECT_THROW((void)decompose_char(Character::monomial({1, 0, 0})), std::invalid_argument);
  EXPECT_THROW((void)decompose_char(irr_char(w3(1, 0, 0)) * -1), std::invalid_argument);
}

TEST(WModuleTest, ConjugationSideReproducesTheTable) {
  const WModule& wm = w_module();
  const ConjugationSide side = wm.select_conjugation_side();
  for (int p = 1; p <= 3; ++p)
    for (int q = 1; q <= 3; ++q)
      if (p != q) EXPECT_EQ(WModule::conjugation_matrix(p, q, side), wm.group_action(p, q)) << p << q;
}

TEST(WModuleTest, TableEntriesByHand) {
  // Differences v.E - v. Substituting x_j -> x_j + x_l in x_i* (x) [x_i,x_j]
  // adds x_i* (x) [x_i,x_l].
  const WModule& wm = w_module();
  const LieVector k12 = LieVector::generator(M(), "K12");
  EXPECT_EQ(wm.raising_action(2, 3, k12), LieVector::generator(M(), "K13"));
  EXPECT_EQ(wm.raising_action(1, 3, LieVector::generator(M(), "K21")), LieVector::generator(M(), "K23"));
  EXPECT_TRUE(wm.raising_action(1, 3, LieVector::generator(M(), "K123")).is_zero());
}

TEST(WModuleTest, OperatorCommutator) {
  const WModule& wm = w_module();
  const RationalMatrix comm = wm.lie_operator(2, 3) * wm.lie_operator(1, 2) - wm.lie_operator(1, 2) * wm.lie_operator(2, 3);
  EXPECT_EQ(comm, wm.lie_operator(1, 3));
}

TEST(WModuleTest, OperatorsShiftWeight) {
  const WModule& wm = w_module();
  for (int p = 1; p <= 3; ++p)
    for (int q = 1; q <= 3; ++q) {
      if (p == q) continue;
      for (const auto& name : M()->names()) {
        const LieVector v = LieVector::generator(M(), name);
        const LieVector e = wm.derivation_extend(p, q, v);
        if (e.is_zero()) continue;
        Weight expect = wm.vector_weight(v) + epsilon(p);
        expect.parts[q - 1] -= 1;
        EXPECT_EQ(wm.vector_weight(e), expect) << name << " e" << p << q;
      }
    }
}

TEST(WModuleTest, MixedWeightIsRejected) {
  const LieVector v = LieVector::generator(M(), "K12") + LieVector::generator(M(), "K13");
  EXPECT_THROW((void)w_module().vector_weight(v), std::invalid_argument);
  EXPECT_THROW((void)w_module().vector_weight(LieVector(lie_algebra(M()), 1)), std::invalid_argument);
}

TEST(HighestWeight, TabulatedVectors) {
  const WModule& wm = w_module();
  for (const auto& v : highest_weight_vectors()) EXPECT_EQ(wm.is_highest_weight(v.vector), v.expected_weight) << v.name;
  EXPECT_EQ(wm.is_highest_weight(parse_lie_expression(M(), "[K312,K31,K312]")), w3(3, 2, -2));
  EXPECT_FALSE(wm.is_highest_weight(LieVector::generator(M(), "K12")).has_value());
}

TEST(HighestWeight, MembershipAndSecondJohnsonImage) {
  const auto& specs = default_relators();
  for (const auto& v : highest_weight_vectors()) {
    if (v.lift.empty()) continue;
    const bool member = membership_in_R_R3(v.vector, specs).has_value();
    if (v.name == "v1") {
      EXPECT_FALSE(member);
      EXPECT_FALSE(johnson_vanish(v.lift));
    }
    if (v.name == "v2" || v.name == "v4") {
      EXPECT_TRUE(member) << v.name;
      EXPECT_TRUE(johnson_vanish(v.lift)) << v.name;
    }
  }
}

TEST(GlrepProperties, Leibniz) {
  props::Rng rng(51);
  const auto r = props::derivation_leibniz(rng, 1000);
  EXPECT_TRUE(r.ok()) << r.counterexample;
}

}  // namespace
}  // namespace ia3

// Copyright 2026 The ia3 Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <string>

#include "ia3/autfn.hpp"
#include "ia3/properties.hpp"

namespace ia3 {
namespace {

AlphabetPtr F() { return free_basis(3); }
Word x(int i, int sign = 1) { return Word::generator(F(), "x" + std::to_string(i), sign); }
LieVector lx(int i) { return LieVector::generator(F(), "x" + std::to_string(i)); }

TEST(Autfn, MagnusGeneratorImages) {
  const Automorphism k12 = magnus_gen(magnus_letter(1, 2));
  EXPECT_EQ(k12.image(1), x(2, -1) * x(1) * x(2));
  EXPECT_EQ(k12.image(2), x(2));
  const Automorphism k312 = magnus_gen(magnus_letter(3, 1, 2));
  EXPECT_EQ(k312.image(3), x(3) * commutator(x(1), x(2)));
  // K_321 is the inverse of K_312
  EXPECT_TRUE(compose(magnus_gen(magnus_letter(3, 2, 1)), k312).is_identity());
}

TEST(Autfn, ComposeIsARightAction) {
  const Automorphism ab = compose(magnus_gen(magnus_letter(1, 2)), magnus_gen(magnus_letter(1, 3)));
  // x1 -> x2^-1 x1 x2 -> x2^-1 (x3^-1 x1 x3) x2
  EXPECT_EQ(ab.image(1), x(2, -1) * x(3, -1) * x(1) * x(3) * x(2));
}

TEST(Autfn, InnerAutomorphismsAreProductsOfMagnusGenerators) {
  for (int i = 1; i <= 3; ++i) EXPECT_EQ(eval_word(inner_word(i)), inner(i)) << i;
}

TEST(Autfn, RejectsNonInvertibleImages) {
  EXPECT_THROW(Automorphism({x(1) * x(1), x(2), x(3)}), std::invalid_argument);
}

TEST(Autfn, RhoOfElementaryMatrix) {
  IntegerMatrix e = IntegerMatrix::identity(3);
  e(0, 1) = 1;
  EXPECT_EQ(rho(elementary(1, 2)), e);
  EXPECT_TRUE(is_IA(magnus_gen(magnus_letter(2, 3, 1))));
  EXPECT_FALSE(is_IA(elementary(2, 3)));
}

TEST(Autfn, FirstJohnsonImagesByHand) {
  // tau_1(K_ij) = x_i* (x) [x_i,x_j], tau_1(K_ijl) = x_i* (x) [x_j,x_l]
  const JohnsonImage t = tau(magnus_gen(magnus_letter(2, 3)), 1);
  EXPECT_TRUE(t.components()[0].is_zero());
  EXPECT_EQ(t.components()[1], bracket(lx(2), lx(3)));
  EXPECT_TRUE(t.components()[2].is_zero());
  const JohnsonImage u = tau(magnus_gen(magnus_letter(3, 1, 2)), 1);
  EXPECT_EQ(u.components()[2], bracket(lx(1), lx(2)));
  EXPECT_EQ(u.components()[2], -parse_lie_expression(F(), "[x2,x1]"));
}

TEST(Autfn, JohnsonToMagnusRenamesGenerators) {
  const AlphabetPtr mag = magnus_alphabet(3);
  for (const auto& name : mag->names()) {
    const MagnusLetter m = parse_magnus_letter(*mag, mag->at(name), 1);
    EXPECT_EQ(johnson_to_magnus(tau(magnus_gen(m), 1)), LieVector::generator(mag, name)) << name;
  }
  EXPECT_EQ(johnson_to_magnus(tau(inner(1), 1)), LieVector::generator(mag, "K21") + LieVector::generator(mag, "K31"));
}

TEST(Autfn, TauPreconditionNamesTheGenerator) {
  try {
    (void)tau(magnus_gen(magnus_letter(1, 2)), 2);
    FAIL() << "expected domain_error";
  } catch (const std::domain_error& e) {
    EXPECT_NE(std::string(e.what()).find("x1"), std::string::npos) << e.what();
  }
}

TEST(Autfn, CommutatorsOfGeneratorsAdmitTau2) {
  const AlphabetPtr mag = magnus_alphabet(3);
  for (const auto& a : mag->names())
    for (const auto& b : mag->names())
      EXPECT_NO_THROW((void)tau(eval_word(commutator(Word::generator(mag, a), Word::generator(mag, b))), 2))
          << a << " " << b;
}

TEST(Autfn, TauVanishesOnTheDeeperFiltration) {
  // [K12,K13] acts trivially modulo Gamma(3), so its tau_1 is zero.
  const AlphabetPtr mag = magnus_alphabet(3);
  const Automorphism c = eval_word(commutator(Word::generator(mag, "K12"), Word::generator(mag, "K13")));
  EXPECT_TRUE(tau(c, 1).is_zero());
  EXPECT_FALSE(tau(c, 2).is_zero());
}

TEST(AutfnProperties, Tau1IsAdditive) {
  props::Rng rng(41);
  const auto r = props::tau1_homomorphism(rng, 1000);
  EXPECT_TRUE(r.ok()) << r.counterexample;
}

TEST(AutfnProperties, RhoIsMultiplicative) {
  props::Rng rng(42);
  const auto r = props::rho_multiplicativity(rng, 1000);
  EXPECT_TRUE(r.ok()) << r.counterexample;
}

}  // namespace
}  // namespace ia3

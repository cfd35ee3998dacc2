// Copyright 2026 The ia3 Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "ia3/properties.hpp"
#include "ia3/words.hpp"

namespace ia3 {
namespace {

Word x(int i, int sign = 1) { return Word::generator(free_basis(3), "x" + std::to_string(i), sign); }

// Stack reduction written independently of Word::push.
std::vector<Letter> naive_reduce(std::vector<Letter> in) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < in.size(); ++i)
      if (in[i].gen == in[i + 1].gen && in[i].sign == -in[i + 1].sign) {
        in.erase(in.begin() + static_cast<long>(i), in.begin() + static_cast<long>(i) + 2);
        changed = true;
        break;
      }
  }
  return in;
}

TEST(Words, ReductionCancelsAdjacentInverses) {
  const Word w = x(1) * x(2) * x(2, -1) * x(3);
  EXPECT_EQ(w.to_string(), "x1*x3");
  EXPECT_TRUE((x(1) * x(1, -1)).is_identity());
  EXPECT_EQ(Word(free_basis(3)).to_string(), "1");
}

TEST(Words, CommutatorConvention) {
  EXPECT_EQ(commutator(x(1), x(2)).to_string(), "x1*x2*x1^-1*x2^-1");
  EXPECT_TRUE(commutator(x(1), x(1)).is_identity());
  EXPECT_EQ(left_normed({x(1), x(2), x(3)}), commutator(commutator(x(1), x(2)), x(3)));
  EXPECT_THROW(left_normed({}), std::invalid_argument);
}

TEST(Words, ProductIdentityExample) {
  // [x1 x2, x3] = [x1,[x2,x3]][x2,x3][x1,x3]
  EXPECT_EQ(commutator(x(1) * x(2), x(3)),
            commutator(x(1), commutator(x(2), x(3))) * commutator(x(2), x(3)) * commutator(x(1), x(3)));
}

TEST(Words, ParseRoundTrip) {
  const Word w = x(1) * x(2, -1) * x(3) * x(3);
  EXPECT_EQ(Word::parse(free_basis(3), w.to_string()), w);
  EXPECT_EQ(Word::parse(free_basis(3), "1"), Word(free_basis(3)));
  EXPECT_THROW(Word::parse(free_basis(3), "x1**x2"), std::invalid_argument);
  EXPECT_THROW(Word::parse(free_basis(3), "x4"), std::exception);
}

TEST(Words, AlphabetsDoNotMix) {
  const Word k = Word::generator(magnus_alphabet(3), "K12");
  EXPECT_THROW((void)(x(1) * k), std::invalid_argument);
}

TEST(Words, MagnusAlphabetOrder) {
  const std::vector<std::string> expected = {"K12", "K13", "K21", "K23", "K31", "K32", "K123", "K213", "K312"};
  EXPECT_EQ(magnus_alphabet(3)->names(), expected);
}

TEST(Words, ExponentSums) {
  const Word w = x(1) * x(2) * x(1) * x(3, -1);
  EXPECT_EQ(w.exponent_sums(), (std::vector<long long>{2, 1, -1}));
  EXPECT_EQ(commutator(w, x(2)).exponent_sums(), (std::vector<long long>{0, 0, 0}));
}

TEST(WordProperties, ReductionAgreesWithNaiveOracle) {
  std::mt19937_64 rng(11);
  const AlphabetPtr f = free_basis(3);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<Letter> raw;
    const int len = props::uniform(rng, 0, 14);
    for (int i = 0; i < len; ++i)
      raw.push_back({GenId{static_cast<std::uint16_t>(props::uniform(rng, 0, 1))}, props::uniform(rng, 0, 1) ? 1 : -1});
    const Word w = reduce(f, raw);
    EXPECT_EQ(w.letters(), naive_reduce(raw));
    EXPECT_EQ(reduce(f, w.letters()), w);
  }
}

TEST(WordProperties, GroupLaws) {
  std::mt19937_64 rng(12);
  const AlphabetPtr f = free_basis(3);
  for (int trial = 0; trial < 1000; ++trial) {
    const Word a = props::random_word(rng, f, 8), b = props::random_word(rng, f, 8), c = props::random_word(rng, f, 8);
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_TRUE((a * a.inverse()).is_identity());
  }
}

TEST(WordProperties, ProductIdentities) {
  props::Rng rng(13);
  const auto r = props::free_group_product_identities(rng, 1000);
  EXPECT_TRUE(r.ok()) << r.counterexample;
  EXPECT_EQ(r.instances, 1000u);
}

TEST(WordProperties, InverseIdentities) {
  props::Rng rng(14);
  const auto r = props::free_group_inverse_identities(rng, 1000);
  EXPECT_TRUE(r.ok()) << r.counterexample;
}

}  // namespace
}  // namespace ia3

// Copyright 2026 The ia3 Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <string>

#include "ia3/bracketmap.hpp"

namespace ia3 {
namespace {

const BracketMatrix& matrix() {
  static const BracketMatrix bm = build_bracket_matrix(default_relators());
  return bm;
}

TEST(BracketMap, ShapeAndLabels) {
  const auto& bm = matrix();
  EXPECT_EQ(bm.matrix.rows(), 240u);
  EXPECT_EQ(bm.matrix.cols(), 162u);
  EXPECT_EQ(bm.row_labels.front(), "[K13,K12,K12]");
  EXPECT_EQ(bm.column_labels.front(), (std::pair<std::string, std::string>{"R1-1", "K12"}));
  EXPECT_EQ(bm.column_labels[9], (std::pair<std::string, std::string>{"R1-2", "K12"}));
}

TEST(BracketMap, ColumnIsTheBracketOfClassAndGenerator) {
  // [[K32,K12],K13] rewritten in the Hall basis: [K32,K12,K13] is basic.
  const auto& bm = matrix();
  const AlphabetPtr mag = magnus_alphabet(3);
  const auto alg = lie_algebra(mag);
  const std::size_t col = 1;  // (R1-1, K13)
  const HallKey row = parse_hall_tree(mag, "[K32,K12,K13]");
  for (std::size_t r = 0; r < bm.matrix.rows(); ++r)
    EXPECT_EQ(bm.matrix(r, col), r == static_cast<std::size_t>(row.index) ? 1 : 0) << alg->tree_string({3, int(r)});
}

TEST(BracketMap, Injective) {
  const InjectivityReport r = verify_injectivity(matrix());
  EXPECT_EQ(r.rank, 162u);
  EXPECT_EQ(r.rank_mod_p, 162u);
  EXPECT_TRUE(r.injective());
  EXPECT_EQ(r.k12_subrank, 18u);
  EXPECT_EQ(r.drop_one_rank, 153u);
}

TEST(BracketMap, CokernelIsFreeOfRank78) {
  const CokernelReport c = cokernel(matrix());
  EXPECT_EQ(c.rank(), 162u);
  EXPECT_EQ(c.cokernel_rank(), 78u);
  EXPECT_TRUE(c.free());
  EXPECT_TRUE(c.snf.all_units());
}

TEST(Table1, TranscriptionIsACokernelBasis) {
  const Table1Report r = table1_verify(matrix(), default_table1());
  EXPECT_EQ(r.records, 240u);
  EXPECT_EQ(r.marked, 162u);
  EXPECT_EQ(r.unmarked, 78u);
  EXPECT_EQ(r.augmented_rank, 240u);
  EXPECT_EQ(abs(r.augmented_det), 1);
  EXPECT_EQ(r.certified, 162u);
  EXPECT_TRUE(r.ok());
}

TEST(Table1, RowOrderDoesNotMatter) {
  auto rows = default_table1();
  std::mt19937_64 rng(3);
  std::shuffle(rows.begin(), rows.end(), rng);
  const Table1Report a = table1_verify(matrix(), default_table1()), b = table1_verify(matrix(), rows);
  EXPECT_TRUE(b.ok());
  EXPECT_EQ(a.roles, b.roles);
}

TEST(Table1, MovedMarkIsDetected) {
  auto rows = default_table1();
  // Unmark [K13,K12,K12] and mark [K21,K12,K12] instead: counts stay put.
  ASSERT_TRUE(rows[0].mark && !rows[9].mark);
  std::swap(rows[0].mark, rows[9].mark);
  const Table1Report r = table1_verify(matrix(), rows);
  EXPECT_EQ(r.marked, 162u);
  EXPECT_FALSE(r.ok());
}

TEST(Table1, LoaderValidatesTrees) {
  EXPECT_THROW((void)load_table1("left,middle,right,mark\nK12,K13,K12,\n"), std::invalid_argument);
  EXPECT_THROW((void)load_table1("a,b,c\n"), std::invalid_argument);
  const auto rows = load_table1("left,middle,right,mark\nK13,K12,K12,(4)\nK21,K12,K12,\n");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].mark, "(4)");
  EXPECT_FALSE(rows[1].mark);
}

TEST(Table1, DuplicatesAndGapsAreReported) {
  auto rows = default_table1();
  rows[1] = rows[0];
  const Table1Report r = table1_verify(matrix(), rows);
  EXPECT_EQ(r.duplicates.size(), 1u);
  EXPECT_EQ(r.missing.size(), 1u);
  EXPECT_FALSE(r.ok());
}

TEST(NewComponent, SubchecksThatHold) {
  const auto checks = theorem_main1_suite(matrix());
  ASSERT_EQ(checks.size(), 9u);
  for (const auto& c : checks)
    if (c.id != "a") EXPECT_EQ(c.status, Status::Pass) << c.id << ": " << c.summary;
}

TEST(NewComponent, LiteralWitnessIsNotARelator) {
  // Recorded discrepancy: the literal r has the right class but is not
  // trivial; the acceptance run reports this as a failed sub-check.
  const Word r = theorem_r_word();
  EXPECT_FALSE(verify_relator(r));
  EXPECT_FALSE(gamma_degree(r, 2).has_value());
}

TEST(NewComponent, CorrectedWitness) {
  const Word r = theorem_r_corrected_word();
  EXPECT_TRUE(verify_relator(r));
  ASSERT_FALSE(gamma_degree(r, 2).has_value());
  EXPECT_EQ(tensor_to_hall(lcs_class(r, 3)), -parse_lie_expression(magnus_alphabet(3), "[K312,K31,K312]"));
}

TEST(NewComponent, CorollaryArithmetic) {
  const auto c = corollary_arithmetic(162, 18, 9, 240);
  EXPECT_EQ(c.bound, 197);
  EXPECT_EQ(c.new_component, 35);
  EXPECT_EQ(c.dual_dim, 162);
  EXPECT_TRUE(c.ok);
  EXPECT_FALSE(corollary_arithmetic(161, 18, 9, 240).ok);
}

}  // namespace
}  // namespace ia3

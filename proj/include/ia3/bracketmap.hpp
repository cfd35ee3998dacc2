// Copyright 2026 The ia3 Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ia3/autfn.hpp"
#include "ia3/embedded_data.hpp"
#include "ia3/glrep.hpp"
#include "ia3/lie.hpp"
#include "ia3/linalg.hpp"
#include "ia3/magnus.hpp"
#include "ia3/relations.hpp"
#include "ia3/report.hpp"
#include "json.hpp"

namespace ia3 {

// [ , ] : R/R_3 (x) L_F(1) -> L_F(3). Rows follow the weight-3 Hall basis,
// columns run relator-major over the alphabet.
struct BracketMatrix {
  IntegerMatrix matrix;
  std::vector<std::string> row_labels;
  std::vector<std::pair<std::string, std::string>> column_labels;  // (relator id, generator)

  std::vector<std::size_t> columns_where(auto pred) const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < column_labels.size(); ++c)
      if (pred(column_labels[c])) out.push_back(c);
    return out;
  }

  // {"rows": [...], "columns": [{"relator":..., "generator":...}]}
  nlohmann::json labels_json() const {
    nlohmann::json cols = nlohmann::json::array();
    for (const auto& [r, g] : column_labels) cols.push_back({{"relator", r}, {"generator", g}});
    return {{"rows", row_labels}, {"columns", cols}};
  }
};

inline std::vector<BigInt> integral_coordinates(const LieVector& v) {
  std::vector<BigInt> out;
  for (const Rational& q : v.dense()) out.push_back(to_integer(q));
  return out;
}

inline BracketMatrix build_bracket_matrix(const std::vector<RelatorSpec>& specs) {
  const AlphabetPtr mag = magnus_alphabet(3);
  const auto alg = lie_algebra(mag);
  BracketMatrix bm;
  bm.row_labels = hall_basis_strings(mag, 3);
  bm.matrix = IntegerMatrix(alg->dimension(3), specs.size() * mag->size());
  std::size_t col = 0;
  for (const auto& spec : specs) {
    const LieVector cls = degree2_class(spec);
    for (std::size_t g = 0; g < mag->size(); ++g, ++col) {
      const auto coords = integral_coordinates(bracket(cls, LieVector::basis(alg, {1, static_cast<int>(g)})));
      for (std::size_t r = 0; r < coords.size(); ++r) bm.matrix(r, col) = coords[r];
      bm.column_labels.emplace_back(spec.id, mag->names()[g]);
    }
  }
  return bm;
}

struct InjectivityReport {
  std::size_t rank = 0;
  std::size_t rank_mod_p = 0;
  std::size_t columns = 0;
  std::size_t k12_subrank = 0;         // the 18 columns [r, K12]
  std::size_t drop_one_rank = 0;       // with the first relator's 9 columns removed
  std::string dropped_relator;
  bool injective() const { return rank == columns; }
};

inline InjectivityReport verify_injectivity(const BracketMatrix& bm) {
  InjectivityReport r;
  r.columns = bm.matrix.cols();
  r.rank = rank_exact(bm.matrix);
  r.rank_mod_p = rank_mod_prime(bm.matrix);
  r.k12_subrank = rank_exact(bm.matrix.select_columns(bm.columns_where([](const auto& l) { return l.second == "K12"; })));
  r.dropped_relator = bm.column_labels.front().first;
  r.drop_one_rank = rank_exact(
      bm.matrix.select_columns(bm.columns_where([&](const auto& l) { return l.first != r.dropped_relator; })));
  return r;
}

struct CokernelReport {
  SnfResult snf;
  std::size_t rows = 0;
  std::size_t rank() const { return snf.rank(); }
  std::size_t cokernel_rank() const { return rows - rank(); }
  std::vector<BigInt> torsion() const {
    std::vector<BigInt> out;
    for (const auto& d : snf.invariant_factors)
      if (d > 1) out.push_back(d);
    return out;
  }
  bool free() const { return torsion().empty(); }
};

inline CokernelReport cokernel(const BracketMatrix& bm) { return {snf(bm.matrix), bm.matrix.rows()}; }

struct Table1Row {
  HallKey tree;
  std::string label;
  std::optional<std::string> mark;  // step tag such as "(7i)"
};

// CSV with header left,middle,right,mark; [left,middle,right] must be a
// weight-3 Hall tree.
inline std::vector<Table1Row> load_table1(std::string_view text) {
  const AlphabetPtr mag = magnus_alphabet(3);
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<Table1Row> out;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (lineno == 1) {
      if (line != "left,middle,right,mark") throw std::invalid_argument("table1: unexpected header \"" + line + "\"");
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() == 3) cells.emplace_back();
    if (cells.size() != 4) throw std::invalid_argument("table1 line " + std::to_string(lineno) + ": expected 4 fields");
    const std::string label = "[" + cells[0] + "," + cells[1] + "," + cells[2] + "]";
    Table1Row row;
    try {
      row.tree = parse_hall_tree(mag, label);
    } catch (const std::exception& e) {
      throw std::invalid_argument("table1 line " + std::to_string(lineno) + ": " + e.what());
    }
    if (row.tree.weight != 3) throw std::invalid_argument("table1 line " + std::to_string(lineno) + ": not weight 3");
    row.label = label;
    if (!cells[3].empty()) row.mark = cells[3];
    out.push_back(std::move(row));
  }
  return out;
}

inline const std::vector<Table1Row>& default_table1() {
  static const std::vector<Table1Row> rows = load_table1(embedded::kTable1Csv);
  return rows;
}

struct Table1Report {
  std::size_t records = 0;
  std::size_t marked = 0;
  std::size_t unmarked = 0;
  std::vector<std::string> duplicates, missing;
  std::size_t augmented_rank = 0;
  BigInt augmented_det;
  std::size_t certified = 0;
  std::vector<std::string> failures;  // trees whose certificate failed
  // Per tree: "eliminated" (marked) or "cokernel-basis".
  std::vector<std::pair<std::string, std::string>> roles;

  bool ok() const {
    return records == 240 && marked == 162 && unmarked == 78 && duplicates.empty() && missing.empty() &&
           augmented_rank == 240 && failures.empty() && certified == marked;
  }
};

// Checks that the unmarked trees give a Z-basis of the cokernel, and gives
// every marked tree an explicit integral certificate
//   e_t = M x + sum_u c_u e_u.
// Row order of `data` is irrelevant.
inline Table1Report table1_verify(const BracketMatrix& bm, const std::vector<Table1Row>& data) {
  Table1Report rep;
  const auto alg = lie_algebra(magnus_alphabet(3));
  const std::size_t n = alg->dimension(3);
  std::map<int, const Table1Row*> by_index;
  for (const auto& row : data) {
    ++rep.records;
    if (!by_index.emplace(row.tree.index, &row).second) rep.duplicates.push_back(row.label);
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!by_index.count(static_cast<int>(i))) rep.missing.push_back(alg->tree_string({3, static_cast<int>(i)}));

  std::vector<std::size_t> marked_rows, unmarked_rows;
  for (const auto& [i, row] : by_index) {
    (row->mark ? marked_rows : unmarked_rows).push_back(static_cast<std::size_t>(i));
    rep.roles.emplace_back(row->label, row->mark ? "eliminated" : "cokernel-basis");
  }
  rep.marked = marked_rows.size();
  rep.unmarked = unmarked_rows.size();

  IntegerMatrix units(n, unmarked_rows.size());
  for (std::size_t k = 0; k < unmarked_rows.size(); ++k) units(unmarked_rows[k], k) = 1;
  const IntegerMatrix aug = bm.matrix.hstack(units);
  rep.augmented_rank = rank_exact(aug);
  if (aug.rows() == aug.cols()) rep.augmented_det = determinant(aug);

  // Restricted to the marked rows the system is square: M_marked x = e_t.
  if (marked_rows.size() != bm.matrix.cols()) {
    for (std::size_t i : marked_rows) rep.failures.push_back(alg->tree_string({3, static_cast<int>(i)}));
    return rep;
  }
  const RationalMatrix sub = to_rational(bm.matrix.select_rows(marked_rows));
  const auto inv = solve_square(sub, RationalMatrix::identity(sub.rows()));
  for (std::size_t k = 0; k < marked_rows.size(); ++k) {
    const std::string label = alg->tree_string({3, static_cast<int>(marked_rows[k])});
    if (!inv) {
      rep.failures.push_back(label);
      continue;
    }
    std::vector<BigInt> x(bm.matrix.cols());
    bool integral = true;
    for (std::size_t c = 0; c < x.size(); ++c) {
      const Rational& q = (*inv)(c, k);
      if (!is_integral(q)) integral = false;
      x[c] = numerator(q);
    }
    if (!integral) {
      rep.failures.push_back(label);
      continue;
    }
    // Replay e_t = M x + sum_u c_u e_u with c_u = -(M x)_u.
    std::vector<BigInt> img = bm.matrix.apply(x);
    for (std::size_t u : unmarked_rows) img[u] = 0;
    bool ok = true;
    for (std::size_t r = 0; r < n; ++r) ok = ok && img[r] == (r == marked_rows[k] ? 1 : 0);
    if (ok)
      ++rep.certified;
    else
      rep.failures.push_back(label);
  }
  return rep;
}

// The element r of the Gamma_F(3) argument, literal form:
//   [K312, K31^-1, K312] [[K31^-1, K312], [K32^-1, K31^-1]]^-1
inline Word theorem_r_word() {
  const AlphabetPtr mag = magnus_alphabet(3);
  auto g = [&](const char* nm, int s = 1) { return Word::generator(mag, nm, s); };
  const Word a = left_normed({g("K312"), g("K31", -1), g("K312")});
  const Word b = commutator(commutator(g("K31", -1), g("K312")), commutator(g("K32", -1), g("K31", -1)));
  return a * b.inverse();
}

// A relator with the same bracket skeleton and the intended class:
//   [K312, K31, K312^-1] [[K31, K312^-1], [K32^-1, K31^-1]]
inline Word theorem_r_corrected_word() {
  const AlphabetPtr mag = magnus_alphabet(3);
  auto g = [&](const char* nm, int s = 1) { return Word::generator(mag, nm, s); };
  const Word a = left_normed({g("K312"), g("K31"), g("K312", -1)});
  const Word b = commutator(commutator(g("K31"), g("K312", -1)), commutator(g("K32", -1), g("K31", -1)));
  return a * b;
}

struct SkeletonSearch {
  std::size_t tried = 0;
  std::vector<std::string> relators;          // words that evaluate to the identity
  std::vector<std::string> with_target_class; // ... and have class -[K312,K31,K312]
};

// Exponent signs on every letter of A = [[K312,K31],K312] and
// B = [[K31,K312],[K32,K31]], combined as A B^(+-1) and B^(+-1) A.
inline SkeletonSearch search_r_skeleton(const LieVector& target) {
  const AlphabetPtr mag = magnus_alphabet(3);
  auto g = [&](const char* nm, int s) { return Word::generator(mag, nm, s); };
  SkeletonSearch out;
  for (int bits = 0; bits < (1 << 7); ++bits) {
    auto e = [&](int k) { return (bits >> k) & 1 ? -1 : 1; };
    const Word a = left_normed({g("K312", e(0)), g("K31", e(1)), g("K312", e(2))});
    const Word b = commutator(commutator(g("K31", e(3)), g("K312", e(4))), commutator(g("K32", e(5)), g("K31", e(6))));
    for (const Word& w : {a * b, a * b.inverse(), b * a, b.inverse() * a}) {
      ++out.tried;
      if (!verify_relator(w)) continue;
      out.relators.push_back(w.to_string());
      if (!gamma_degree(w, 2) && tensor_to_hall(lcs_class(w, 3)) == target) out.with_target_class.push_back(w.to_string());
    }
  }
  return out;
}

// Sub-checks (a)..(i) of the new-component argument, each independent.
inline std::vector<Check> theorem_main1_suite(const BracketMatrix& bm) {
  const AlphabetPtr mag = magnus_alphabet(3);
  const auto alg = lie_algebra(mag);
  auto g = [&](const char* nm) { return Word::generator(mag, nm); };
  const Word r = theorem_r_word();
  const LieVector w_k31 = parse_lie_expression(mag, "[K312,K31,K312]");
  const LieVector w_k21 = parse_lie_expression(mag, "[K312,K21,K312]");
  const Word iota1 = inner_word(1);
  std::vector<Check> out;
  auto add = [&](std::string id, bool ok, std::string summary, nlohmann::json details = nlohmann::json::object()) {
    out.push_back({std::move(id), status_of(ok), std::move(summary), std::move(details)});
  };

  const Automorphism r_image = eval_word(r);
  add("a", r_image.is_identity(), "r evaluates to the identity automorphism",
      {{"word", r.to_string()}, {"image", r_image.to_json()}});

  const auto deg = gamma_degree(r, 2);
  add("b", !deg, "r lies in Gamma_F(3)", {{"gamma_degree_cap2", deg ? nlohmann::json(*deg) : nlohmann::json(">=3")}});

  std::optional<LieVector> r_class;
  if (!deg) r_class = tensor_to_hall(lcs_class(r, 3));
  add("c", r_class && *r_class == -w_k31, "class of r is -[K312,K31,K312]",
      {{"class", r_class ? r_class->to_json() : nlohmann::json()}});

  add("d", verify_relator(commutator(g("K312"), iota1)), "[K312, iota_1] evaluates to the identity",
      {{"iota_1", iota1.to_string()}});

  const LieVector w_iota = tensor_to_hall(lcs_class(left_normed({g("K312"), iota1, g("K312")}), 3));
  add("e", w_iota == w_k21 + w_k31, "[K312,iota_1,K312] = [K312,K21,K312] + [K312,K31,K312]",
      {{"lhs", w_iota.to_json()}});

  RationalMatrix stack(2, alg->dimension(3));
  const auto d1 = w_k31.dense(), d2 = w_iota.dense();
  for (std::size_t c = 0; c < d1.size(); ++c) {
    stack(0, c) = d1[c];
    stack(1, c) = d2[c];
  }
  const std::size_t stack_rank = rank_exact(stack);
  add("f", stack_rank == 2, "[K312,K31,K312] and [K312,iota_1,K312] are linearly independent",
      {{"rank", stack_rank}});

  const auto coords = in_span(w_iota.dense(), to_rational(bm.matrix));
  add("g", coords.has_value(), "[K312,iota_1,K312] lies in the image of the bracket map");

  const WModule& wm = w_module();
  const auto hw1 = wm.is_highest_weight(w_k31), hw2 = wm.is_highest_weight(w_iota);
  const Weight target{{3, 2, -2}};
  add("h", hw1 == target && hw2 == target, "both vectors are highest weight vectors of weight [3,2,-2]",
      {{"[K312,K31,K312]", hw1 ? hw1->to_string() : "none"}, {"[K312,iota_1,K312]", hw2 ? hw2->to_string() : "none"}});

  const BigInt dim = weyl_dim(target);
  add("i", dim == 35, "weyl_dim([3,2,-2]) = 35", {{"dim", dim.str()}});
  return out;
}

// Findings around the literal r: the corrected witness and the sign search.
inline std::vector<Check> theorem_r_findings() {
  const AlphabetPtr mag = magnus_alphabet(3);
  const LieVector target = -parse_lie_expression(mag, "[K312,K31,K312]");
  const Word fixed = theorem_r_corrected_word();
  const bool fixed_ok = verify_relator(fixed) && !gamma_degree(fixed, 2) && tensor_to_hall(lcs_class(fixed, 3)) == target;
  const SkeletonSearch search = search_r_skeleton(target);
  const Word literal = theorem_r_word();
  const bool literal_in_gamma3 = !gamma_degree(literal, 2);
  std::vector<Check> out;
  out.push_back({"r-literal", Status::Finding,
                 "the literal witness r is not a relator" + std::string(literal_in_gamma3 ? " (it does lie in Gamma_F(3) with class -[K312,K31,K312])" : ""),
                 {{"word", literal.to_string()}, {"relator", verify_relator(literal)}, {"in_gamma3", literal_in_gamma3}}});
  out.push_back({"r-corrected", fixed_ok ? Status::Finding : Status::Fail,
                 "corrected witness is a relator in Gamma_F(3) with class -[K312,K31,K312]",
                 {{"word", fixed.to_string()}, {"ok", fixed_ok}}});
  out.push_back({"r-sign-search", Status::Finding,
                 std::to_string(search.with_target_class.size()) + " of " + std::to_string(search.tried) +
                     " sign variants are relators with class -[K312,K31,K312]",
                 {{"tried", search.tried}, {"relators", search.relators}, {"with_target_class", search.with_target_class}}});
  return out;
}

struct CorollaryArithmetic {
  long long external_gr3 = 43;  // dim gr^3 of the Andreadakis filtration, taken as input
  long long lf3 = 240;
  long long bound = 0;          // 240 - 43
  long long image_rank = 0;
  long long dual_dim = 0;       // dim W * dim R/R_3
  BigInt new_component;         // weyl_dim([3,2,-2])
  bool ok = false;
};

inline CorollaryArithmetic corollary_arithmetic(std::size_t image_rank, std::size_t relator_rank, std::size_t w_dim,
                                                std::size_t lf3_dim, long long external_gr3 = 43) {
  CorollaryArithmetic c;
  c.external_gr3 = external_gr3;
  c.lf3 = static_cast<long long>(lf3_dim);
  c.bound = c.lf3 - external_gr3;
  c.image_rank = static_cast<long long>(image_rank);
  c.dual_dim = static_cast<long long>(w_dim * relator_rank);
  c.new_component = weyl_dim({{3, 2, -2}});
  c.ok = c.lf3 - c.bound == external_gr3 && c.bound == 197 && c.bound - c.new_component == c.image_rank &&
         c.image_rank == 162 && c.dual_dim == c.image_rank;
  return c;
}

}  // namespace ia3

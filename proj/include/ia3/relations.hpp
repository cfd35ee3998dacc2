// Copyright 2026 The ia3 Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ia3/autfn.hpp"
#include "ia3/embedded_data.hpp"
#include "ia3/lie.hpp"
#include "ia3/linalg.hpp"
#include "ia3/magnus.hpp"
#include "ia3/words.hpp"
#include "json.hpp"

namespace ia3 {

// R2Literal is the variant [K_ik K_kj, K_ij]; it is
// not a relator and is kept only so the discrepancy can be reported.
enum class RelatorTemplate { R1, R2, R3, R4, R2Literal };

inline RelatorTemplate parse_relator_template(std::string_view s) {
  if (s == "R1") return RelatorTemplate::R1;
  if (s == "R2") return RelatorTemplate::R2;
  if (s == "R3") return RelatorTemplate::R3;
  if (s == "R4") return RelatorTemplate::R4;
  if (s == "R2-literal") return RelatorTemplate::R2Literal;
  throw std::invalid_argument("unknown relator template \"" + std::string(s) + "\"");
}

inline std::string to_string(RelatorTemplate t) {
  switch (t) {
    case RelatorTemplate::R1: return "R1";
    case RelatorTemplate::R2: return "R2";
    case RelatorTemplate::R3: return "R3";
    case RelatorTemplate::R4: return "R4";
    case RelatorTemplate::R2Literal: return "R2-literal";
  }
  return "?";
}

// Single Magnus letter as a word; K_ijl with j > l is the inverse of K_ilj.
inline Word magnus_word(int i, int j, std::optional<int> l = std::nullopt, int n = 3) {
  const MagnusLetter m = magnus_letter(i, j, l);
  m.validate(n);
  return Word::generator(magnus_alphabet(n), m.name(), m.sign);
}

//   R1  [K_ij, K_kj]
//   R2  [K_ik K_jk, K_ij]
//   R3  [K_ij K_kj, K_ijk]
//   R4  [a, K_kij] a [K_ij, K_ki K_ji] a^-1,  a = K_ik K_jk
inline Word template_word(RelatorTemplate t, int i, int j, int k, int n = 3) {
  auto K2 = [n](int a, int b) { return magnus_word(a, b, std::nullopt, n); };
  auto K3 = [n](int a, int b, int c) { return magnus_word(a, b, c, n); };
  switch (t) {
    case RelatorTemplate::R1: return commutator(K2(i, j), K2(k, j));
    case RelatorTemplate::R2: return commutator(K2(i, k) * K2(j, k), K2(i, j));
    case RelatorTemplate::R2Literal: return commutator(K2(i, k) * K2(k, j), K2(i, j));
    case RelatorTemplate::R3: return commutator(K2(i, j) * K2(k, j), K3(i, j, k));
    case RelatorTemplate::R4: {
      const Word a = K2(i, k) * K2(j, k);
      return commutator(a, K3(k, i, j)) * a * commutator(K2(i, j), K2(k, i) * K2(j, i)) * a.inverse();
    }
  }
  throw std::logic_error("unhandled relator template");
}

struct RelatorSpec {
  std::string id;
  RelatorTemplate templ;
  std::array<int, 3> indices;
  bool inverted = false;  // the shipped word is the inverse of the template word
  Word word;
  LieVector stated_class;

  nlohmann::json to_json() const {
    return {{"id", id},
            {"template", to_string(templ)},
            {"indices", indices},
            {"inverted", inverted},
            {"word", word.to_string()},
            {"stated_class", stated_class.to_json()}};
  }
};

// Validates every entry: the word must be the template instantiation.
inline std::vector<RelatorSpec> load_relators(const nlohmann::json& j, int n = 3) {
  const AlphabetPtr mag = magnus_alphabet(n);
  std::vector<RelatorSpec> out;
  for (const auto& e : j) {
    const std::string id = e.at("id").get<std::string>();
    try {
      const auto templ = parse_relator_template(e.at("template").get<std::string>());
      const auto idx = e.at("indices").get<std::array<int, 3>>();
      const bool inverted = e.value("inverted", false);
      const Word word = Word::parse(mag, e.at("word").get<std::string>());
      Word expected = template_word(templ, idx[0], idx[1], idx[2], n);
      if (inverted) expected = expected.inverse();
      if (!(word == expected))
        throw std::invalid_argument("word " + word.to_string() + " is not the template instantiation " +
                                    expected.to_string());
      out.push_back({id, templ, idx, inverted, word, lie_vector_from_json(mag, 2, e.at("stated_class"))});
    } catch (const std::exception& ex) {
      throw std::invalid_argument("relator " + id + ": " + ex.what());
    }
  }
  return out;
}

inline std::vector<RelatorSpec> load_relators(std::string_view text, int n = 3) {
  return load_relators(nlohmann::json::parse(text), n);
}

inline const std::vector<RelatorSpec>& default_relators() {
  static const std::vector<RelatorSpec> specs = load_relators(embedded::kRelatorsJson);
  return specs;
}

inline const RelatorSpec& find_relator(const std::vector<RelatorSpec>& specs, std::string_view id) {
  for (const auto& s : specs)
    if (s.id == id) return s;
  throw std::invalid_argument("unknown relator id \"" + std::string(id) + "\"");
}

inline const Word& relator_word(const std::vector<RelatorSpec>& specs, std::string_view id) {
  return find_relator(specs, id).word;
}

inline bool verify_relator(const Word& w) { return eval_word(w).is_identity(); }

// Class of a relator in L_F(2); it must lie in Gamma(2).
inline LieVector degree2_class_of(const Word& w) { return tensor_to_hall(lcs_class(w, 2)); }

// Checked against the stated class; a mismatch throws naming the id.
inline LieVector degree2_class(const RelatorSpec& spec) {
  LieVector c = degree2_class_of(spec.word);
  if (!(c == spec.stated_class))
    throw std::runtime_error("relator " + spec.id + ": computed class " + c.to_string() + " differs from stated " +
                             spec.stated_class.to_string());
  return c;
}

// R is contained in [F,F].
inline bool exponent_sums_vanish(const Word& w) {
  auto e = w.exponent_sums();
  return std::all_of(e.begin(), e.end(), [](long long v) { return v == 0; });
}

// (1/8) n^2 (n-1) (n^3 - n^2 - 2) - (1/6) n (2n^3 - 5n - 3)
inline Rational relator_rank_formula(int n) {
  const Rational q = n;
  return Rational(1, 8) * q * q * (q - 1) * (q * q * q - q * q - 2) - Rational(1, 6) * q * (2 * q * q * q - 5 * q - 3);
}

// Columns are the classes in Hall coordinates of L_F(2).
inline RationalMatrix class_matrix(const std::vector<LieVector>& classes) {
  if (classes.empty()) return {};
  const std::size_t dim = classes.front().algebra()->dimension(classes.front().weight());
  RationalMatrix m(dim, classes.size());
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (const auto& [i, q] : classes[c].coeffs()) m(i, c) = q;
  return m;
}

inline std::vector<LieVector> stated_classes(const std::vector<RelatorSpec>& specs) {
  std::vector<LieVector> out;
  for (const auto& s : specs) out.push_back(s.stated_class);
  return out;
}

struct RelatorRank {
  std::size_t rank = 0;
  Rational formula_n3;
  Rational formula_n4;
};

inline RelatorRank relator_rank(const std::vector<RelatorSpec>& specs) {
  std::vector<LieVector> classes;
  for (const auto& s : specs) classes.push_back(degree2_class(s));
  return {rank_exact(class_matrix(classes)), relator_rank_formula(3), relator_rank_formula(4)};
}

struct Instantiation {
  std::array<int, 3> indices;
  bool inverted;
};

// All (i,j,k) permutations of {1,2,3}, plain or inverted, whose word is a
// relator with exactly the given class.
inline std::vector<Instantiation> consistent_instantiations(RelatorTemplate t, const LieVector& stated) {
  std::vector<Instantiation> out;
  std::array<int, 3> p = {1, 2, 3};
  do {
    const Word w = template_word(t, p[0], p[1], p[2]);
    if (!verify_relator(w)) continue;
    const LieVector c = degree2_class_of(w);
    if (c == stated) out.push_back({p, false});
    if (-c == stated) out.push_back({p, true});
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace ia3

// Copyright 2026 The ia3 Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "ia3/autfn.hpp"
#include "ia3/lie.hpp"
#include "ia3/linalg.hpp"
#include "ia3/relations.hpp"
#include "ia3/words.hpp"
#include "json.hpp"

namespace ia3 {

// Torus weight of GL(3); entries may be negative.
struct Weight {
  std::array<int, 3> parts{};

  bool dominant() const { return parts[0] >= parts[1] && parts[1] >= parts[2]; }

  std::string to_string() const {
    return "[" + std::to_string(parts[0]) + "," + std::to_string(parts[1]) + "," + std::to_string(parts[2]) + "]";
  }
  // D^e (x) [partition] with e = last entry, D the determinant.
  std::string twisted_string() const {
    const int e = parts[2];
    std::string p = "[" + std::to_string(parts[0] - e) + "," + std::to_string(parts[1] - e) + "]";
    return e == 0 ? p : "D^" + std::to_string(e) + " (x) " + p;
  }

  Weight operator+(const Weight& o) const {
    return {{parts[0] + o.parts[0], parts[1] + o.parts[1], parts[2] + o.parts[2]}};
  }
  friend auto operator<=>(const Weight&, const Weight&) = default;
};

// "[3,2,-2]", "3,2,-2" or a short form "[3,2]" padded with zeros.
inline Weight parse_weight(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '[' && c != ']' && c != '(' && c != ')') s += c;
  Weight w;
  std::size_t n = 0, pos = 0;
  while (pos <= s.size()) {
    const std::size_t end = std::min(s.find(',', pos), s.size());
    const std::string part = s.substr(pos, end - pos);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size() || n == 3)
      throw std::invalid_argument("malformed weight \"" + std::string(text) + "\"");
    w.parts[n++] = v;
    pos = end + 1;
  }
  return w;
}

inline Weight epsilon(int i) {
  Weight w;
  w.parts.at(i - 1) = 1;
  return w;
}

inline BigInt weyl_dim(const Weight& w) {
  if (!w.dominant()) throw std::invalid_argument("weyl_dim: weight " + w.to_string() + " is not dominant");
  Rational d = 1;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) d *= Rational(w.parts[i] - w.parts[j] + j - i, j - i);
  return to_integer(d);
}

// Laurent polynomial in three torus variables.
class Character {
 public:
  using Exponent = std::array<int, 3>;

  static Character monomial(const Exponent& e, long long c = 1) {
    Character ch;
    ch.add(e, c);
    return ch;
  }

  const std::map<Exponent, long long>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add(const Exponent& e, long long c) {
    if (c == 0) return;
    auto& slot = terms_[e];
    slot += c;
    if (slot == 0) terms_.erase(e);
  }

  long long coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? 0 : it->second;
  }

  long long eval_at_one() const {
    long long s = 0;
    for (const auto& [e, c] : terms_) s += c;
    return s;
  }

  bool is_symmetric() const {
    for (const auto& [e, c] : terms_) {
      Exponent p = e;
      std::sort(p.begin(), p.end());
      do {
        if (coeff(p) != c) return false;
      } while (std::next_permutation(p.begin(), p.end()));
    }
    return true;
  }

  Character& operator+=(const Character& o) {
    for (const auto& [e, c] : o.terms_) add(e, c);
    return *this;
  }
  Character& operator-=(const Character& o) {
    for (const auto& [e, c] : o.terms_) add(e, -c);
    return *this;
  }
  Character& operator*=(long long s) {
    if (s == 0) terms_.clear();
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }
  friend Character operator+(Character a, const Character& b) { return a += b; }
  friend Character operator-(Character a, const Character& b) { return a -= b; }
  friend Character operator*(Character a, long long s) { return a *= s; }
  friend Character operator*(const Character& a, const Character& b) {
    Character out;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) out.add({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
    return out;
  }
  friend bool operator==(const Character&, const Character&) = default;

  Character shifted(const Exponent& by) const {
    Character out;
    for (const auto& [e, c] : terms_) out.add({e[0] + by[0], e[1] + by[1], e[2] + by[2]}, c);
    return out;
  }

  // {"[1,0,0]": 2, ...}
  nlohmann::json to_json() const {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [e, c] : terms_) out[Weight{e}.to_string()] = c;
    return out;
  }

 private:
  std::map<Exponent, long long> terms_;
};

namespace detail {

// Exact quotient by (x_a - x_b), a < b, via lex-leading terms.
inline Character divide_by_difference(Character num, int a, int b) {
  Character q;
  while (!num.is_zero()) {
    auto [e, c] = *num.terms().rbegin();
    if (e[a] < 1) throw std::logic_error("bialternant division is not exact");
    Character::Exponent m = e;
    --m[a];
    q.add(m, c);
    Character::Exponent mb = m;
    ++mb[b];
    num.add(e, -c);
    num.add(mb, c);
  }
  return q;
}

}  // namespace detail

// Bialternant a_{lambda+delta} / a_delta, with a determinant twist for
// negative entries.
inline Character irr_char(const Weight& w) {
  if (!w.dominant()) throw std::invalid_argument("irr_char: weight " + w.to_string() + " is not dominant");
  const int shift = w.parts[2];
  const std::array<int, 3> top = {w.parts[0] - shift + 2, w.parts[1] - shift + 1, w.parts[2] - shift};
  Character num;
  std::array<int, 3> perm = {0, 1, 2};
  do {
    int inversions = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Character::Exponent e{};
    for (int i = 0; i < 3; ++i) e[perm[i]] = top[i];
    num.add(e, inversions % 2 ? -1 : 1);
  } while (std::next_permutation(perm.begin(), perm.end()));
  Character q = detail::divide_by_difference(num, 0, 1);
  q = detail::divide_by_difference(q, 0, 2);
  q = detail::divide_by_difference(q, 1, 2);
  return q.shifted({shift, shift, shift});
}

class Decomposition {
 public:
  void add(const Weight& w, long long mult) {
    if (mult <= 0) throw std::invalid_argument("multiplicity must be positive");
    parts_[w] += mult;
  }
  const std::map<Weight, long long, std::greater<>>& parts() const noexcept { return parts_; }

  long long multiplicity(const Weight& w) const {
    auto it = parts_.find(w);
    return it == parts_.end() ? 0 : it->second;
  }

  BigInt dimension() const {
    BigInt d = 0;
    for (const auto& [w, m] : parts_) d += weyl_dim(w) * m;
    return d;
  }

  friend bool operator==(const Decomposition&, const Decomposition&) = default;

  // [{"weight":[a,b,c], "mult":m, "dim":d}]
  nlohmann::json to_json() const {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [w, m] : parts_)
      out.push_back({{"weight", w.parts}, {"mult", m}, {"dim", static_cast<long long>(weyl_dim(w))}});
    return out;
  }

  // "[1,1]^2 + [2,1,-1]^2"
  std::string to_string() const {
    std::string out;
    for (const auto& [w, m] : parts_) {
      if (!out.empty()) out += " + ";
      out += w.to_string();
      if (m > 1) out += "^" + std::to_string(m);
    }
    return out.empty() ? "0" : out;
  }

 private:
  std::map<Weight, long long, std::greater<>> parts_;
};

inline Decomposition make_decomposition(std::initializer_list<std::pair<Weight, long long>> parts) {
  Decomposition d;
  for (const auto& [w, m] : parts) d.add(w, m);
  return d;
}

// Greedy peeling from the lexicographically largest monomial.
inline Decomposition decompose_char(Character chi) {
  if (!chi.is_symmetric()) throw std::invalid_argument("not a character of a module: not symmetric");
  Decomposition out;
  while (!chi.is_zero()) {
    const auto [e, c] = *chi.terms().rbegin();
    if (c < 0) throw std::invalid_argument("not a character of a module");
    const Weight w{e};
    out.add(w, c);
    chi -= irr_char(w) * c;
  }
  return out;
}

// Weights of the irreducible module with multiplicity.
inline std::vector<Character::Exponent> weight_multiset(const Character& chi) {
  std::vector<Character::Exponent> out;
  for (const auto& [e, c] : chi.terms()) {
    if (c < 0) throw std::invalid_argument("weight_multiset: negative multiplicity");
    out.insert(out.end(), static_cast<std::size_t>(c), e);
  }
  return out;
}

// k-th elementary symmetric function of the monomials x^w.
inline Character exterior_power(const std::vector<Character::Exponent>& weights, int k) {
  if (k < 0 || k > static_cast<int>(weights.size())) throw std::invalid_argument("exterior power degree out of range");
  std::vector<Character> e(k + 1);
  e[0] = Character::monomial({0, 0, 0});
  for (const auto& w : weights)
    for (int j = k; j >= 1; --j) e[j] += e[j - 1].shifted(w);
  return e[k];
}

inline Decomposition tensor_decompose(const Weight& a, const Weight& b) {
  return decompose_char(irr_char(a) * irr_char(b));
}

inline Decomposition ext_decompose(const Weight& a, int k) {
  return decompose_char(exterior_power(weight_multiset(irr_char(a)), k));
}

// Torus weight of a Magnus symbol: K_ij -> e_j, K_ijl -> -e_i + e_j + e_l.
inline Weight magnus_weight(const std::string& name) {
  const int i = name[1] - '0', j = name[2] - '0';
  if (name.size() == 3) return epsilon(j);
  const int l = name[3] - '0';
  Weight w = epsilon(j) + epsilon(l);
  w.parts[i - 1] -= 1;
  return w;
}

// Weight of a Hall tree over the Magnus alphabet: sum over its leaves.
inline Weight tree_weight(const FreeLieAlgebra& alg, HallKey key) {
  const HallNode& n = alg.node(key);
  if (n.leaf) return magnus_weight(alg.alphabet()->name(*n.leaf));
  return tree_weight(alg, n.left) + tree_weight(alg, n.right);
}

inline Character hall_character(int k) {
  auto alg = lie_algebra(magnus_alphabet(3));
  Character out;
  for (const HallNode& n : alg->basis(k)) out.add(tree_weight(*alg, n.key).parts, 1);
  return out;
}

inline std::vector<Character::Exponent> w_weights() {
  std::vector<Character::Exponent> out;
  for (const auto& nm : magnus_alphabet(3)->names()) out.push_back(magnus_weight(nm).parts);
  return out;
}

inline const std::vector<std::string>& module_names() {
  static const std::vector<std::string> names = {"W", "Lambda2W", "Lambda3W", "LF2", "LF3", "H", "Hdual", "Lambda2H"};
  return names;
}

inline Character module_char(std::string_view name) {
  const std::vector<Character::Exponent> h = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  if (name == "W") return exterior_power(w_weights(), 1);
  if (name == "Lambda2W") return exterior_power(w_weights(), 2);
  if (name == "Lambda3W") return exterior_power(w_weights(), 3);
  if (name == "LF2") return hall_character(2);
  if (name == "LF3") return hall_character(3);
  if (name == "H") return exterior_power(h, 1);
  if (name == "Hdual") return exterior_power({{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}}, 1);
  if (name == "Lambda2H") return exterior_power(h, 2);
  throw std::invalid_argument("unknown module \"" + std::string(name) + "\"");
}

// Which conjugation realizes the tabulated action sigma -> sigma^E.
enum class ConjugationSide { EinvSigmaE, ESigmaEinv };

inline std::string to_string(ConjugationSide s) {
  return s == ConjugationSide::EinvSigmaE ? "E^-1 sigma E" : "E sigma E^-1";
}

// W = H_1(IA_3) on the nine Magnus symbols, with the tabulated action of
// the elementary matrices. Matrices act on row vectors: v -> v * M.
class WModule {
 public:
  WModule() : alphabet_(magnus_alphabet(3)) {
    for (int p = 1; p <= 3; ++p)
      for (int q = 1; q <= 3; ++q)
        if (p != q) table_[{p, q}] = build_table(p, q);
    for (const auto& [pq, g] : table_) logs_[{pq.second, pq.first}] = logarithm(g);
  }

  const AlphabetPtr& alphabet() const noexcept { return alphabet_; }
  Weight weight(GenId g) const { return magnus_weight(alphabet_->name(g)); }

  // Group action of E_pq on the basis, as tabulated.
  const IntegerMatrix& group_action(int p, int q) const { return table_.at(check_pair(p, q)); }

  // Conjugates each Magnus generator by E_{x_p x_q} on the given side and
  // reads the result back through tau_1.
  static IntegerMatrix conjugation_matrix(int p, int q, ConjugationSide side) {
    const AlphabetPtr mag = magnus_alphabet(3);
    const Automorphism e = elementary(p, q), einv = elementary(p, q, 3, -1);
    IntegerMatrix m(9, 9);
    for (std::size_t b = 0; b < 9; ++b) {
      const Automorphism k = magnus_gen(parse_magnus_letter(*mag, mag->gen(b), 1));
      const Automorphism c = side == ConjugationSide::EinvSigmaE ? compose(compose(einv, k), e) : compose(compose(e, k), einv);
      const LieVector image = johnson_to_magnus(tau(c, 1));
      for (const auto& [i, x] : image.coeffs()) m(b, i) = to_integer(x);
    }
    return m;
  }

  // Exactly one side must reproduce the whole table.
  ConjugationSide select_conjugation_side() const {
    std::vector<ConjugationSide> ok;
    for (auto side : {ConjugationSide::EinvSigmaE, ConjugationSide::ESigmaEinv}) {
      bool all = true;
      for (const auto& [pq, m] : table_) all = all && conjugation_matrix(pq.first, pq.second, side) == m;
      if (all) ok.push_back(side);
    }
    if (ok.size() != 1) throw std::logic_error("E-action self-check: no unique conjugation side reproduces the table");
    return ok.front();
  }

  // Literal tabulated operator E_pq - id.
  LieVector raising_action(int p, int q, const LieVector& v) const {
    return apply(to_rational(group_action(p, q)), v, true);
  }

  // Lie-algebra operator shifting torus weight by e_p - e_q: the logarithm
  // of the tabulated E_qp.
  const RationalMatrix& lie_operator(int p, int q) const { return logs_.at(check_pair(p, q)); }

  // e_pq extended to L_F(k) as a derivation.
  LieVector derivation_extend(int p, int q, const LieVector& v) const {
    if (v.alphabet() != alphabet_) throw std::invalid_argument("derivation_extend: vector over " + v.alphabet()->label());
    const RationalMatrix& op = lie_operator(p, q);
    std::map<HallKey, LieVector> memo;
    LieVector out(v.algebra(), v.weight());
    for (const auto& [i, c] : v.coeffs()) out += c * derive(op, *v.algebra(), {v.weight(), i}, memo);
    return out;
  }

  // Single torus weight of v; throws if v is zero or mixes weights.
  Weight vector_weight(const LieVector& v) const {
    if (v.alphabet() != alphabet_) throw std::invalid_argument("vector over " + v.alphabet()->label());
    if (v.is_zero()) throw std::invalid_argument("the zero vector has no torus weight");
    std::optional<Weight> w;
    for (const auto& [i, c] : v.coeffs()) {
      Weight t = tree_weight(*v.algebra(), {v.weight(), i});
      if (w && *w != t) throw std::invalid_argument("not a torus weight vector: " + v.to_string());
      w = t;
    }
    return *w;
  }

  // Weight of v if e12 v = e23 v = 0.
  std::optional<Weight> is_highest_weight(const LieVector& v) const {
    const Weight w = vector_weight(v);
    if (derivation_extend(1, 2, v).is_zero() && derivation_extend(2, 3, v).is_zero()) return w;
    return std::nullopt;
  }

 private:
  static std::pair<int, int> check_pair(int p, int q) {
    if (p == q || p < 1 || q < 1 || p > 3 || q > 3) throw std::invalid_argument("elementary indices must be distinct in 1..3");
    return {p, q};
  }

  // Basis index and sign of K_ab or K_abc (any order of b, c).
  std::pair<std::size_t, int> symbol(int a, int b, std::optional<int> c = std::nullopt) const {
    const MagnusLetter m = magnus_letter(a, b, c);
    return {alphabet_->at(m.name()).value, m.sign};
  }

  IntegerMatrix build_table(int p, int q) const {
    IntegerMatrix m = IntegerMatrix::identity(9);
    auto put = [&](std::size_t row, std::pair<std::size_t, int> s, int c) { m(row, s.first) += c * s.second; };
    for (std::size_t b = 0; b < 9; ++b) {
      const std::string& nm = alphabet_->names()[b];
      const int i = nm[1] - '0', j = nm[2] - '0';
      if (nm.size() == 3) {
        const int l = 6 - i - j;
        if (p == i && q == l) put(b, symbol(i, l, j), 1);  // K_ij + K_ilj
        if (p == j && q == l) put(b, symbol(i, l), 1);     // K_ij + K_il
        if (p == l && q == i) put(b, symbol(l, i, j), -1);  // K_ij - K_lij
        if (p == j && q == i) put(b, symbol(j, i), 1);     // K_ij + K_ji
      } else {
        const int l = nm[3] - '0';
        if (p == j && q == i) {  // K_ijl + K_jli + K_il - K_jl
          put(b, symbol(j, l, i), 1);
          put(b, symbol(i, l), 1);
          put(b, symbol(j, l), -1);
        }
        if (p == l && q == i) {  // from K_ijl = -K_ilj: K_ijl - K_lji - K_ij + K_lj
          put(b, symbol(l, j, i), -1);
          put(b, symbol(i, j), -1);
          put(b, symbol(l, j), 1);
        }
      }
    }
    return m;
  }

  static RationalMatrix logarithm(const IntegerMatrix& g) {
    const std::size_t n = g.rows();
    RationalMatrix nil = to_rational(g);
    for (std::size_t i = 0; i < n; ++i) nil(i, i) -= 1;
    RationalMatrix power = nil, log(n, n);
    const RationalMatrix zero(n, n);
    for (std::size_t m = 1; power != zero; ++m) {
      if (m > n) throw std::logic_error("E - id is not nilpotent on W");
      const Rational f(m % 2 ? 1 : -1, static_cast<long long>(m));
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) log(r, c) += f * power(r, c);
      power = power * nil;
    }
    return log;
  }

  LieVector apply(const RationalMatrix& m, const LieVector& v, bool minus_identity) const {
    if (v.alphabet() != alphabet_ || v.weight() != 1) throw std::invalid_argument("expected a vector of W");
    LieVector out(v.algebra(), 1);
    for (const auto& [b, c] : v.coeffs())
      for (std::size_t i = 0; i < 9; ++i) {
        Rational x = m(b, i);
        if (minus_identity && static_cast<std::size_t>(b) == i) x -= 1;
        out.add(static_cast<int>(i), c * x);
      }
    return out;
  }

  LieVector derive(const RationalMatrix& op, const FreeLieAlgebra& alg, HallKey key,
                   std::map<HallKey, LieVector>& memo) const {
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const HallNode& n = alg.node(key);
    LieVector out(lie_algebra(alphabet_), key.weight);
    if (n.leaf) {
      for (std::size_t i = 0; i < 9; ++i) out.add(static_cast<int>(i), op(n.leaf->value, i));
    } else {
      const auto alg_ptr = lie_algebra(alphabet_);
      const LieVector a = LieVector::basis(alg_ptr, n.left), b = LieVector::basis(alg_ptr, n.right);
      out = bracket(derive(op, alg, n.left, memo), b) + bracket(a, derive(op, alg, n.right, memo));
    }
    memo.emplace(key, out);
    return out;
  }

  AlphabetPtr alphabet_;
  std::map<std::pair<int, int>, IntegerMatrix> table_;
  std::map<std::pair<int, int>, RationalMatrix> logs_;
};

// Shared instance; the conjugation-side self-check runs on first use.
inline const WModule& w_module() {
  static const WModule m = [] {
    WModule w;
    (void)w.select_conjugation_side();
    return w;
  }();
  return m;
}

// sum c * [left, right] with left/right words in the Magnus generators.
struct BracketTerm {
  Rational coeff;
  Word left;
  Word right;
};

inline LieVector lift_class(const std::vector<BracketTerm>& terms) {
  if (terms.empty()) throw std::invalid_argument("lift_class: no terms");
  LieVector out(lie_algebra(terms.front().left.alphabet()), 2);
  for (const auto& t : terms) out += t.coeff * degree2_class_of(commutator(t.left, t.right));
  return out;
}

inline JohnsonImage johnson_sum(const std::vector<BracketTerm>& terms, int k = 2) {
  JohnsonImage total = JohnsonImage::zero(3, k + 1);
  for (const auto& t : terms) {
    JohnsonImage img = tau(eval_word(commutator(t.left, t.right)), k);
    img *= t.coeff;
    total += img;
  }
  return total;
}

inline bool johnson_vanish(const std::vector<BracketTerm>& terms) { return johnson_sum(terms, 2).is_zero(); }

inline std::optional<std::vector<Rational>> membership_in_R_R3(const LieVector& v, const std::vector<RelatorSpec>& specs) {
  std::vector<LieVector> classes;
  for (const auto& s : specs) classes.push_back(degree2_class(s));
  return in_span(v.dense(), class_matrix(classes));
}

struct NamedVector {
  std::string name;
  std::vector<BracketTerm> lift;  // empty for W vectors
  LieVector vector;
  Weight expected_weight;
};

// iota_1, K312 in W and the weight-2 vectors v1..v4.
inline std::vector<NamedVector> highest_weight_vectors() {
  const AlphabetPtr mag = magnus_alphabet(3);
  auto g = [&](const char* nm) { return Word::generator(mag, nm); };
  const Word i1 = inner_word(1), i2 = inner_word(2), i3 = inner_word(3);
  std::vector<NamedVector> out;
  out.push_back({"iota1", {}, LieVector::generator(mag, "K21") + LieVector::generator(mag, "K31"), {{1, 0, 0}}});
  out.push_back({"K312", {}, LieVector::generator(mag, "K312"), {{1, 1, -1}}});
  auto add = [&](std::string name, std::vector<BracketTerm> lift, Weight w) {
    LieVector v = lift_class(lift);
    out.push_back({std::move(name), std::move(lift), std::move(v), w});
  };
  add("v1", {{1, i1, i2}}, {{1, 1, 0}});
  add("v2", {{1, g("K312"), i3}, {1, i1, g("K12")}, {-2, g("K32"), i1}, {1, g("K31"), i2}}, {{1, 1, 0}});
  add("v3", {{1, g("K312"), g("K21")}}, {{2, 1, -1}});
  add("v4", {{1, g("K312"), i1}}, {{2, 1, -1}});
  return out;
}

}  // namespace ia3

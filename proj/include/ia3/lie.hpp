// Copyright 2026 The ia3 Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ia3/magnus.hpp"
#include "ia3/numeric.hpp"
#include "ia3/words.hpp"
#include "json.hpp"

namespace ia3 {

// (1/k) * sum_{d | k} mu(d) n^(k/d)
inline BigInt witt_rank(int n, int k) {
  if (n < 1 || k < 1) throw std::invalid_argument("witt_rank: n and k must be >= 1");
  auto mobius = [](int d) {
    int mu = 1;
    for (int p = 2; p * p <= d; ++p) {
      if (d % p) continue;
      d /= p;
      if (d % p == 0) return 0;
      mu = -mu;
    }
    return d > 1 ? -mu : mu;
  };
  BigInt sum = 0;
  for (int d = 1; d <= k; ++d) {
    if (k % d) continue;
    sum += mobius(d) * boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(k / d));
  }
  return sum / k;
}

// Position of a Hall tree: weight, then rank inside that weight. The
// derived ordering is the total order of the Hall set.
struct HallKey {
  int weight = 0;
  int index = 0;
  friend auto operator<=>(const HallKey&, const HallKey&) = default;
};

struct HallNode {
  HallKey key;
  std::optional<GenId> leaf;  // set iff weight 1
  HallKey left, right;        // meaningful iff weight > 1
};

class FreeLieAlgebra;
using LieAlgebraPtr = std::shared_ptr<const FreeLieAlgebra>;

// Classical Hall set over an ordered alphabet: [A,B] is basic iff A > B and,
// when A = [A1,A2], also A2 <= B. Weight 2 is enumerated by (right, left),
// higher weights by (left, right).
class FreeLieAlgebra {
 public:
  static constexpr int kMaxWeight = 8;

  explicit FreeLieAlgebra(AlphabetPtr alphabet) : alphabet_(std::move(alphabet)) {}

  const AlphabetPtr& alphabet() const noexcept { return alphabet_; }

  std::size_t dimension(int k) const { return data(k).nodes.size(); }
  const std::vector<HallNode>& basis(int k) const { return data(k).nodes; }
  const HallNode& node(HallKey key) const {
    const auto& nodes = data(key.weight).nodes;
    if (key.index < 0 || key.index >= static_cast<int>(nodes.size())) throw std::out_of_range("Hall key out of range");
    return nodes[key.index];
  }

  // The basic tree [left,right], if it is one.
  std::optional<HallKey> find(HallKey left, HallKey right) const {
    const auto& d = data(left.weight + right.weight);
    auto it = d.by_children.find({left, right});
    if (it == d.by_children.end()) return std::nullopt;
    return it->second;
  }

  std::string tree_string(HallKey key) const {
    if (key.weight <= 3) return flat_string(key);
    return nested_string(key);
  }

  const IntTensor& expansion(HallKey key) const { return data(key.weight).expansions.at(key.index); }

  // Coordinates of a Lie element of the tensor algebra; throws
  // std::domain_error("not a Lie element") outside the span.
  std::map<int, Rational> coordinates(const RatTensor& t) const {
    if (t.alphabet() != alphabet_) throw std::invalid_argument("tensor over a different alphabet");
    const auto& d = data(t.degree());
    std::map<int, Rational> out;
    RatTensor rest = t;
    while (!rest.is_zero()) {
      const auto& [lead, c] = *rest.terms().rbegin();
      auto it = d.echelon.find(lead);
      if (it == d.echelon.end()) throw std::domain_error("not a Lie element");
      const Rational f = c;
      rest -= it->second.tensor * f;
      for (const auto& [i, q] : it->second.coords) {
        auto& slot = out[i];
        slot += f * q;
      }
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
  }

 private:
  struct EchelonRow {
    RatTensor tensor;  // leading coefficient 1
    std::map<int, Rational> coords;
  };
  struct WeightData {
    std::vector<HallNode> nodes;
    std::vector<IntTensor> expansions;
    std::map<std::pair<HallKey, HallKey>, HallKey> by_children;
    std::map<Monomial, EchelonRow> echelon;
  };

  const WeightData& data(int k) const {
    if (k < 1 || k > kMaxWeight) throw std::invalid_argument("Hall basis weight must be in 1.." + std::to_string(kMaxWeight));
    std::lock_guard lock(mu_);
    for (int w = 1; w <= k; ++w)
      if (!weights_[w]) weights_[w] = build(w);
    return *weights_[k];
  }

  // Caller holds mu_; all lower weights exist.
  std::unique_ptr<WeightData> build(int k) const {
    auto d = std::make_unique<WeightData>();
    if (k == 1) {
      for (std::size_t g = 0; g < alphabet_->size(); ++g) {
        HallNode n;
        n.key = {1, static_cast<int>(g)};
        n.leaf = alphabet_->gen(g);
        d->nodes.push_back(n);
      }
    } else {
      std::vector<std::pair<HallKey, HallKey>> pairs;
      for (int wa = 1; wa < k; ++wa) {
        const int wb = k - wa;
        if (wb > wa) continue;
        for (const HallNode& a : weights_[wa]->nodes)
          for (const HallNode& b : weights_[wb]->nodes) {
            if (!(a.key > b.key)) continue;
            if (!a.leaf && a.right > b.key) continue;
            pairs.emplace_back(a.key, b.key);
          }
      }
      if (k == 2)
        std::sort(pairs.begin(), pairs.end(),
                  [](const auto& x, const auto& y) { return std::tie(x.second, x.first) < std::tie(y.second, y.first); });
      else
        std::sort(pairs.begin(), pairs.end());
      for (const auto& [a, b] : pairs) {
        HallNode n;
        n.key = {k, static_cast<int>(d->nodes.size())};
        n.left = a;
        n.right = b;
        d->by_children.emplace(std::make_pair(a, b), n.key);
        d->nodes.push_back(n);
      }
    }
    for (const HallNode& n : d->nodes) {
      if (n.leaf) {
        d->expansions.push_back(IntTensor::letter(alphabet_, *n.leaf));
      } else {
        const IntTensor& a = weights_[n.left.weight]->expansions[n.left.index];
        const IntTensor& b = weights_[n.right.weight]->expansions[n.right.index];
        d->expansions.push_back(tensor_commutator(a, b));
      }
    }
    for (std::size_t i = 0; i < d->nodes.size(); ++i) {
      EchelonRow row{to_rational(d->expansions[i]), {{static_cast<int>(i), Rational(1)}}};
      while (!row.tensor.is_zero()) {
        auto it = d->echelon.find(row.tensor.terms().rbegin()->first);
        if (it == d->echelon.end()) break;
        const Rational f = row.tensor.terms().rbegin()->second;
        row.tensor -= it->second.tensor * f;
        for (const auto& [j, q] : it->second.coords) row.coords[j] -= f * q;
      }
      if (row.tensor.is_zero()) throw std::logic_error("Hall trees of weight " + std::to_string(k) + " are dependent");
      const Rational lead = row.tensor.terms().rbegin()->second;
      row.tensor *= Rational(1) / lead;
      for (auto& [j, q] : row.coords) q /= lead;
      std::erase_if(row.coords, [](const auto& kv) { return kv.second == 0; });
      Monomial key = row.tensor.terms().rbegin()->first;
      d->echelon.emplace(std::move(key), std::move(row));
    }
    return d;
  }

  std::string flat_string(HallKey key) const {
    const HallNode& n = node(key);
    if (n.leaf) return alphabet_->name(*n.leaf);
    std::string inner = flat_string(n.left);
    if (n.left.weight > 1) inner = inner.substr(1, inner.size() - 2);
    return "[" + inner + "," + flat_string(n.right) + "]";
  }
  std::string nested_string(HallKey key) const {
    const HallNode& n = node(key);
    if (n.leaf) return alphabet_->name(*n.leaf);
    return "[" + nested_string(n.left) + "," + nested_string(n.right) + "]";
  }

  AlphabetPtr alphabet_;
  mutable std::mutex mu_;
  mutable std::array<std::unique_ptr<WeightData>, kMaxWeight + 1> weights_;
};

// One shared algebra per alphabet.
inline LieAlgebraPtr lie_algebra(const AlphabetPtr& alphabet) {
  static std::mutex mu;
  static std::map<const Alphabet*, LieAlgebraPtr> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[alphabet.get()];
  if (!slot) slot = std::make_shared<const FreeLieAlgebra>(alphabet);
  return slot;
}

inline std::vector<std::string> hall_basis_strings(const AlphabetPtr& alphabet, int k) {
  auto alg = lie_algebra(alphabet);
  std::vector<std::string> out;
  for (const HallNode& n : alg->basis(k)) out.push_back(alg->tree_string(n.key));
  return out;
}

// Exact rational combination of Hall trees of one weight.
class LieVector {
 public:
  LieVector(LieAlgebraPtr algebra, int weight) : algebra_(std::move(algebra)), weight_(weight) {
    if (weight_ < 1) throw std::invalid_argument("LieVector: weight must be >= 1");
  }

  static LieVector basis(LieAlgebraPtr algebra, HallKey key, Rational c = 1) {
    LieVector v(std::move(algebra), key.weight);
    v.add(key.index, c);
    return v;
  }
  static LieVector generator(const AlphabetPtr& alphabet, std::string_view name) {
    return basis(lie_algebra(alphabet), {1, alphabet->at(name).value});
  }

  const LieAlgebraPtr& algebra() const noexcept { return algebra_; }
  const AlphabetPtr& alphabet() const noexcept { return algebra_->alphabet(); }
  int weight() const noexcept { return weight_; }
  const std::map<int, Rational>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  Rational coeff(int index) const {
    auto it = coeffs_.find(index);
    return it == coeffs_.end() ? Rational(0) : it->second;
  }

  void add(int index, const Rational& c) {
    if (index < 0 || static_cast<std::size_t>(index) >= algebra_->dimension(weight_))
      throw std::out_of_range("LieVector: Hall index out of range");
    if (c == 0) return;
    auto& slot = coeffs_[index];
    slot += c;
    if (slot == 0) coeffs_.erase(index);
  }

  // Dense coordinate vector in Hall order.
  std::vector<Rational> dense() const {
    std::vector<Rational> out(algebra_->dimension(weight_));
    for (const auto& [i, c] : coeffs_) out[i] = c;
    return out;
  }

  RatTensor to_tensor() const {
    RatTensor out(alphabet(), weight_);
    for (const auto& [i, c] : coeffs_) out += to_rational(algebra_->expansion({weight_, i})) * c;
    return out;
  }

  LieVector& operator+=(const LieVector& o) {
    check(o);
    for (const auto& [i, c] : o.coeffs_) add(i, c);
    return *this;
  }
  LieVector& operator-=(const LieVector& o) {
    check(o);
    for (const auto& [i, c] : o.coeffs_) add(i, -c);
    return *this;
  }
  LieVector& operator*=(const Rational& s) {
    if (s == 0) coeffs_.clear();
    for (auto& [i, c] : coeffs_) c *= s;
    return *this;
  }
  friend LieVector operator+(LieVector a, const LieVector& b) { return a += b; }
  friend LieVector operator-(LieVector a, const LieVector& b) { return a -= b; }
  friend LieVector operator-(LieVector a) { return a *= Rational(-1); }
  friend LieVector operator*(const Rational& s, LieVector a) { return a *= s; }

  friend bool operator==(const LieVector& a, const LieVector& b) {
    return a.algebra_ == b.algebra_ && a.weight_ == b.weight_ && a.coeffs_ == b.coeffs_;
  }

  // {"[K32,K12]": "1/1", ...}
  nlohmann::json to_json() const {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [i, c] : coeffs_) out[algebra_->tree_string({weight_, i})] = to_fraction_string(c);
    return out;
  }

  // "[K23,K12] - [K13,K12]"
  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [i, c] : coeffs_) {
      const Rational mag = c < 0 ? Rational(-c) : c;
      out += first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
      if (mag != 1) out += (is_integral(mag) ? numerator(mag).str() : to_fraction_string(mag)) + "*";
      out += algebra_->tree_string({weight_, i});
      first = false;
    }
    return out;
  }

 private:
  void check(const LieVector& o) const {
    if (algebra_ != o.algebra_ || weight_ != o.weight_)
      throw std::invalid_argument("LieVector sum: algebra or weight mismatch");
  }

  LieAlgebraPtr algebra_;
  int weight_;
  std::map<int, Rational> coeffs_;
};

template <class C>
LieVector tensor_to_hall(const Tensor<C>& t) {
  auto alg = lie_algebra(t.alphabet());
  LieVector out(alg, t.degree());
  RatTensor q = to_rational(t);
  for (const auto& [i, c] : alg->coordinates(q)) out.add(i, c);
  return out;
}

inline RatTensor hall_to_tensor(const LieVector& v) { return v.to_tensor(); }

inline LieVector bracket(const LieVector& a, const LieVector& b) {
  if (a.algebra() != b.algebra()) throw std::invalid_argument("bracket: different algebras");
  return tensor_to_hall(tensor_commutator(a.to_tensor(), b.to_tensor()));
}

namespace detail {

struct TreeExpr {
  std::string leaf;
  std::vector<TreeExpr> items;  // >= 2 items: left-normed bracket
};

inline TreeExpr parse_tree_expr(std::string_view s, std::size_t& pos) {
  auto fail = [&] { throw std::invalid_argument("malformed bracket expression \"" + std::string(s) + "\""); };
  TreeExpr e;
  if (pos >= s.size()) fail();
  if (s[pos] == '[') {
    ++pos;
    for (;;) {
      e.items.push_back(parse_tree_expr(s, pos));
      if (pos >= s.size()) fail();
      if (s[pos] == ',') {
        ++pos;
        continue;
      }
      if (s[pos] == ']') {
        ++pos;
        break;
      }
      fail();
    }
    if (e.items.size() < 2) fail();
  } else {
    const std::size_t start = pos;
    while (pos < s.size() && std::isalnum(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) fail();
    e.leaf = std::string(s.substr(start, pos - start));
  }
  return e;
}

inline std::string strip_spaces(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

inline LieVector eval_tree_expr(const LieAlgebraPtr& alg, const TreeExpr& e) {
  if (e.items.empty()) return LieVector::basis(alg, {1, alg->alphabet()->at(e.leaf).value});
  LieVector acc = eval_tree_expr(alg, e.items.front());
  for (std::size_t i = 1; i < e.items.size(); ++i) acc = bracket(acc, eval_tree_expr(alg, e.items[i]));
  return acc;
}

inline std::optional<HallKey> match_hall(const LieAlgebraPtr& alg, const TreeExpr& e) {
  if (e.items.empty()) return HallKey{1, alg->alphabet()->at(e.leaf).value};
  auto acc = match_hall(alg, e.items.front());
  for (std::size_t i = 1; acc && i < e.items.size(); ++i) {
    auto rhs = match_hall(alg, e.items[i]);
    if (!rhs) return std::nullopt;
    acc = alg->find(*acc, *rhs);
  }
  return acc;
}

}  // namespace detail

// Any bracket expression ("[K312,K31,K312]", "[[a,b],[c,d]]"), normalized.
inline LieVector parse_lie_expression(const AlphabetPtr& alphabet, std::string_view text) {
  const std::string s = detail::strip_spaces(text);
  std::size_t pos = 0;
  auto e = detail::parse_tree_expr(s, pos);
  if (pos != s.size()) throw std::invalid_argument("trailing input in bracket expression \"" + s + "\"");
  return detail::eval_tree_expr(lie_algebra(alphabet), e);
}

// Exact Hall tree named by `text`; throws if the bracket is not basic.
inline HallKey parse_hall_tree(const AlphabetPtr& alphabet, std::string_view text) {
  const std::string s = detail::strip_spaces(text);
  std::size_t pos = 0;
  auto e = detail::parse_tree_expr(s, pos);
  if (pos != s.size()) throw std::invalid_argument("trailing input in bracket expression \"" + s + "\"");
  if (auto key = detail::match_hall(lie_algebra(alphabet), e)) return *key;
  throw std::invalid_argument("\"" + s + "\" is not a Hall basis tree");
}

// Inverse of LieVector::to_json; keys may be any bracket expressions.
inline LieVector lie_vector_from_json(const AlphabetPtr& alphabet, int weight, const nlohmann::json& j) {
  LieVector out(lie_algebra(alphabet), weight);
  for (const auto& [expr, coeff] : j.items()) {
    LieVector term = parse_lie_expression(alphabet, expr);
    if (term.weight() != weight)
      throw std::invalid_argument("bracket \"" + expr + "\" has weight " + std::to_string(term.weight()));
    out += parse_rational(coeff.get<std::string>()) * term;
  }
  return out;
}

}  // namespace ia3

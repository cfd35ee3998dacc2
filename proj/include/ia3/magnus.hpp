// Copyright 2026 The ia3 Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "ia3/numeric.hpp"
#include "ia3/words.hpp"
#include "json.hpp"

namespace ia3 {

using Monomial = std::vector<GenId>;

// Homogeneous element of the degree-k tensor power over an alphabet.
template <class Coeff>
class Tensor {
 public:
  Tensor(AlphabetPtr alphabet, int degree) : alphabet_(std::move(alphabet)), degree_(degree) {}

  static Tensor letter(AlphabetPtr alphabet, GenId g) {
    Tensor t(std::move(alphabet), 1);
    t.add(Monomial{g}, Coeff(1));
    return t;
  }

  const AlphabetPtr& alphabet() const noexcept { return alphabet_; }
  int degree() const noexcept { return degree_; }
  const std::map<Monomial, Coeff>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  Coeff coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  void add(const Monomial& m, const Coeff& c) {
    if (static_cast<int>(m.size()) != degree_) throw std::invalid_argument("tensor: monomial of wrong degree");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Tensor& operator+=(const Tensor& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  Tensor& operator-=(const Tensor& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
  }
  Tensor& operator*=(const Coeff& s) {
    if (s == 0) terms_.clear();
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }
  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(Tensor a, const Coeff& s) { return a *= s; }

  // Concatenation product.
  friend Tensor operator*(const Tensor& a, const Tensor& b) {
    if (a.alphabet_ != b.alphabet_) throw std::invalid_argument("tensor product over different alphabets");
    Tensor out(a.alphabet_, a.degree_ + b.degree_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m = ma;
        m.insert(m.end(), mb.begin(), mb.end());
        out.add(m, ca * cb);
      }
    return out;
  }

  friend bool operator==(const Tensor& a, const Tensor& b) {
    return a.alphabet_ == b.alphabet_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

  std::string monomial_name(const Monomial& m) const {
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i) out += '.';
      out += alphabet_->name(m[i]);
    }
    return out;
  }

 private:
  void check_compatible(const Tensor& o) const {
    if (alphabet_ != o.alphabet_ || degree_ != o.degree_)
      throw std::invalid_argument("tensor sum: alphabet or degree mismatch");
  }

  AlphabetPtr alphabet_;
  int degree_;
  std::map<Monomial, Coeff> terms_;
};

using IntTensor = Tensor<BigInt>;
using RatTensor = Tensor<Rational>;

// a*b - b*a
template <class C>
Tensor<C> tensor_commutator(const Tensor<C>& a, const Tensor<C>& b) {
  return a * b - b * a;
}

template <class C>
Tensor<Rational> to_rational(const Tensor<C>& t) {
  Tensor<Rational> out(t.alphabet(), t.degree());
  for (const auto& [m, c] : t.terms()) out.add(m, Rational(c));
  return out;
}

// {"K312.K31.K312": "-1", ...}
template <class C>
nlohmann::json tensor_to_json(const Tensor<C>& t) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [m, c] : t.terms()) {
    if constexpr (std::is_same_v<C, Rational>)
      out[t.monomial_name(m)] = to_fraction_string(c);
    else
      out[t.monomial_name(m)] = c.str();
  }
  return out;
}

// Truncated non-commutative power series with integer coefficients.
class NcSeries {
 public:
  NcSeries(AlphabetPtr alphabet, int cap) : alphabet_(std::move(alphabet)), cap_(cap) {
    if (cap_ < 1) throw std::invalid_argument("NcSeries: cap must be >= 1");
  }

  static NcSeries one(AlphabetPtr alphabet, int cap) {
    NcSeries s(std::move(alphabet), cap);
    s.terms_.emplace(Monomial{}, 1);
    return s;
  }

  const AlphabetPtr& alphabet() const noexcept { return alphabet_; }
  int cap() const noexcept { return cap_; }
  const std::map<Monomial, BigInt>& terms() const noexcept { return terms_; }

  BigInt coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? BigInt(0) : it->second;
  }

  IntTensor degree_part(int k) const {
    IntTensor out(alphabet_, k);
    for (const auto& [m, c] : terms_)
      if (static_cast<int>(m.size()) == k) out.add(m, c);
    return out;
  }

  // Right multiplication by the expansion of a single letter.
  void multiply_letter(const Letter& l) {
    std::map<Monomial, BigInt> next;
    auto add = [&](Monomial m, const BigInt& c) {
      auto [it, inserted] = next.try_emplace(std::move(m), c);
      if (!inserted) {
        it->second += c;
        if (it->second == 0) next.erase(it);
      }
    };
    for (const auto& [m, c] : terms_) {
      add(m, c);
      Monomial ext = m;
      BigInt sc = c;
      // x -> 1 + X ; x^-1 -> sum_m (-X)^m
      for (int p = 1; static_cast<int>(m.size()) + p <= cap_; ++p) {
        ext.push_back(l.gen);
        if (l.sign < 0) sc = -sc;
        add(ext, sc);
        if (l.sign > 0) break;
      }
    }
    terms_ = std::move(next);
  }

  friend NcSeries operator*(const NcSeries& a, const NcSeries& b) {
    if (a.alphabet_ != b.alphabet_ || a.cap_ != b.cap_) throw std::invalid_argument("NcSeries product mismatch");
    NcSeries out(a.alphabet_, a.cap_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        if (ma.size() + mb.size() > static_cast<std::size_t>(a.cap_)) continue;
        Monomial m = ma;
        m.insert(m.end(), mb.begin(), mb.end());
        auto [it, inserted] = out.terms_.try_emplace(m, ca * cb);
        if (!inserted) {
          it->second += ca * cb;
          if (it->second == 0) out.terms_.erase(it);
        }
      }
    return out;
  }

  friend bool operator==(const NcSeries& a, const NcSeries& b) {
    return a.alphabet_ == b.alphabet_ && a.cap_ == b.cap_ && a.terms_ == b.terms_;
  }

 private:
  AlphabetPtr alphabet_;
  int cap_;
  std::map<Monomial, BigInt> terms_;
};

inline NcSeries expand(const Word& w, int cap) {
  NcSeries s = NcSeries::one(w.alphabet(), cap);
  for (const Letter& l : w.letters()) s.multiply_letter(l);
  return s;
}

// Lowest degree >= 1 carrying a nonzero coefficient.
inline std::optional<int> lowest_degree(const NcSeries& s) {
  std::optional<int> best;
  for (const auto& [m, c] : s.terms())
    if (!m.empty() && (!best || static_cast<int>(m.size()) < *best)) best = static_cast<int>(m.size());
  return best;
}

// Smallest k <= cap with a nonzero degree-k part of expand(w) - 1;
// nullopt when all of them vanish (w lies in Gamma(cap+1)).
inline std::optional<int> gamma_degree(const Word& w, int cap) { return lowest_degree(expand(w, cap)); }

// Degree-k part of the expansion of w, for w in Gamma(k).
inline IntTensor lcs_class(const Word& w, int k) {
  if (k < 1) throw std::invalid_argument("lcs_class: weight must be >= 1");
  const NcSeries s = expand(w, k);
  if (auto d = lowest_degree(s); d && *d < k)
    throw std::domain_error("lcs_class: word " + w.to_string() + " is not in Gamma(" + std::to_string(k) +
                            "); nonzero part in degree " + std::to_string(*d));
  return s.degree_part(k);
}

}  // namespace ia3

// Copyright 2026 The ia3 Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ia3 {

struct GenId {
  std::uint16_t value = 0;
  friend auto operator<=>(const GenId&, const GenId&) = default;
};

// Immutable, totally ordered set of generator names. Order is index order.
class Alphabet {
 public:
  Alphabet(std::string label, std::vector<std::string> names) : label_(std::move(label)), names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (!index_.emplace(names_[i], GenId{static_cast<std::uint16_t>(i)}).second)
        throw std::invalid_argument("duplicate generator name " + names_[i]);
  }

  const std::string& label() const noexcept { return label_; }
  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  const std::string& name(GenId g) const {
    if (g.value >= names_.size()) throw std::out_of_range("generator id out of range for " + label_);
    return names_[g.value];
  }
  std::optional<GenId> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  GenId at(std::string_view name) const {
    if (auto g = find(name)) return *g;
    throw std::invalid_argument("unknown generator \"" + std::string(name) + "\" in alphabet " + label_);
  }
  GenId gen(std::size_t index) const {
    if (index >= names_.size()) throw std::out_of_range("generator index out of range for " + label_);
    return GenId{static_cast<std::uint16_t>(index)};
  }

 private:
  std::string label_;
  std::vector<std::string> names_;
  std::map<std::string, GenId, std::less<>> index_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

namespace detail {

template <class Make>
AlphabetPtr cached_alphabet(std::map<int, AlphabetPtr>& cache, int n, Make make) {
  static std::mutex mu;
  std::lock_guard lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_shared<const Alphabet>(make());
  return slot;
}

}  // namespace detail

// x1, ..., xn
inline AlphabetPtr free_basis(int n) {
  if (n < 1 || n > 9) throw std::invalid_argument("free_basis: rank must be in 1..9");
  static std::map<int, AlphabetPtr> cache;
  return detail::cached_alphabet(cache, n, [n] {
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
    return Alphabet("F" + std::to_string(n), std::move(names));
  });
}

// Magnus symbols: all K_ij (i != j), then all K_ijl (j < l, i outside {j,l}), each block lexicographic.
// For n = 3: K12 < K13 < K21 < K23 < K31 < K32 < K123 < K213 < K312.
inline AlphabetPtr magnus_alphabet(int n) {
  if (n < 2 || n > 9) throw std::invalid_argument("magnus_alphabet: rank must be in 2..9");
  static std::map<int, AlphabetPtr> cache;
  return detail::cached_alphabet(cache, n, [n] {
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        if (i != j) names.push_back("K" + std::to_string(i) + std::to_string(j));
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        for (int l = j + 1; l <= n; ++l)
          if (i != j && i != l) names.push_back("K" + std::to_string(i) + std::to_string(j) + std::to_string(l));
    return Alphabet("Magnus" + std::to_string(n), std::move(names));
  });
}

struct Letter {
  GenId gen;
  int sign = 1;  // +1 or -1
  friend bool operator==(const Letter&, const Letter&) = default;
};

// Freely reduced word; every constructor reduces.
class Word {
 public:
  explicit Word(AlphabetPtr alphabet) : alphabet_(std::move(alphabet)) {
    if (!alphabet_) throw std::invalid_argument("word requires an alphabet");
  }
  Word(AlphabetPtr alphabet, const std::vector<Letter>& letters) : Word(std::move(alphabet)) {
    for (const Letter& l : letters) push(l);
  }

  static Word generator(AlphabetPtr alphabet, GenId g, int sign = 1) { return Word(std::move(alphabet), {{g, sign}}); }
  static Word generator(const AlphabetPtr& alphabet, std::string_view name, int sign = 1) {
    return generator(alphabet, alphabet->at(name), sign);
  }

  const AlphabetPtr& alphabet() const noexcept { return alphabet_; }
  const std::vector<Letter>& letters() const noexcept { return letters_; }
  std::size_t length() const noexcept { return letters_.size(); }
  bool is_identity() const noexcept { return letters_.empty(); }

  Word inverse() const {
    Word out(alphabet_);
    out.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.letters_.push_back({it->gen, -it->sign});
    return out;
  }

  Word& operator*=(const Word& rhs) {
    require_same_alphabet(rhs);
    for (const Letter& l : rhs.letters_) push(l);
    return *this;
  }
  friend Word operator*(Word lhs, const Word& rhs) { return lhs *= rhs; }

  friend bool operator==(const Word& a, const Word& b) {
    return a.alphabet_ == b.alphabet_ && a.letters_ == b.letters_;
  }

  // Sum of exponents of each generator.
  std::vector<long long> exponent_sums() const {
    std::vector<long long> out(alphabet_->size(), 0);
    for (const Letter& l : letters_) out[l.gen.value] += l.sign;
    return out;
  }

  std::string to_string() const {
    if (letters_.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      if (i) out += '*';
      out += alphabet_->name(letters_[i].gen);
      if (letters_[i].sign < 0) out += "^-1";
    }
    return out;
  }

  // Inverse of to_string: "x1*x2^-1", "1" for the empty word.
  static Word parse(const AlphabetPtr& alphabet, std::string_view text) {
    Word out(alphabet);
    if (text == "1") return out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('*', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view tok = text.substr(pos, end - pos);
      int sign = 1;
      if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
        sign = -1;
        tok.remove_suffix(3);
      }
      if (tok.empty()) throw std::invalid_argument("malformed word \"" + std::string(text) + "\"");
      out.push({alphabet->at(tok), sign});
      pos = end + 1;
    }
    return out;
  }

  void require_same_alphabet(const Word& other) const {
    if (alphabet_ != other.alphabet_)
      throw std::invalid_argument("words over different alphabets: " + alphabet_->label() + " vs " +
                                  other.alphabet_->label());
  }

 private:
  void push(const Letter& l) {
    if (l.sign != 1 && l.sign != -1) throw std::invalid_argument("letter sign must be +1 or -1");
    if (l.gen.value >= alphabet_->size()) throw std::out_of_range("letter outside alphabet " + alphabet_->label());
    if (!letters_.empty() && letters_.back().gen == l.gen && letters_.back().sign == -l.sign)
      letters_.pop_back();
    else
      letters_.push_back(l);
  }

  AlphabetPtr alphabet_;
  std::vector<Letter> letters_;
};

// Free reduction of a raw letter sequence.
inline Word reduce(const AlphabetPtr& alphabet, const std::vector<Letter>& letters) { return Word(alphabet, letters); }

// [u,v] = u v u^-1 v^-1
inline Word commutator(const Word& u, const Word& v) { return u * v * u.inverse() * v.inverse(); }

// [y1, ..., yk] = [[...[y1,y2],...],yk]
inline Word left_normed(const std::vector<Word>& ys) {
  if (ys.empty()) throw std::invalid_argument("left_normed: empty list");
  Word acc = ys.front();
  for (std::size_t i = 1; i < ys.size(); ++i) acc = commutator(acc, ys[i]);
  return acc;
}

}  // namespace ia3

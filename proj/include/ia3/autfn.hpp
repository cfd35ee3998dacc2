// Copyright 2026 The ia3 Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ia3/lie.hpp"
#include "ia3/linalg.hpp"
#include "ia3/magnus.hpp"
#include "ia3/words.hpp"
#include "json.hpp"

namespace ia3 {

// Endomorphism of F_n given by generator images; acts on the right, so
// x^(ab) = (x^a)^b.
class Automorphism {
 public:
  explicit Automorphism(std::vector<Word> images) : images_(std::move(images)) {
    if (images_.empty()) throw std::invalid_argument("automorphism needs at least one generator image");
    const AlphabetPtr basis = free_basis(static_cast<int>(images_.size()));
    for (const Word& w : images_)
      if (w.alphabet() != basis) throw std::invalid_argument("automorphism images must be words in " + basis->label());
    const BigInt det = determinant(abelianization());
    if (det != 1 && det != -1)
      throw std::invalid_argument("abelianized matrix has determinant " + det.str() + ", not +-1");
  }

  static Automorphism identity(int n) {
    const AlphabetPtr basis = free_basis(n);
    std::vector<Word> images;
    for (int t = 0; t < n; ++t) images.push_back(Word::generator(basis, basis->gen(t)));
    return Automorphism(std::move(images));
  }

  int rank() const noexcept { return static_cast<int>(images_.size()); }
  const AlphabetPtr& basis() const noexcept { return images_.front().alphabet(); }
  const std::vector<Word>& images() const noexcept { return images_; }
  // Image of x_t, t counted from 1.
  const Word& image(int t) const {
    if (t < 1 || t > rank()) throw std::out_of_range("generator index out of range");
    return images_[t - 1];
  }

  Word apply(const Word& w) const {
    if (w.alphabet() != basis()) throw std::invalid_argument("apply: word over " + w.alphabet()->label());
    Word out(basis());
    for (const Letter& l : w.letters()) out *= l.sign > 0 ? images_[l.gen.value] : images_[l.gen.value].inverse();
    return out;
  }

  // Row t holds the exponent sums of the image of x_t.
  IntegerMatrix abelianization() const {
    const std::size_t n = images_.size();
    IntegerMatrix m(n, n);
    for (std::size_t t = 0; t < n; ++t) {
      auto e = images_[t].exponent_sums();
      for (std::size_t s = 0; s < n; ++s) m(t, s) = e[s];
    }
    return m;
  }

  friend bool operator==(const Automorphism& a, const Automorphism& b) { return a.images_ == b.images_; }

  bool is_identity() const { return *this == identity(rank()); }

  nlohmann::json to_json() const {
    nlohmann::json out = nlohmann::json::object();
    for (const Word& w : images_) out[basis()->name(basis()->gen(&w - images_.data()))] = w.to_string();
    return out;
  }

 private:
  std::vector<Word> images_;
};

// "a then b": x^(compose(a,b)) = (x^a)^b
inline Automorphism compose(const Automorphism& a, const Automorphism& b) {
  if (a.rank() != b.rank()) throw std::invalid_argument("compose: rank mismatch");
  std::vector<Word> images;
  for (const Word& w : a.images()) images.push_back(b.apply(w));
  return Automorphism(std::move(images));
}

// K_ij (no third index) or K_ijl with j < l; sign -1 is the formal inverse.
struct MagnusLetter {
  int i = 0, j = 0;
  std::optional<int> l;
  int sign = 1;

  std::string name() const {
    std::string s = "K" + std::to_string(i) + std::to_string(j);
    if (l) s += std::to_string(*l);
    return s;
  }

  void validate(int n) const {
    auto in_range = [n](int v) { return v >= 1 && v <= n; };
    bool ok = in_range(i) && in_range(j) && i != j && (sign == 1 || sign == -1);
    if (l) ok = ok && in_range(*l) && j < *l && i != *l;
    if (!ok) throw std::invalid_argument("invalid Magnus generator indices " + name() + " for n=" + std::to_string(n));
  }
};

// K_ijl for any order of j, l: K_ilj with l > j is the inverse of K_ijl.
inline MagnusLetter magnus_letter(int i, int j, std::optional<int> l = std::nullopt, int sign = 1) {
  if (l && *l < j) return MagnusLetter{i, *l, j, -sign};
  return MagnusLetter{i, j, l, sign};
}

inline MagnusLetter parse_magnus_letter(const Alphabet& magnus, GenId g, int sign) {
  const std::string& nm = magnus.name(g);
  MagnusLetter m;
  m.i = nm[1] - '0';
  m.j = nm[2] - '0';
  if (nm.size() == 4) m.l = nm[3] - '0';
  m.sign = sign;
  return m;
}

inline Automorphism magnus_gen(const MagnusLetter& spec, int n = 3) {
  spec.validate(n);
  const AlphabetPtr basis = free_basis(n);
  auto x = [&](int t) { return Word::generator(basis, basis->gen(t - 1)); };
  std::vector<Word> images;
  for (int t = 1; t <= n; ++t) images.push_back(x(t));
  Word& img = images[spec.i - 1];
  if (!spec.l) {
    // x_i -> x_j^-1 x_i x_j ; inverse x_i -> x_j x_i x_j^-1
    img = spec.sign > 0 ? x(spec.j).inverse() * x(spec.i) * x(spec.j) : x(spec.j) * x(spec.i) * x(spec.j).inverse();
  } else {
    // x_i -> x_i [x_j,x_l] ; inverse x_i -> x_i [x_j,x_l]^-1
    const Word c = commutator(x(spec.j), x(*spec.l));
    img = x(spec.i) * (spec.sign > 0 ? c : c.inverse());
  }
  return Automorphism(std::move(images));
}

// x -> x_i^-1 x x_i
inline Automorphism inner(int i, int n = 3) {
  const AlphabetPtr basis = free_basis(n);
  if (i < 1 || i > n) throw std::invalid_argument("inner: index out of range");
  const Word xi = Word::generator(basis, basis->gen(i - 1));
  std::vector<Word> images;
  for (int t = 1; t <= n; ++t) images.push_back(xi.inverse() * Word::generator(basis, basis->gen(t - 1)) * xi);
  return Automorphism(std::move(images));
}

// E_{x_p x_q}: x_p -> x_p x_q (sign -1: x_p -> x_p x_q^-1, its inverse).
inline Automorphism elementary(int p, int q, int n = 3, int sign = 1) {
  if (p == q || p < 1 || q < 1 || p > n || q > n) throw std::invalid_argument("elementary: invalid indices");
  const AlphabetPtr basis = free_basis(n);
  std::vector<Word> images;
  for (int t = 1; t <= n; ++t) images.push_back(Word::generator(basis, basis->gen(t - 1)));
  images[p - 1] = images[p - 1] * Word::generator(basis, basis->gen(q - 1), sign);
  return Automorphism(std::move(images));
}

// Rank n with magnus_alphabet(n) == alphabet.
inline int magnus_rank(const AlphabetPtr& alphabet) {
  for (int n = 2; n <= 9; ++n)
    if (magnus_alphabet(n) == alphabet) return n;
  throw std::invalid_argument("alphabet " + alphabet->label() + " is not a Magnus alphabet");
}

// The word in the Magnus generators product(t != i) K_ti.
inline Word inner_word(int i, int n = 3) {
  const AlphabetPtr mag = magnus_alphabet(n);
  Word w(mag);
  for (int t = 1; t <= n; ++t)
    if (t != i) w *= Word::generator(mag, "K" + std::to_string(t) + std::to_string(i));
  return w;
}

// pi : F -> IA_n, letters composed left to right.
inline Automorphism eval_word(const Word& w) {
  const int n = magnus_rank(w.alphabet());
  Automorphism acc = Automorphism::identity(n);
  for (const Letter& l : w.letters()) acc = compose(acc, magnus_gen(parse_magnus_letter(*w.alphabet(), l.gen, l.sign), n));
  return acc;
}

enum class RhoConvention { ImagesAsRows, ImagesAsColumns };

inline std::string to_string(RhoConvention c) {
  return c == RhoConvention::ImagesAsRows ? "images-as-rows" : "images-as-columns";
}

inline IntegerMatrix rho_with(const Automorphism& a, RhoConvention c) {
  IntegerMatrix m = a.abelianization();
  return c == RhoConvention::ImagesAsRows ? m : m.transpose();
}

// Picks the side for which rho(E_{x1x2}) = I + e12 and rho is multiplicative
// over compose on a fixed sample; exactly one side must qualify.
inline RhoConvention select_rho_convention() {
  std::vector<RhoConvention> ok;
  for (RhoConvention c : {RhoConvention::ImagesAsRows, RhoConvention::ImagesAsColumns}) {
    IntegerMatrix e12 = IntegerMatrix::identity(3);
    e12(0, 1) = 1;
    bool good = rho_with(elementary(1, 2), c) == e12;
    const std::vector<Automorphism> sample = {elementary(1, 2), elementary(2, 3), elementary(3, 1, 3, -1),
                                              magnus_gen(magnus_letter(1, 2)), inner(2)};
    for (const auto& a : sample)
      for (const auto& b : sample) good = good && rho_with(compose(a, b), c) == rho_with(a, c) * rho_with(b, c);
    if (good) ok.push_back(c);
  }
  if (ok.size() != 1) throw std::logic_error("rho convention self-check: no unique side matches");
  return ok.front();
}

inline RhoConvention rho_convention() {
  static const RhoConvention c = select_rho_convention();
  return c;
}

inline IntegerMatrix rho(const Automorphism& a) { return rho_with(a, rho_convention()); }

inline bool is_IA(const Automorphism& a) { return rho(a) == IntegerMatrix::identity(a.rank()); }

// Element of H* (x) L(k+1): one Lie vector per dual generator x_t*.
class JohnsonImage {
 public:
  explicit JohnsonImage(std::vector<LieVector> components) : components_(std::move(components)) {}

  static JohnsonImage zero(int n, int weight) {
    auto alg = lie_algebra(free_basis(n));
    return JohnsonImage(std::vector<LieVector>(n, LieVector(alg, weight)));
  }

  const std::vector<LieVector>& components() const noexcept { return components_; }
  bool is_zero() const {
    for (const auto& c : components_)
      if (!c.is_zero()) return false;
    return true;
  }

  JohnsonImage& operator+=(const JohnsonImage& o) {
    if (o.components_.size() != components_.size()) throw std::invalid_argument("Johnson image rank mismatch");
    for (std::size_t t = 0; t < components_.size(); ++t) components_[t] += o.components_[t];
    return *this;
  }
  JohnsonImage& operator*=(const Rational& s) {
    for (auto& c : components_) c *= s;
    return *this;
  }
  friend JohnsonImage operator+(JohnsonImage a, const JohnsonImage& b) { return a += b; }
  friend bool operator==(const JohnsonImage& a, const JohnsonImage& b) { return a.components_ == b.components_; }

  nlohmann::json to_json() const {
    nlohmann::json out = nlohmann::json::object();
    for (std::size_t t = 0; t < components_.size(); ++t)
      if (!components_[t].is_zero()) out["x" + std::to_string(t + 1) + "*"] = components_[t].to_json();
    return out;
  }

 private:
  std::vector<LieVector> components_;
};

// tau_k: component at x_t* is the class of x_t^-1 x_t^a in L(k+1).
inline JohnsonImage tau(const Automorphism& a, int k) {
  if (k < 1) throw std::invalid_argument("tau: k must be >= 1");
  const AlphabetPtr basis = a.basis();
  std::vector<LieVector> comps;
  for (int t = 1; t <= a.rank(); ++t) {
    const Word u = Word::generator(basis, basis->gen(t - 1)).inverse() * a.image(t);
    const NcSeries s = expand(u, k + 1);
    if (auto d = lowest_degree(s); d && *d <= k)
      throw std::domain_error("tau_" + std::to_string(k) + " precondition fails at generator x" + std::to_string(t) +
                              ": x" + std::to_string(t) + "^-1 x" + std::to_string(t) + "^a has degree " +
                              std::to_string(*d) + " < " + std::to_string(k + 1));
    comps.push_back(tensor_to_hall(s.degree_part(k + 1)));
  }
  return JohnsonImage(std::move(comps));
}

// The x_t* (x) [x_a,x_b] basis of H* (x) L(2) renamed to Magnus symbols:
// x_i*(x)[x_i,x_j] = K_ij, x_i*(x)[x_j,x_l] = K_ijl.
inline LieVector johnson_to_magnus(const JohnsonImage& image) {
  const int n = static_cast<int>(image.components().size());
  const AlphabetPtr mag = magnus_alphabet(n);
  LieVector out(lie_algebra(mag), 1);
  auto add = [&](const std::string& name, const Rational& c) { out.add(mag->at(name).value, c); };
  for (int t = 1; t <= n; ++t) {
    const LieVector& comp = image.components()[t - 1];
    if (comp.weight() != 2) throw std::invalid_argument("johnson_to_magnus expects a tau_1 image");
    for (const auto& [idx, c] : comp.coeffs()) {
      const HallNode& node = comp.algebra()->node({2, idx});
      const int b = comp.algebra()->node(node.left).leaf->value + 1;  // tree [x_b, x_a], b > a
      const int a = comp.algebra()->node(node.right).leaf->value + 1;
      const std::string ts = std::to_string(t);
      if (t == b)
        add("K" + ts + std::to_string(a), c);
      else if (t == a)
        add("K" + ts + std::to_string(b), -c);
      else
        add("K" + ts + std::to_string(a) + std::to_string(b), -c);
    }
  }
  return out;
}

}  // namespace ia3

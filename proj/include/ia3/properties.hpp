// Copyright 2026 The ia3 Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ia3/autfn.hpp"
#include "ia3/glrep.hpp"
#include "ia3/lie.hpp"
#include "ia3/linalg.hpp"
#include "ia3/magnus.hpp"
#include "ia3/report.hpp"
#include "ia3/words.hpp"
#include "json.hpp"

namespace ia3::props {

using Rng = std::mt19937_64;

struct PropertyResult {
  std::string name;
  std::size_t instances = 0;
  std::size_t failures = 0;
  std::string counterexample;  // first failing instance
  bool ok() const { return failures == 0 && instances > 0; }
};

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Word random_word(Rng& rng, const AlphabetPtr& alph, int max_len) {
  std::vector<Letter> letters;
  const int len = uniform(rng, 0, max_len);
  for (int i = 0; i < len; ++i)
    letters.push_back({GenId{static_cast<std::uint16_t>(uniform(rng, 0, static_cast<int>(alph->size()) - 1))},
                       uniform(rng, 0, 1) ? 1 : -1});
  return Word(alph, letters);
}

inline LieVector random_lie(Rng& rng, const LieAlgebraPtr& alg, int weight, int terms = 3) {
  LieVector v(alg, weight);
  const int dim = static_cast<int>(alg->dimension(weight));
  for (int t = 0; t < terms; ++t) v.add(uniform(rng, 0, dim - 1), uniform(rng, -3, 3));
  return v;
}

inline IntegerMatrix random_matrix(Rng& rng, int max_dim, int bound) {
  IntegerMatrix m(uniform(rng, 1, max_dim), uniform(rng, 1, max_dim));
  const int density = uniform(rng, 1, 4);  // sparser matrices hit rank deficiency
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (uniform(rng, 0, 3) < density) m(r, c) = uniform(rng, -bound, bound);
  return m;
}

// Runs `trial` count times; a trial returns an empty string on success and a
// description of the instance otherwise.
inline PropertyResult run_property(std::string name, Rng& rng, std::size_t count,
                                   const std::function<std::string(Rng&)>& trial) {
  PropertyResult r{std::move(name)};
  for (std::size_t i = 0; i < count; ++i) {
    std::string bad;
    try {
      bad = trial(rng);
    } catch (const std::exception& e) {
      bad = std::string("exception: ") + e.what();
    }
    ++r.instances;
    if (!bad.empty() && r.failures++ == 0) r.counterexample = bad;
  }
  return r;
}

// [xy,z] = [x,[y,z]][y,z][x,z] and [x,yz] = [x,y][x,z][[z,x],y]
inline PropertyResult free_group_product_identities(Rng& rng, std::size_t count) {
  const AlphabetPtr f = free_basis(3);
  return run_property("free-group product identities", rng, count, [&](Rng& g) -> std::string {
    const Word x = random_word(g, f, 6), y = random_word(g, f, 6), z = random_word(g, f, 6);
    const bool a = commutator(x * y, z) == commutator(x, commutator(y, z)) * commutator(y, z) * commutator(x, z);
    const bool b = commutator(x, y * z) == commutator(x, y) * commutator(x, z) * commutator(commutator(z, x), y);
    return a && b ? "" : "x=" + x.to_string() + " y=" + y.to_string() + " z=" + z.to_string();
  });
}

// [x^-1,z] = [[x^-1,z],x][x,z]^-1 and [x,y^-1] = [x,y]^-1[y,[y^-1,x]]
inline PropertyResult free_group_inverse_identities(Rng& rng, std::size_t count) {
  const AlphabetPtr f = free_basis(3);
  return run_property("free-group inverse identities", rng, count, [&](Rng& g) -> std::string {
    const Word x = random_word(g, f, 6), y = random_word(g, f, 6);
    const bool a = commutator(x.inverse(), y) == commutator(commutator(x.inverse(), y), x) * commutator(x, y).inverse();
    const bool b = commutator(x, y.inverse()) == commutator(x, y).inverse() * commutator(y, commutator(y.inverse(), x));
    return a && b ? "" : "x=" + x.to_string() + " y=" + y.to_string();
  });
}

inline PropertyResult magnus_multiplicativity(Rng& rng, std::size_t count) {
  const AlphabetPtr f = free_basis(3);
  return run_property("Magnus multiplicativity and inverse", rng, count, [&](Rng& g) -> std::string {
    const Word u = random_word(g, f, 7), v = random_word(g, f, 7);
    const int d = uniform(g, 1, 4);
    const bool mult = expand(u * v, d) == expand(u, d) * expand(v, d);
    const bool inv = expand(u.inverse(), d) * expand(u, d) == NcSeries::one(f, d);
    return mult && inv ? "" : "u=" + u.to_string() + " v=" + v.to_string() + " d=" + std::to_string(d);
  });
}

inline PropertyResult jacobi_antisymmetry(Rng& rng, std::size_t count) {
  const auto alg = lie_algebra(magnus_alphabet(3));
  return run_property("Jacobi and antisymmetry", rng, count, [&](Rng& g) -> std::string {
    const int wa = uniform(g, 1, 2), wb = 3 - wa;  // keeps the triple bracket in weight 4
    const LieVector a = random_lie(g, alg, wa), b = random_lie(g, alg, wb), c = random_lie(g, alg, 1);
    const bool anti = (bracket(a, b) + bracket(b, a)).is_zero();
    const bool jac = (bracket(bracket(a, b), c) + bracket(bracket(b, c), a) + bracket(bracket(c, a), b)).is_zero();
    return anti && jac ? "" : "a=" + a.to_string() + " b=" + b.to_string() + " c=" + c.to_string();
  });
}

inline PropertyResult tensor_hall_round_trip(Rng& rng, std::size_t count) {
  const auto alg = lie_algebra(free_basis(3));
  return run_property("tensor/Hall round trips", rng, count, [&](Rng& g) -> std::string {
    const int k = uniform(g, 1, 5);
    const LieVector v = random_lie(g, alg, k, 4);
    const RatTensor t = hall_to_tensor(v);
    const bool there_and_back = tensor_to_hall(t) == v;
    // A Lie element built by brackets, converted through Hall coordinates.
    const LieVector a = random_lie(g, alg, 1), b = random_lie(g, alg, uniform(g, 1, 3));
    const RatTensor s = tensor_commutator(hall_to_tensor(a), hall_to_tensor(b));
    const bool back_and_there = hall_to_tensor(tensor_to_hall(s)) == s;
    return there_and_back && back_and_there ? "" : "v=" + v.to_string();
  });
}

// Checks the SNF contract from the outside, without trusting snf()'s own
// internal assertion.
inline PropertyResult snf_recomposition(Rng& rng, std::size_t count) {
  return run_property("SNF recomposition and divisibility", rng, count, [&](Rng& g) -> std::string {
    const IntegerMatrix m = random_matrix(g, 6, 9);
    const SnfResult s = snf(m);
    bool ok = s.U * m * s.V == s.diagonal;
    for (std::size_t r = 0; r < s.diagonal.rows(); ++r)
      for (std::size_t c = 0; c < s.diagonal.cols(); ++c) {
        const BigInt& d = s.diagonal(r, c);
        if (r != c || r >= s.rank()) ok = ok && d == 0;
        else ok = ok && d == s.invariant_factors[r];
      }
    for (std::size_t i = 0; i < s.rank(); ++i) {
      ok = ok && s.invariant_factors[i] > 0;
      if (i + 1 < s.rank()) ok = ok && s.invariant_factors[i + 1] % s.invariant_factors[i] == 0;
    }
    ok = ok && abs(determinant(s.U)) == 1 && abs(determinant(s.V)) == 1;
    ok = ok && rank_exact(m) == s.rank() && rank_mod_prime(m) == s.rank();
    if (ok) return "";
    std::string dump;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t c = 0; c < m.cols(); ++c) dump += m(r, c).str() + (c + 1 < m.cols() ? "," : "");
      dump += ";";
    }
    return dump;
  });
}

inline PropertyResult derivation_leibniz(Rng& rng, std::size_t count) {
  const WModule& wm = w_module();
  const auto alg = lie_algebra(magnus_alphabet(3));
  static constexpr std::array<std::pair<int, int>, 6> kPairs = {{{1, 2}, {2, 3}, {1, 3}, {2, 1}, {3, 2}, {3, 1}}};
  return run_property("Leibniz rule for derivation_extend", rng, count, [&](Rng& g) -> std::string {
    const auto [p, q] = kPairs[uniform(g, 0, 5)];
    const LieVector a = random_lie(g, alg, 1), b = random_lie(g, alg, uniform(g, 1, 2));
    const LieVector lhs = wm.derivation_extend(p, q, bracket(a, b));
    const LieVector rhs = bracket(wm.derivation_extend(p, q, a), b) + bracket(a, wm.derivation_extend(p, q, b));
    return lhs == rhs ? "" : "e" + std::to_string(p) + std::to_string(q) + " a=" + a.to_string() + " b=" + b.to_string();
  });
}

// Two independent builds of the same report serialize to the same bytes.
inline PropertyResult report_determinism(Rng& rng, std::size_t count) {
  const AlphabetPtr mag = magnus_alphabet(3);
  auto build = [&](const Weight& l, const Weight& m, const Word& w) {
    Report r("determinism");
    r.add({"tensor", Status::Pass, l.to_string() + " x " + m.to_string(), tensor_decompose(l, m).to_json()});
    r.add({"class", Status::Finding, w.to_string(), tensor_to_hall(lcs_class(w, 1)).to_json()});
    r.facts()["rho"] = to_string(rho_convention());
    return r.to_json(false).dump(2);
  };
  return run_property("report determinism", rng, count, [&](Rng& g) -> std::string {
    auto weight = [&] {
      const int c = uniform(g, -2, 1), b = c + uniform(g, 0, 2), a = b + uniform(g, 0, 2);
      return Weight{{a, b, c}};
    };
    const Weight l = weight(), m = weight();
    const Word w = random_word(g, mag, 6);
    const std::string first = build(l, m, w), second = build(l, m, w);
    return first == second ? "" : l.to_string() + " " + m.to_string() + " " + w.to_string();
  });
}

// Degree-(p+q) class of [u,v] is the bracket of the classes.
inline PropertyResult lcs_bracket_compatibility(Rng& rng, std::size_t count) {
  const AlphabetPtr f = free_basis(3);
  auto element = [&](Rng& g, int p) {
    Word w = random_word(g, f, 4);
    for (int i = 1; i < p; ++i) w = commutator(w, random_word(g, f, 3));
    return w;
  };
  return run_property("lower central series bracket compatibility", rng, count, [&](Rng& g) -> std::string {
    const int p = uniform(g, 1, 2), q = uniform(g, 1, 4 - p);
    const Word u = element(g, p), v = element(g, q);
    const LieVector lhs = tensor_to_hall(lcs_class(commutator(u, v), p + q));
    const LieVector rhs = bracket(tensor_to_hall(lcs_class(u, p)), tensor_to_hall(lcs_class(v, q)));
    return lhs == rhs ? "" : "u=" + u.to_string() + " v=" + v.to_string();
  });
}

inline PropertyResult tau1_homomorphism(Rng& rng, std::size_t count) {
  const AlphabetPtr mag = magnus_alphabet(3);
  return run_property("tau_1 additivity on IA words", rng, count, [&](Rng& g) -> std::string {
    const Word a = random_word(g, mag, 4), b = random_word(g, mag, 4);
    const bool ok = tau(eval_word(a * b), 1) == tau(eval_word(a), 1) + tau(eval_word(b), 1);
    return ok ? "" : "a=" + a.to_string() + " b=" + b.to_string();
  });
}

inline PropertyResult rho_multiplicativity(Rng& rng, std::size_t count) {
  auto random_aut = [](Rng& g) {
    Automorphism a = Automorphism::identity(3);
    for (int i = uniform(g, 0, 4); i > 0; --i) {
      const int p = uniform(g, 1, 3);
      int q = uniform(g, 1, 2);
      if (q >= p) ++q;
      a = compose(a, elementary(p, q, 3, uniform(g, 0, 1) ? 1 : -1));
    }
    return a;
  };
  return run_property("rho multiplicativity", rng, count, [&](Rng& g) -> std::string {
    const Automorphism a = random_aut(g), b = random_aut(g);
    return rho(compose(a, b)) == rho(a) * rho(b) ? "" : "a=" + a.to_json().dump() + " b=" + b.to_json().dump();
  });
}

inline std::vector<PropertyResult> run_all(std::uint64_t seed, std::size_t count) {
  using Fn = PropertyResult (*)(Rng&, std::size_t);
  static constexpr Fn kAll[] = {free_group_product_identities, free_group_inverse_identities,
                                magnus_multiplicativity,       jacobi_antisymmetry,
                                tensor_hall_round_trip,        snf_recomposition,
                                derivation_leibniz,            report_determinism,
                                lcs_bracket_compatibility,     tau1_homomorphism,
                                rho_multiplicativity};
  std::vector<PropertyResult> out;
  std::uint64_t k = 0;
  for (Fn f : kAll) {
    Rng rng(seed + k++);  // independent stream per property
    out.push_back(f(rng, count));
  }
  return out;
}

inline nlohmann::json to_json(const PropertyResult& r) {
  nlohmann::json j = {{"name", r.name}, {"instances", r.instances}, {"failures", r.failures}};
  if (!r.counterexample.empty()) j["counterexample"] = r.counterexample;
  return j;
}

}  // namespace ia3::props

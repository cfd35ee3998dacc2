// Copyright 2026 The ia3 Authors
// SPDX-License-Identifier: Apache-2.0

// Walks through the library: evaluate a relator, take its degree-2 class,
// bracket it with a generator, then rank the whole bracket matrix and split
// the weight-3 Lie power into irreducibles.

#include <iostream>

#include "ia3/bracketmap.hpp"
#include "ia3/glrep.hpp"
#include "ia3/relations.hpp"

int main() {
  using namespace ia3;
  const auto& specs = default_relators();
  const RelatorSpec& r = find_relator(specs, "R3-2");
  std::cout << r.id << " = " << r.word.to_string() << '\n';
  std::cout << "  trivial automorphism: " << std::boolalpha << verify_relator(r.word) << '\n';

  const LieVector cls = degree2_class(r);
  std::cout << "  class: " << cls.to_string() << '\n';
  const LieVector k12 = LieVector::generator(magnus_alphabet(3), "K12");
  std::cout << "  [class, K12]: " << bracket(cls, k12).to_string() << '\n';

  const BracketMatrix bm = build_bracket_matrix(specs);
  const CokernelReport ck = cokernel(bm);
  std::cout << "bracket matrix " << bm.matrix.rows() << " x " << bm.matrix.cols() << ", rank " << ck.rank()
            << ", cokernel rank " << ck.cokernel_rank() << (ck.free() ? " (free)" : " (torsion)") << '\n';

  std::cout << "L(3) = " << decompose_char(module_char("LF3")).to_string() << '\n';
  return 0;
}

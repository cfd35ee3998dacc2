// Copyright 2026 The ia3 Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>
#include <string>
#include <vector>

#include "ia3/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ia3::cli::run(std::move(args), std::cout, std::cerr);
}

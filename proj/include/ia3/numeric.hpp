// Copyright 2026 The ia3 Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace ia3 {

// Expression templates off: values are safe to capture with auto and to
// forward into containers.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>, boost::multiprecision::et_off>;

// Always "p/q", including integers ("3/1").
inline std::string to_fraction_string(const Rational& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

// Accepts "p/q" or a bare integer.
inline Rational parse_rational(std::string_view text) {
  try {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(BigInt(std::string(text)));
    BigInt num(std::string(text.substr(0, slash)));
    BigInt den(std::string(text.substr(slash + 1)));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed rational \"" + std::string(text) + "\"");
  }
}

inline bool is_integral(const Rational& q) { return denominator(q) == 1; }

inline BigInt to_integer(const Rational& q) {
  if (!is_integral(q)) throw std::domain_error("non-integral value " + to_fraction_string(q));
  return numerator(q);
}

}  // namespace ia3

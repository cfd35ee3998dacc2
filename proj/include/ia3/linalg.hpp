// Copyright 2026 The ia3 Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ia3/numeric.hpp"

namespace ia3 {

// Dense row-major matrix over an exact ring.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<T> column(std::size_t c) const {
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
  }

  // Keeps the listed columns, in the given order.
  Matrix select_columns(const std::vector<std::size_t>& keep) const {
    Matrix out(rows_, keep.size());
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t k = 0; k < keep.size(); ++k) out(r, k) = (*this)(r, keep[k]);
    return out;
  }
  Matrix select_rows(const std::vector<std::size_t>& keep) const {
    Matrix out(keep.size(), cols_);
    for (std::size_t k = 0; k < keep.size(); ++k)
      for (std::size_t c = 0; c < cols_; ++c) out(k, c) = (*this)(keep[k], c);
    return out;
  }

  Matrix transpose() const {
    Matrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator-(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix difference: dimension mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& lhs = a(i, k);
        if (lhs == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (b(k, j) != 0) out(i, j) += lhs * b(k, j);
      }
    return out;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix-vector product: dimension mismatch");
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        if (v[c] != 0 && (*this)(r, c) != 0) out[r] += (*this)(r, c) * v[c];
    return out;
  }

  // [this | other]
  Matrix hstack(const Matrix& other) const {
    if (rows_ != other.rows_) throw std::invalid_argument("hstack: row count mismatch");
    Matrix out(rows_, cols_ + other.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c);
      for (std::size_t c = 0; c < other.cols_; ++c) out(r, cols_ + c) = other(r, c);
    }
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntegerMatrix = Matrix<BigInt>;
using RationalMatrix = Matrix<Rational>;

inline RationalMatrix to_rational(const IntegerMatrix& m) {
  RationalMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = Rational(m(r, c));
  return out;
}

namespace detail {

// Fraction-free elimination in place. Returns the rank; `det` receives the
// last pivot (the determinant up to the recorded sign for square input).
inline std::size_t bareiss(IntegerMatrix& a, BigInt* det = nullptr) {
  const std::size_t m = a.rows(), n = a.cols();
  BigInt prev = 1;
  std::size_t rank = 0;
  int sign = 1;
  for (std::size_t c = 0; c < n && rank < m; ++c) {
    std::size_t piv = rank;
    while (piv < m && a(piv, c) == 0) ++piv;
    if (piv == m) continue;
    if (piv != rank) {
      a.swap_rows(piv, rank);
      sign = -sign;
    }
    const BigInt p = a(rank, c);
    for (std::size_t i = rank + 1; i < m; ++i) {
      const BigInt f = a(i, c);
      for (std::size_t j = c + 1; j < n; ++j) {
        BigInt v = p * a(i, j);
        if (f != 0 && a(rank, j) != 0) v -= f * a(rank, j);
        if (prev != 1) v /= prev;
        a(i, j) = std::move(v);
      }
      a(i, c) = 0;
    }
    prev = p;
    ++rank;
  }
  if (det) *det = (m == n && rank == n) ? BigInt(sign * prev) : BigInt(0);
  return rank;
}

}  // namespace detail

inline std::size_t rank_exact(IntegerMatrix m) { return detail::bareiss(m); }

inline std::size_t rank_exact(const RationalMatrix& m) {
  // Clear denominators row by row; rank is unchanged.
  IntegerMatrix scaled(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    BigInt l = 1;
    for (std::size_t c = 0; c < m.cols(); ++c) l = boost::multiprecision::lcm(l, denominator(m(r, c)));
    for (std::size_t c = 0; c < m.cols(); ++c) scaled(r, c) = numerator(m(r, c)) * (l / denominator(m(r, c)));
  }
  return detail::bareiss(scaled);
}

inline BigInt determinant(IntegerMatrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix is not square");
  if (m.rows() == 0) return 1;
  BigInt det;
  detail::bareiss(m, &det);
  return det;
}

// Rank over Z/p for p = 2^61 - 1 (probabilistic cross-check of rank_exact).
inline std::size_t rank_mod_prime(const IntegerMatrix& m) {
  constexpr std::uint64_t p = (std::uint64_t{1} << 61) - 1;
  auto mulmod = [](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
  };
  auto powmod = [&](std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    for (; e; e >>= 1, b = mulmod(b, b))
      if (e & 1) r = mulmod(r, b);
    return r;
  };
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::uint64_t> a(rows * cols);
  const BigInt bp = p;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      BigInt v = m(r, c) % bp;
      if (v < 0) v += bp;
      a[r * cols + c] = static_cast<std::uint64_t>(v);
    }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[rank * cols + j]);
    const std::uint64_t inv = powmod(a[rank * cols + c], p - 2);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      const std::uint64_t f = mulmod(a[i * cols + c], inv);
      if (f == 0) continue;
      for (std::size_t j = c; j < cols; ++j)
        a[i * cols + j] = (a[i * cols + j] + p - mulmod(f, a[rank * cols + j])) % p;
    }
    ++rank;
  }
  return rank;
}

struct SnfResult {
  std::vector<BigInt> invariant_factors;  // nonzero diagonal entries, d1 | d2 | ...
  IntegerMatrix diagonal;                 // U * M * V
  IntegerMatrix U;
  IntegerMatrix V;

  std::size_t rank() const noexcept { return invariant_factors.size(); }
  bool all_units() const {
    return std::all_of(invariant_factors.begin(), invariant_factors.end(), [](const BigInt& d) { return d == 1; });
  }
};

namespace detail {

struct SnfWork {
  IntegerMatrix d, u, v;

  void row_axpy(std::size_t dst, std::size_t src, const BigInt& f) {  // row dst -= f * row src
    for (std::size_t c = 0; c < d.cols(); ++c)
      if (d(src, c) != 0) d(dst, c) -= f * d(src, c);
    for (std::size_t c = 0; c < u.cols(); ++c)
      if (u(src, c) != 0) u(dst, c) -= f * u(src, c);
  }
  void col_axpy(std::size_t dst, std::size_t src, const BigInt& f) {  // col dst -= f * col src
    for (std::size_t r = 0; r < d.rows(); ++r)
      if (d(r, src) != 0) d(r, dst) -= f * d(r, src);
    for (std::size_t r = 0; r < v.rows(); ++r)
      if (v(r, src) != 0) v(r, dst) -= f * v(r, src);
  }
  void swap_rows(std::size_t a, std::size_t b) {
    d.swap_rows(a, b);
    u.swap_rows(a, b);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    d.swap_cols(a, b);
    v.swap_cols(a, b);
  }
};

}  // namespace detail

// Smith normal form by elimination with minimal-absolute-value pivots.
// Throws std::logic_error if the recomposition U*M*V = D fails.
inline SnfResult snf(const IntegerMatrix& m) {
  using boost::multiprecision::abs;
  const std::size_t rows = m.rows(), cols = m.cols();
  detail::SnfWork w{m, IntegerMatrix::identity(rows), IntegerMatrix::identity(cols)};
  auto& d = w.d;
  std::size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    auto bring_min_to_pivot = [&](bool whole_block) {
      std::optional<std::pair<std::size_t, std::size_t>> best;
      auto consider = [&](std::size_t r, std::size_t c) {
        if (d(r, c) == 0) return;
        if (!best || abs(d(r, c)) < abs(d(best->first, best->second))) best = {r, c};
      };
      if (whole_block) {
        for (std::size_t r = t; r < rows; ++r)
          for (std::size_t c = t; c < cols; ++c) consider(r, c);
      } else {
        for (std::size_t r = t; r < rows; ++r) consider(r, t);
        for (std::size_t c = t; c < cols; ++c) consider(t, c);
      }
      if (!best) return false;
      w.swap_rows(t, best->first);
      w.swap_cols(t, best->second);
      return true;
    };
    if (!bring_min_to_pivot(true)) break;
    for (;;) {
      bool clean = true;
      for (std::size_t r = t + 1; r < rows; ++r) {
        if (d(r, t) == 0) continue;
        const BigInt q = d(r, t) / d(t, t);
        if (q != 0) w.row_axpy(r, t, q);
        if (d(r, t) != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        if (d(t, c) == 0) continue;
        const BigInt q = d(t, c) / d(t, t);
        if (q != 0) w.col_axpy(c, t, q);
        if (d(t, c) != 0) clean = false;
      }
      if (!clean) {
        bring_min_to_pivot(false);
        continue;
      }
      // Divisibility: fold an offending row into the pivot row and repeat.
      std::optional<std::size_t> offender;
      for (std::size_t r = t + 1; r < rows && !offender; ++r)
        for (std::size_t c = t + 1; c < cols; ++c)
          if (d(r, c) % d(t, t) != 0) {
            offender = r;
            break;
          }
      if (!offender) break;
      w.row_axpy(t, *offender, BigInt(-1));
    }
    if (d(t, t) < 0) {
      for (std::size_t c = 0; c < cols; ++c) d(t, c) = -d(t, c);
      for (std::size_t c = 0; c < rows; ++c) w.u(t, c) = -w.u(t, c);
    }
  }
  SnfResult res;
  for (std::size_t i = 0; i < t; ++i) res.invariant_factors.push_back(d(i, i));
  if ((w.u * m) * w.v != d) throw std::logic_error("snf: recomposition U*M*V = D failed");
  for (std::size_t i = 1; i < res.invariant_factors.size(); ++i)
    if (res.invariant_factors[i] % res.invariant_factors[i - 1] != 0)
      throw std::logic_error("snf: invariant factors do not divide successively");
  res.diagonal = std::move(w.d);
  res.U = std::move(w.u);
  res.V = std::move(w.v);
  return res;
}

// Exact solution of M x = v over Q, or nullopt if v is outside the column space.
inline std::optional<std::vector<Rational>> in_span(const std::vector<Rational>& v, const RationalMatrix& m) {
  if (v.size() != m.rows()) throw std::invalid_argument("in_span: vector length differs from row count");
  const std::size_t rows = m.rows(), cols = m.cols();
  RationalMatrix a = m.hstack([&] {
    RationalMatrix col(rows, 1);
    for (std::size_t r = 0; r < rows; ++r) col(r, 0) = v[r];
    return col;
  }());
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    a.swap_rows(piv, rank);
    const Rational inv = 1 / a(rank, c);
    std::vector<std::size_t> nz;
    for (std::size_t j = c; j <= cols; ++j)
      if (a(rank, j) != 0) {
        a(rank, j) *= inv;
        nz.push_back(j);
      }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank || a(i, c) == 0) continue;
      const Rational f = a(i, c);
      for (std::size_t j : nz) a(i, j) -= f * a(rank, j);
    }
    pivot_cols.push_back(c);
    ++rank;
  }
  for (std::size_t r = rank; r < rows; ++r)
    if (a(r, cols) != 0) return std::nullopt;
  std::vector<Rational> x(cols);
  for (std::size_t k = 0; k < pivot_cols.size(); ++k) x[pivot_cols[k]] = a(k, cols);
  return x;
}

inline std::optional<std::vector<Rational>> in_span(const std::vector<BigInt>& v, const IntegerMatrix& m) {
  std::vector<Rational> q(v.begin(), v.end());
  return in_span(q, to_rational(m));
}

// X with A X = B for square nonsingular A (Gauss-Jordan over Q); nullopt if
// A is singular.
inline std::optional<RationalMatrix> solve_square(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != a.rows()) throw std::invalid_argument("solve_square: dimension mismatch");
  const std::size_t n = a.rows(), m = b.cols();
  RationalMatrix w = a.hstack(b);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && w(piv, c) == 0) ++piv;
    if (piv == n) return std::nullopt;
    w.swap_rows(piv, c);
    const Rational inv = 1 / w(c, c);
    std::vector<std::size_t> nz;
    for (std::size_t j = c; j < n + m; ++j)
      if (w(c, j) != 0) {
        w(c, j) *= inv;
        nz.push_back(j);
      }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || w(i, c) == 0) continue;
      const Rational f = w(i, c);
      for (std::size_t j : nz) w(i, j) -= f * w(c, j);
    }
  }
  RationalMatrix x(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) x(i, j) = w(i, n + j);
  return x;
}

// Integer CSV: one row per line, comma separated, no header.
inline void write_csv(std::ostream& out, const IntegerMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out << ',';
      out << m(r, c);
    }
    out << '\n';
  }
}

inline IntegerMatrix read_csv(std::istream& in) {
  std::vector<std::vector<BigInt>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<BigInt> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.emplace_back(cell);
      } catch (const std::exception&) {
        throw std::invalid_argument("csv line " + std::to_string(lineno) + ": bad integer \"" + cell + "\"");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::invalid_argument("csv line " + std::to_string(lineno) + ": ragged row");
    rows.push_back(std::move(row));
  }
  IntegerMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = std::move(rows[r][c]);
  return m;
}

}  // namespace ia3

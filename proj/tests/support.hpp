// Shared helpers for the test binaries: deterministic random matrices and
// small lattice constructors.
#pragma once

#include <random>

#include "grasslat/matrix.hpp"

namespace testing_support {

using grasslat::Int;
using grasslat::IntMatrix;
using grasslat::Rat;
using grasslat::RatMatrix;

inline IntMatrix int_matrix(std::size_t rows, std::size_t cols, std::initializer_list<long> entries) {
  std::vector<Int> data;
  for (long e : entries) data.emplace_back(e);
  return IntMatrix(rows, cols, std::move(data));
}

/// Columns given as lists of integers.
inline IntMatrix int_columns(std::initializer_list<std::initializer_list<long>> cols) {
  std::vector<std::vector<Int>> c;
  std::size_t rows = 0;
  for (const auto& col : cols) {
    std::vector<Int> v;
    for (long e : col) v.emplace_back(e);
    rows = v.size();
    c.push_back(std::move(v));
  }
  return IntMatrix::from_columns(rows, c);
}

/// Product of random elementary column operations; entries stay small.
inline IntMatrix random_unimodular(std::size_t n, std::mt19937_64& rng, int steps = 12) {
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) {
    if (n == 1 && (rng() & 1)) u.negate_column(0);
    return u;
  }
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> factor(-2, 2);
  for (int s = 0; s < steps; ++s) {
    std::size_t a = pick(rng), b = pick(rng);
    if (a == b) {
      u.negate_column(a);
      continue;
    }
    switch (rng() % 3) {
      case 0: u.swap_columns(a, b); break;
      default: u.add_column_multiple(a, b, Int(factor(rng))); break;
    }
  }
  return u;
}

inline IntMatrix random_int_matrix(std::size_t rows, std::size_t cols, long lo, long hi,
                                   std::mt19937_64& rng) {
  std::uniform_int_distribution<long> d(lo, hi);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

/// Upper unipotent integral matrix with random entries above the diagonal.
inline IntMatrix random_upper_unipotent(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> d(-3, 3);
  IntMatrix u = IntMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) u(i, j) = d(rng);
  return u;
}

}  // namespace testing_support

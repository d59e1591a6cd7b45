#include "grasslat/matrix.hpp"

#include <algorithm>

namespace grasslat {

bool lex_less(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) return a.rows() < b.rows();
  if (a.cols() != b.cols()) return a.cols() < b.cols();
  const auto& x = a.data();
  const auto& y = b.data();
  for (std::size_t i = 0; i < x.size(); ++i) {
    int c = cmp(x[i], y[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

RatMatrix to_rat(const IntMatrix& m) {
  RatMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

namespace {

template <typename T>
Matrix<T> gram_impl(const Matrix<T>& b) {
  Matrix<T> g(b.cols(), b.cols());
  for (std::size_t i = 0; i < b.cols(); ++i)
    for (std::size_t j = i; j < b.cols(); ++j) {
      T s = 0;
      for (std::size_t k = 0; k < b.rows(); ++k) s += b(k, i) * b(k, j);
      g(i, j) = s;
      g(j, i) = s;
    }
  return g;
}

template <typename T>
Matrix<T> kronecker_impl(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ia = 0; ia < a.rows(); ++ia)
    for (std::size_t ja = 0; ja < a.cols(); ++ja) {
      const T& s = a(ia, ja);
      if (s == 0) continue;
      for (std::size_t ib = 0; ib < b.rows(); ++ib)
        for (std::size_t jb = 0; jb < b.cols(); ++jb)
          out(ia * b.rows() + ib, ja * b.cols() + jb) = s * b(ib, jb);
    }
  return out;
}

}  // namespace

RatMatrix gram(const RatMatrix& basis) { return gram_impl(basis); }
IntMatrix gram(const IntMatrix& basis) { return gram_impl(basis); }

RatMatrix kronecker(const RatMatrix& a, const RatMatrix& b) { return kronecker_impl(a, b); }
IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b) { return kronecker_impl(a, b); }

Int det(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw Error("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign > 0 ? Int(a(n - 1, n - 1)) : Int(-a(n - 1, n - 1));
}

Rat det(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw Error("determinant of a non-square matrix");
  IntMatrix scaled(m.rows(), m.cols());
  Int scale = 1;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Int d = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) d = lcm(d, Int(m(i, j).get_den()));
    scale *= d;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Rat t = m(i, j) * d;
      scaled(i, j) = t.get_num();
    }
  }
  return make_rat(det(scaled), scale);
}

RatMatrix inverse(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw Error("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix a = m;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) throw Error("singular matrix");
    if (p != k)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(k, j), a(p, j));
        std::swap(inv(k, j), inv(p, j));
      }
    Rat piv = a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) /= piv;
      inv(k, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      Rat f = a(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

std::size_t rank(const RatMatrix& m) {
  RatMatrix a = m;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r, j), a(p, j));
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (a(i, c) == 0) continue;
      Rat f = a(i, c) / a(r, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

std::size_t rank(const IntMatrix& m) { return rank(to_rat(m)); }

Rat dot(const RatVector& a, const RatVector& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Int dot(const IntVector& a, const IntVector& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat bilinear(const RatMatrix& g, const IntVector& x, const IntVector& y) {
  Rat s = 0;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    if (x[i] == 0) continue;
    Rat row = 0;
    for (std::size_t j = 0; j < g.cols(); ++j)
      if (y[j] != 0) row += g(i, j) * y[j];
    s += row * x[i];
  }
  return s;
}

Int common_denominator(const RatMatrix& m) {
  Int d = 1;
  for (const auto& x : m.data()) d = lcm(d, Int(x.get_den()));
  return d;
}

}  // namespace grasslat

namespace grasslat {

bool IndependenceTracker::try_add(const IntVector& v) {
  RatVector w(v.begin(), v.end());
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Rat f = w[pivots_[r]];
    if (f == 0) continue;
    for (std::size_t i = 0; i < w.size(); ++i) w[i] -= f * rows_[r][i];
  }
  std::size_t p = 0;
  while (p < w.size() && w[p] == 0) ++p;
  if (p == w.size()) return false;
  const Rat inv = 1 / w[p];
  for (auto& x : w) x *= inv;
  rows_.push_back(std::move(w));
  pivots_.push_back(p);
  return true;
}

}  // namespace grasslat

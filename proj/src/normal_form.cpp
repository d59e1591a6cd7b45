#include "grasslat/normal_form.hpp"

#include <algorithm>

namespace grasslat {

namespace {

// Replaces columns (c, j) by a unimodular combination that zeroes row i of column j.
void gcd_combine(IntMatrix& h, IntMatrix& u, std::size_t i, std::size_t c, std::size_t j) {
  const Int a = h(i, c);
  const Int b = h(i, j);
  if (a == 0) {
    h.swap_columns(c, j);
    u.swap_columns(c, j);
    return;
  }
  Int g, x, y;
  mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  const Int bg = b / g;
  const Int ag = a / g;
  auto apply = [&](IntMatrix& m) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
      Int mc = m(r, c);
      Int mj = m(r, j);
      m(r, c) = x * mc + y * mj;
      m(r, j) = ag * mj - bg * mc;
    }
  };
  apply(h);
  apply(u);
}

}  // namespace

HermiteDecomposition column_hermite(const IntMatrix& m) {
  HermiteDecomposition out{m, IntMatrix::identity(m.cols()), 0};
  IntMatrix& h = out.h;
  IntMatrix& u = out.u;
  std::size_t c = 0;
  for (std::size_t i = 0; i < h.rows() && c < h.cols(); ++i) {
    for (std::size_t j = c + 1; j < h.cols(); ++j)
      if (h(i, j) != 0) gcd_combine(h, u, i, c, j);
    if (h(i, c) == 0) continue;
    if (h(i, c) < 0) {
      h.negate_column(c);
      u.negate_column(c);
    }
    for (std::size_t j = 0; j < c; ++j) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, j).get_mpz_t(), h(i, c).get_mpz_t());
      if (q != 0) {
        h.add_column_multiple(j, c, -q);
        u.add_column_multiple(j, c, -q);
      }
    }
    ++c;
  }
  out.rank = c;
  return out;
}

std::pair<IntMatrix, IntMatrix> hnf(const IntMatrix& m) {
  auto d = column_hermite(m);
  if (d.rank < m.cols()) throw Error("rank deficient");
  return {std::move(d.h), std::move(d.u)};
}

IntVector snf(const IntMatrix& m) {
  IntMatrix a = m;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  const std::size_t n = std::min(rows, cols);
  IntVector out(n, Int(0));

  auto swap_rows = [&](std::size_t p, std::size_t q) {
    if (p == q) return;
    for (std::size_t j = 0; j < cols; ++j) std::swap(a(p, j), a(q, j));
  };

  for (std::size_t t = 0; t < n; ++t) {
    // Bring the smallest nonzero entry of the trailing block to (t, t).
    bool found = false;
    std::size_t bi = t, bj = t;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (a(i, j) != 0 && (!found || abs(a(i, j)) < abs(a(bi, bj)))) {
          found = true;
          bi = i;
          bj = j;
        }
    if (!found) break;
    swap_rows(t, bi);
    a.swap_columns(t, bj);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        for (std::size_t j = t; j < cols; ++j) a(i, j) -= q * a(t, j);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        a.add_column_multiple(j, t, -q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) {
        // Move the smallest nonzero entry of row/column t to the pivot.
        std::size_t pi = t, pj = t;
        for (std::size_t i = t + 1; i < rows; ++i)
          if (a(i, t) != 0 && abs(a(i, t)) < abs(a(pi, pj))) {
            pi = i;
            pj = t;
          }
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a(t, j) != 0 && abs(a(t, j)) < abs(a(pi, pj))) {
            pi = t;
            pj = j;
          }
        swap_rows(t, pi);
        a.swap_columns(t, pj);
        continue;
      }
      // Divisibility of the trailing block by the pivot.
      bool divisible = true;
      for (std::size_t i = t + 1; i < rows && divisible; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            for (std::size_t k = t; k < cols; ++k) a(t, k) += a(i, k);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    out[t] = abs(a(t, t));
  }
  return out;
}

IntMatrix int_kernel(const IntMatrix& m) {
  auto d = column_hermite(m);
  IntMatrix k = d.u.columns(d.rank, m.cols() - d.rank);
  if (k.cols() == 0) return k;
  return hnf(k).first;
}

IntMatrix saturate_columns(const IntMatrix& c) {
  if (rank(c) < c.cols()) throw Error("rank deficient");
  IntMatrix k = int_kernel(c.transpose());
  return int_kernel(k.transpose());
}

IntMatrix complete_to_unimodular(const IntVector& x) {
  IntMatrix row(1, x.size(), x);
  auto d = column_hermite(row);
  if (d.rank != 1 || d.h(0, 0) != 1) throw Error("vector is not primitive");
  // x^t V = e_1^t, hence x = V^{-t} e_1.
  RatMatrix vinv = inverse(to_rat(d.u));
  IntMatrix out(x.size(), x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) out(i, j) = vinv(j, i).get_num();
  return out;
}

}  // namespace grasslat

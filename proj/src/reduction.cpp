#include "grasslat/reduction.hpp"

namespace grasslat {

// Integral LLL on the Gram matrix (Cohen, Algorithm 2.6.7) with the Gram
// matrix itself updated alongside the transform. Indices are 1-based inside
// to follow the usual presentation; d[0] = 1.
LllResult lll_gram(const RatMatrix& g0) {
  const std::size_t n = g0.rows();
  if (g0.cols() != n) throw Error("gram matrix must be square");
  Int scale = common_denominator(g0);
  IntMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = Rat(g0(i, j) * scale).get_num();

  IntMatrix h = IntMatrix::identity(n);
  if (n <= 1) return {h, g0};

  std::vector<Int> d(n + 1);
  IntMatrix lam(n + 1, n + 1);
  auto b = [&](std::size_t i, std::size_t j) -> Int& { return g(i - 1, j - 1); };

  auto redi = [&](std::size_t k, std::size_t l) {
    Int twice = 2 * lam(k, l);
    if (abs(twice) <= d[l]) return;
    // q = nearest integer to lam/d, halves rounded up
    Int q;
    Int num = 2 * lam(k, l) + d[l];
    Int den = 2 * d[l];
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    // b_k <- b_k - q b_l : update Gram row and column k
    const Int bkk = b(k, k) - 2 * q * b(k, l) + q * q * b(l, l);
    for (std::size_t i = 1; i <= n; ++i)
      if (i != k) b(k, i) -= q * b(l, i);
    b(k, k) = bkk;
    for (std::size_t i = 1; i <= n; ++i)
      if (i != k) b(i, k) = b(k, i);
    h.add_column_multiple(k - 1, l - 1, -q);
    lam(k, l) -= q * d[l];
    for (std::size_t i = 1; i < l; ++i) lam(k, i) -= q * lam(l, i);
  };

  auto swapi = [&](std::size_t k, std::size_t kmax) {
    for (std::size_t i = 1; i <= n; ++i) std::swap(b(k, i), b(k - 1, i));
    for (std::size_t i = 1; i <= n; ++i) std::swap(b(i, k), b(i, k - 1));
    h.swap_columns(k - 1, k - 2);
    for (std::size_t j = 1; j + 2 <= k; ++j) std::swap(lam(k, j), lam(k - 1, j));
    const Int l = lam(k, k - 1);
    const Int bb = (d[k - 2] * d[k] + l * l) / d[k - 1];
    for (std::size_t i = k + 1; i <= kmax; ++i) {
      Int t = lam(i, k);
      lam(i, k) = (d[k] * lam(i, k - 1) - l * t) / d[k - 1];
      lam(i, k - 1) = (bb * t + l * lam(i, k)) / d[k];
    }
    d[k - 1] = bb;
  };

  d[0] = 1;
  d[1] = b(1, 1);
  std::size_t k = 2, kmax = 1;
  while (k <= n) {
    if (k > kmax) {
      kmax = k;
      for (std::size_t j = 1; j <= k; ++j) {
        Int u = b(k, j);
        for (std::size_t i = 1; i < j; ++i) u = (d[i] * u - lam(k, i) * lam(j, i)) / d[i - 1];
        if (j < k)
          lam(k, j) = u;
        else {
          if (u == 0) throw Error("gram matrix is not positive definite");
          d[k] = u;
        }
      }
    }
    for (;;) {
      redi(k, k - 1);
      if (4 * d[k] * d[k - 2] < 3 * d[k - 1] * d[k - 1] - 4 * lam(k, k - 1) * lam(k, k - 1)) {
        swapi(k, kmax);
        if (k > 2) --k;
        continue;
      }
      break;
    }
    for (std::size_t l = k - 2; l >= 1; --l) redi(k, l);
    ++k;
  }

  RatMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = make_rat(g(i, j), scale);
  return {h, out};
}

}  // namespace grasslat

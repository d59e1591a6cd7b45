#include <doctest.h>

#include <map>

#include "grasslat/normal_form.hpp"
#include "support.hpp"

using namespace grasslat;
using namespace testing_support;

namespace {

bool is_column_hnf(const IntMatrix& h) {
  long last_pivot = -1;
  for (std::size_t j = 0; j < h.cols(); ++j) {
    std::size_t p = 0;
    while (p < h.rows() && h(p, j) == 0) ++p;
    if (p == h.rows() || static_cast<long>(p) <= last_pivot || h(p, j) <= 0) return false;
    for (std::size_t k = 0; k < j; ++k)
      if (h(p, k) < 0 || h(p, k) >= h(p, j)) return false;
    last_pivot = static_cast<long>(p);
  }
  return true;
}

// gcd of all k x k minors of m, for the SNF oracle.
Int minor_gcd(const IntMatrix& m, std::size_t k) {
  Int g = 0;
  std::vector<std::size_t> rows(k), cols(k);
  std::function<void(std::size_t, std::size_t, std::vector<std::size_t>&, std::size_t,
                     const std::function<void()>&)>
      choose = [&](std::size_t start, std::size_t n, std::vector<std::size_t>& out, std::size_t depth,
                   const std::function<void()>& body) {
        if (depth == out.size()) {
          body();
          return;
        }
        for (std::size_t i = start; i < n; ++i) {
          out[depth] = i;
          choose(i + 1, n, out, depth + 1, body);
        }
      };
  choose(0, m.rows(), rows, 0, [&] {
    choose(0, m.cols(), cols, 0, [&] {
      IntMatrix sub(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(rows[i], cols[j]);
      g = gcd(g, det(sub));
    });
  });
  return g;
}

}  // namespace

TEST_CASE("hnf of the identity") {
  auto [h, u] = hnf(IntMatrix::identity(2));
  CHECK(h == IntMatrix::identity(2));
  CHECK(u == IntMatrix::identity(2));
}

TEST_CASE("hnf agrees with a brute-force search over small unimodular transforms") {
  IntMatrix m = int_columns({{2, 0}, {1, 1}});
  std::vector<IntMatrix> found;
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b)
      for (int c = -3; c <= 3; ++c)
        for (int d = -3; d <= 3; ++d) {
          if (a * d - b * c != 1 && a * d - b * c != -1) continue;
          IntMatrix h = m * int_matrix(2, 2, {a, b, c, d});
          if (!is_column_hnf(h)) continue;
          bool dup = false;
          for (const auto& f : found) dup = dup || f == h;
          if (!dup) found.push_back(h);
        }
  REQUIRE(found.size() == 1);
  CHECK(found[0] == int_columns({{1, 1}, {0, 2}}));
  CHECK(hnf(m).first == found[0]);
}

TEST_CASE("hnf rejects rank-deficient input") {
  CHECK_THROWS_WITH(hnf(int_columns({{1, 2}, {2, 4}})), "rank deficient");
}

TEST_CASE("hnf is a canonical form for the column span") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t rows = 2 + trial % 4;
    std::size_t cols = 1 + trial % rows;
    IntMatrix m = random_int_matrix(rows, cols, -6, 6, rng);
    if (rank(m) < cols) continue;
    auto [h, u] = hnf(m);
    CHECK(is_column_hnf(h));
    CHECK(m * u == h);
    Int du = det(u);
    CHECK((du == 1 || du == -1));
    CHECK(hnf(m * random_unimodular(cols, rng)).first == h);
    CHECK(hnf(h).first == h);
  }
}

TEST_CASE("snf examples") {
  CHECK(snf(IntMatrix::identity(3)) == IntVector{1, 1, 1});
  CHECK(snf(int_matrix(2, 2, {2, 0, 0, 6})) == IntVector{2, 6});
  CHECK(snf(int_matrix(2, 2, {2, 4, 6, 8})) == IntVector{2, 4});
  CHECK(snf(int_matrix(2, 3, {0, 0, 0, 0, 0, 0})) == IntVector{0, 0});
}

TEST_CASE("snf matches the gcd-of-minors oracle and is unimodularly invariant") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 150; ++trial) {
    std::size_t rows = 1 + trial % 4;
    std::size_t cols = 1 + (trial / 4) % 4;
    IntMatrix m = random_int_matrix(rows, cols, -9, 9, rng);
    IntVector d = snf(m);
    Int prev = 1;
    for (std::size_t k = 1; k <= d.size(); ++k) {
      Int g = minor_gcd(m, k);
      Int expect = (prev == 0) ? Int(0) : (g == 0 ? Int(0) : Int(g / prev));
      CHECK(d[k - 1] == expect);
      prev = g;
    }
    IntMatrix mixed = random_unimodular(rows, rng).transpose() * m * random_unimodular(cols, rng);
    CHECK(snf(mixed) == d);
  }
}

TEST_CASE("int_kernel examples") {
  IntMatrix k = int_kernel(int_matrix(1, 3, {1, 0, 0}));
  CHECK(k == int_columns({{0, 1, 0}, {0, 0, 1}}));

  IntMatrix k2 = int_kernel(int_matrix(1, 3, {2, 1, 1}));
  CHECK(k2.cols() == 2);
  CHECK(det(gram(k2)) == 6);

  IntMatrix k3 = int_kernel(int_matrix(2, 4, {3, 1, 0, 0, 0, 0, 1, 0}));
  CHECK(k3 == hnf(int_columns({{1, -3, 0, 0}, {0, 0, 0, 1}})).first);

  CHECK(int_kernel(IntMatrix::identity(3)).cols() == 0);
}

TEST_CASE("int_kernel of (2,1,1) matches saturated short kernel vectors") {
  // Oracle: all kernel vectors with norm^2 <= 10, then the lattice they span.
  std::vector<IntVector> vecs;
  for (long a = -3; a <= 3; ++a)
    for (long b = -3; b <= 3; ++b)
      for (long c = -3; c <= 3; ++c)
        if (2 * a + b + c == 0 && a * a + b * b + c * c <= 10 && (a || b || c))
          vecs.push_back({a, b, c});
  IntMatrix span = IntMatrix::from_columns(3, vecs);
  IntMatrix basis = column_hermite(span).h.columns(0, 2);
  CHECK(basis == int_kernel(int_matrix(1, 3, {2, 1, 1})));
}

TEST_CASE("int_kernel output is saturated") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    IntMatrix m = random_int_matrix(1 + trial % 3, 4, -7, 7, rng);
    IntMatrix k = int_kernel(m);
    CHECK(k.cols() == 4 - rank(m));
    if (k.cols() == 0) continue;
    for (const Int& d : snf(k)) CHECK(d == 1);
    CHECK(IntMatrix(m * k) == IntMatrix(m.rows(), k.cols()));
  }
}

TEST_CASE("saturate_columns and unimodular completion") {
  CHECK(saturate_columns(int_columns({{2, 4}})) == int_columns({{1, 2}}));
  CHECK(saturate_columns(int_columns({{2, 0}, {0, 3}})) == IntMatrix::identity(2));
  CHECK(complete_to_unimodular({1, 0, 0}) == IntMatrix::identity(3));
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    IntMatrix v = random_int_matrix(4, 1, -20, 20, rng);
    IntVector x = v.column(0);
    if (content(x) != 1) continue;
    IntMatrix u = complete_to_unimodular(x);
    CHECK(u.column(0) == x);
    Int d = det(u);
    CHECK((d == 1 || d == -1));
  }
  CHECK_THROWS_AS(complete_to_unimodular({2, 4}), Error);
}

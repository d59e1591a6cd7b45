#include <doctest.h>

#include <cmath>

#include "grasslat/minima.hpp"
#include "grasslat/volumes.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace grasslat;
using namespace testing_support;

namespace {

Lattice lat(std::initializer_list<std::initializer_list<long>> cols) { return Lattice(int_columns(cols)); }

using oracles::naive_vectors;

std::vector<std::vector<Rat>> sorted_vectors(const Lattice& l, const Rat& bound) {
  std::vector<std::vector<Rat>> out;
  for (const auto& v : short_vectors(l, bound)) out.push_back(v.vector);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("short vectors examples") {
  Lattice z2(IntMatrix::identity(2));
  CHECK(short_vectors(z2, 1).size() == 2);
  auto two = sorted_vectors(z2, 2);
  REQUIRE(two.size() == 4);
  std::vector<std::vector<Rat>> expect = {{0, 1}, {1, -1}, {1, 0}, {1, 1}};
  CHECK(two == expect);
  Lattice half(RatMatrix(2, 2, {Rat(1), Rat(1, 2), Rat(0), Rat(1, 2)}));
  auto hv = sorted_vectors(half, Rat(1, 2));
  std::vector<std::vector<Rat>> hexpect = {{Rat(1, 2), Rat(-1, 2)}, {Rat(1, 2), Rat(1, 2)}};
  CHECK(hv == hexpect);
  Config tiny;
  tiny.max_vectors = 3;
  CHECK_THROWS_AS(short_vectors(z2, 2, tiny), BudgetExceeded);
}

TEST_CASE("short vectors match a coefficient box scan") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 80; ++trial) {
    std::size_t n = 2 + trial % 3;
    std::size_t r = 1 + trial % n;
    IntMatrix m = random_int_matrix(n, r, -5, 5, rng);
    if (rank(m) < r) continue;
    Lattice l = scaled(Lattice(m), Rat(1, 1 + trial % 2));
    Rat bound(10 + trial % 30, 1 + trial % 2);
    auto ours = short_vectors(l, bound);
    auto naive = naive_vectors(l, bound);
    CHECK(ours.size() == naive.size());
    for (const auto& v : ours) CHECK(v.norm_sq <= bound);
  }
}

TEST_CASE("LLL output is reduced and unimodular") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 2 + trial % 5;
    IntMatrix m = random_int_matrix(n, n, -30, 30, rng);
    if (rank(m) < n) continue;
    RatMatrix g = gram(to_rat(m));
    LllResult red = lll_gram(g);
    CHECK(to_rat(red.transform).transpose() * g * to_rat(red.transform) == red.gram);
    Int d = det(red.transform);
    CHECK((d == 1 || d == -1));
    // Size reduction against the first vector.
    for (std::size_t j = 1; j < n; ++j) CHECK(abs(2 * red.gram(0, j)) <= red.gram(0, 0));
  }
}

TEST_CASE("successive minima examples") {
  MinimaProfile z3 = successive_minima(Lattice(IntMatrix::identity(3)));
  CHECK(z3.s_sq == std::vector<Rat>{1, 1, 1});
  CHECK(successive_minima(lat({{2, 0}, {0, 3}})).s_sq == std::vector<Rat>{4, 9});
  Lattice half(RatMatrix(2, 2, {Rat(1), Rat(1, 2), Rat(0), Rat(1, 2)}));
  CHECK(successive_minima(half).s_sq == std::vector<Rat>{Rat(1, 2), Rat(1, 2)});
}

TEST_CASE("successive minima match the naive scan") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = 1 + trial % 3;
    IntMatrix m = random_int_matrix(r + 1, r, -4, 4, rng);
    if (rank(m) < r) continue;
    Lattice l(m);
    MinimaProfile p = successive_minima(l);
    REQUIRE(p.s_sq.size() == r);
    auto vecs = naive_vectors(l, p.s_sq.back());
    std::sort(vecs.begin(), vecs.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
    IndependenceTracker t;
    std::vector<Rat> greedy;
    for (const auto& [v, q] : vecs)
      if (t.try_add(v)) greedy.push_back(q);
    CHECK(greedy == p.s_sq);
    for (std::size_t i = 0; i < r; ++i) CHECK(bilinear(gram(l.basis()), p.witnesses[i], p.witnesses[i]) == p.s_sq[i]);
  }
}

TEST_CASE("min covol sublattice examples") {
  for (std::size_t k = 1; k <= 3; ++k) CHECK(min_covol_sublattice(Lattice(IntMatrix::identity(3)), k).covol_sq == 1);
  Lattice rect = lat({{2, 0}, {0, 3}});
  SublatticeMin m1 = min_covol_sublattice(rect, 1);
  CHECK(m1.covol_sq == 4);
  CHECK(equals(sublattice(rect, m1.coords), lat({{2, 0}})));
  CHECK(min_covol_sublattice(rect, 2).covol_sq == 36);
  CHECK_THROWS_AS(min_covol_sublattice(rect, 3), Error);
  CHECK_THROWS_AS(min_covol_sublattice(rect, 0), Error);
}

TEST_CASE("min covol sublattice matches the brute-force subset oracle") {
  // Oracle: all k-subsets of lattice vectors with norm^2 <= 50. Instances are
  // kept only when the Minkowski bound on the optimum's minima stays inside
  // that radius, which makes the subset search complete.
  std::mt19937_64 rng(2024);
  int tested = 0;
  while (tested < 200) {
    std::size_t r = 1 + rng() % 3;
    std::size_t n = r + rng() % 2;
    IntMatrix m = random_int_matrix(n, r, -3, 3, rng);
    if (rank(m) < r) continue;
    Lattice l(m);
    auto vecs = naive_vectors(l, 50);
    if (!oracles::subset_oracle_complete(r, vecs, 50)) continue;
    ++tested;
    for (std::size_t k = 1; k <= r; ++k) {
      SublatticeMin got = min_covol_sublattice(l, k);
      CHECK(got.covol_sq == oracles::subset_min_covol(l, k, vecs));
      Lattice sub = sublattice(l, got.coords);
      CHECK(covol_sq(sub) == got.covol_sq);
      CHECK(equals(saturate_in(sub, l), sub));
    }
  }
}

TEST_CASE("slope table examples") {
  SlopeTable z = slope_table(Lattice(IntMatrix::identity(3)));
  CHECK(z.summary.mu == doctest::Approx(0));
  CHECK(z.summary.mu_max == doctest::Approx(0));
  CHECK(z.summary.mu_min == doctest::Approx(0));

  SlopeTable rect = slope_table(lat({{2, 0}, {0, 3}}));
  CHECK(rect.summary.mu == doctest::Approx(-0.5 * std::log(6.0)).epsilon(1e-12));
  CHECK(rect.summary.mu_max == doctest::Approx(-std::log(2.0)).epsilon(1e-12));
  CHECK(rect.summary.mu_min == doctest::Approx(-std::log(3.0)).epsilon(1e-12));
  CHECK(rect.summary.argmax_rank == 1);
  CHECK(rect.summary.argmin_rank == 1);
}

TEST_CASE("slope ties go to the largest rank") {
  SlopeSummary s = summarize_slopes({Rat(4), Rat(16)});
  CHECK(s.argmax_rank == 2);
  CHECK(s.argmin_rank == 0);
}

TEST_CASE("scaling covariance of minimal covolumes") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    IntMatrix m = random_int_matrix(3, 3, -4, 4, rng);
    if (rank(m) < 3) continue;
    Lattice l(m);
    Rat alpha(2 + trial % 3, 3);
    Lattice la = scaled(l, alpha);
    SlopeTable a = slope_table(l), b = slope_table(la);
    for (std::size_t k = 1; k <= 3; ++k)
      CHECK(b.min_covol_sq(k) == pow(alpha, 2 * k) * a.min_covol_sq(k));
    CHECK(std::abs(b.summary.mu_max - (a.summary.mu_max - log_rat(alpha))) < 1e-9);
  }
}

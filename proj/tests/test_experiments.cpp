#include <doctest.h>

#include <cmath>

#include "grasslat/experiments.hpp"

using namespace grasslat;

namespace {

const double kPi = 3.14159265358979323846;
const double kApery = 1.2020569031595942854;
const double kZeta5 = 1.0369277551433699263;

bool all_passed(const std::vector<InvariantResult>& rs) {
  for (const auto& r : rs)
    if (!r.passed) return false;
  return true;
}

const InvariantResult* find(const std::vector<InvariantResult>& rs, const std::string& name) {
  for (const auto& r : rs)
    if (r.name == name) return &r;
  return nullptr;
}

}  // namespace

TEST_CASE("zeta at small integers") {
  CHECK(std::fabs(zeta(2) - kPi * kPi / 6) < 1e-14);
  CHECK(std::fabs(zeta(3) - kApery) < 1e-14);
  CHECK(std::fabs(zeta(4) - std::pow(kPi, 4) / 90) < 1e-14);
  CHECK(std::fabs(zeta(5) - kZeta5) < 1e-14);
  CHECK_THROWS_AS(zeta(1), Error);
}

TEST_CASE("counting constants against closed forms") {
  // Ball volumes V1 = 2, V2 = pi, V3 = 4pi/3, V4 = pi^2/2.
  const double z2 = kPi * kPi / 6, z4 = std::pow(kPi, 4) / 90;
  CHECK(std::fabs(constant_cmn(1, 2) - 3 / kPi) < 1e-9);
  CHECK(std::fabs(constant_cmn(1, 3) - (2 * kPi / 3) / kApery) < 1e-9);
  const double c24 = 0.25 * 6 * (kPi * kPi / 2) * (4 * kPi / 3) / (2 * kPi) * z2 / (z4 * kApery);
  CHECK(std::fabs(constant_cmn(2, 4) - c24) < 1e-9);
  const double c14 = 0.25 * 4 * (kPi * kPi / 2) / 2 / z4;
  CHECK(std::fabs(constant_cmn(1, 4) - c14) < 1e-9);
  for (std::size_t n = 2; n <= 6; ++n)
    for (std::size_t m = 1; m < n; ++m) CHECK(std::fabs(constant_cmn(m, n) - constant_cmn(n - m, n)) < 1e-9);
  CHECK_THROWS_AS(constant_cmn(0, 3), Error);
  CHECK_THROWS_AS(constant_cmn(3, 3), Error);
}

TEST_CASE("point counts") {
  CHECK(count_points(1, 2, 2).n_b == 4);
  for (int b : {1, 7, 30}) CHECK(count_points(1, 3, b).n_b == count_points(2, 3, b).n_b);
  CHECK(count_points(1, 4, 12).n_b == count_points(3, 4, 12).n_b);
  CountReport r = count_points(1, 2, 400);
  CHECK(std::isfinite(r.ratio));
  CHECK(std::fabs(r.ratio - 1) < 0.1);
}

TEST_CASE("freeness counts") {
  const Rat b = 100;
  std::vector<PointRecord> recs = analyzed_points(2, 4, b);
  CountReport zero = count_free(recs, 2, 4, b, 0);
  CHECK(*zero.free_count + *zero.e_eps == count_points(2, 4, b).n_b);
  CHECK(*zero.e_eps == 0);  // ell < 0 never happens
  std::size_t ell_zero = 0;
  for (const auto& r : recs) ell_zero += r.report.ell_zero ? 1 : 0;
  CHECK(*zero.omega_eps >= ell_zero);
  // H = covol^4 for n = 4.
  for (long q = 2; pow(Rat(q * q + 1), 4) <= b * b; ++q) {
    GrassmannPoint p = unfree_family(2, 4, q);
    bool seen = false;
    for (const auto& r : recs)
      if (r.point == p) seen = r.report.ell_zero && is_at_most(r.report, 0);
    CHECK(seen);
  }
  CountReport half = count_free(recs, 2, 4, b, Rat(1, 2));
  CHECK(*half.e_eps <= half.n_b);

  CHECK(*count_free(1, 3, 50, Rat(1, 2)).e_eps == 0);
  CHECK(*count_free(1, 4, 20, Rat(1, 2)).e_eps == 0);
  CHECK_THROWS_AS(count_free(1, 3, 5, 1), Error);
}

TEST_CASE("max-slope counts") {
  // Gr(1,2): the tangent lattice has rank one, so every point is counted.
  CountReport line = count_by_max_slope(1, 2, 40);
  CHECK(*line.n_mu == line.n_b);
  CHECK(std::fabs(*line.c_prime_estimate - line.c_mn) < 1e-12);

  // Every point passing the slope filter lies within height B^d.
  const Rat b = 5;
  std::vector<PointRecord> recs = analyzed_points(1, 3, 4 * pow(b, 2));
  std::size_t passing = 0;
  for (const auto& r : recs)
    if (max_slope_at_most(r.report, b)) {
      ++passing;
      CHECK(r.point.height_sq() <= pow(b, 4));
    }
  CountReport r = count_by_max_slope(recs, 1, 3, b);
  CHECK(*r.n_mu == passing);
  CHECK(*r.c_prime_estimate > 0);
  CHECK(*r.c_prime_estimate < r.c_mn);
  CHECK_THROWS_AS(count_by_max_slope(1, 3, 1), Error);
}

TEST_CASE("equidistribution tables") {
  std::vector<PointRecord> recs = analyzed_points(2, 4, 64);
  for (const auto& row : equi_table(recs, 64, 3, "one")) CHECK(row.mean == 1);
  auto rows = equi_table(recs, 64, 3, "exp-slope");
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].level == 16);
  CHECK(rows[2].level == 64);
  CHECK(rows[2].sample == recs.size());
  for (const auto& row : equi_table(recs, 64, 3, "indicator:0")) {
    CHECK(row.mean >= 0);
    CHECK(row.mean <= 1);
  }
  CHECK(equi_table(recs, 64, 2, "minima").size() == 2 * 4);

  auto unit = equi_table(2, 4, 1, 2, "mu-max-u");
  CHECK(unit.back().sample == 6);
  CHECK(std::fabs(unit.back().mean) < 1e-12);

  CHECK_THROWS_AS(equi_table(recs, 64, 1, "one"), Error);
  CHECK_THROWS_AS(equi_table(recs, 64, 2, "median"), Error);
}

TEST_CASE("minima boxes") {
  CHECK(probe_minima_boxes(1, 2, {{1, 2}}, 2) == 4);
  CHECK(probe_minima_boxes(1, 2, {{10, 20}}, 2) == 0);
  const std::size_t lo = probe_minima_boxes(2, 3, {{1, 2}, {1, 2}}, 6);
  const std::size_t hi = probe_minima_boxes(2, 3, {{1, 2}, {2, 4}}, 6);
  const std::size_t merged = probe_minima_boxes(2, 3, {{1, 2}, {1, 4}}, 6);
  CHECK(lo + hi == merged);
  CHECK_THROWS_AS(probe_minima_boxes(2, 3, {{2, 4}, {1, 2}}, 6), Error);
  CHECK_THROWS_AS(probe_minima_boxes(2, 3, {{1, 2}}, 6), Error);
}

TEST_CASE("invariant suite") {
  VerifyOptions light;
  light.random_lattices = 12;
  light.linprog_instances = 100;
  auto lines = verify_suite(1, 3, 16, {}, light);
  CHECK(all_passed(lines));
  CHECK(find(lines, "lines-tangent-isometry") != nullptr);
  auto planes = verify_suite(2, 4, 16, {}, light);
  CHECK(all_passed(planes));
  REQUIRE(find(planes, "chen-tensor") != nullptr);
  CHECK(find(planes, "chen-tensor")->checked > 0);
  CHECK(find(planes, "small-s1") != nullptr);

  VerifyOptions faulty = light;
  faulty.corrupt_dual = true;
  auto broken = verify_suite(1, 3, 8, {}, faulty);
  const InvariantResult* ban = find(broken, "banaszczyk");
  REQUIRE(ban != nullptr);
  CHECK_FALSE(ban->passed);
  CHECK_FALSE(ban->counterexample.empty());
}

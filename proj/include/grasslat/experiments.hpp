#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "grasslat/config.hpp"
#include "grasslat/grassmann.hpp"

namespace grasslat {

/// Riemann zeta at an integer s >= 2 (Euler-Maclaurin, error below precision).
double zeta(unsigned s, double precision = 1e-15);

/// Schmidt's leading constant c_{m,n}.
double constant_cmn(std::size_t m, std::size_t n, double precision = 1e-9);

/// One enumerated point with its slope data.
struct PointRecord {
  GrassmannPoint point;
  FreenessReport report;
  double mu_max_u = 0;  ///< mu_max(u(T)) = mu_max(T) - mu(T)
};

/// Runs freeness() on every point, fanned out over cfg.workers; order preserved.
std::vector<PointRecord> analyze_points(const std::vector<GrassmannPoint>& points, const Config& cfg = {});
/// enumerate_points + analyze_points.
std::vector<PointRecord> analyzed_points(std::size_t m, std::size_t n, const Rat& b, const Config& cfg = {});

struct CountReport {
  std::size_t m = 0, n = 0;
  Rat b;
  std::size_t n_b = 0;  ///< points with H <= B
  double c_mn = 0;
  double ratio = 0;  ///< n_b / (c_mn B)
  std::optional<Rat> eps;
  std::optional<std::size_t> free_count;  ///< ell >= eps (height-one points count as free)
  std::optional<std::size_t> e_eps;       ///< n_b - free_count, i.e. ell < eps
  std::optional<std::size_t> omega_eps;   ///< ell <= eps
  std::optional<std::size_t> n_mu;        ///< mu_max(T) <= log B
  std::optional<double> n_mu_normalized;  ///< n_mu / B^(m(n-m))
  std::optional<double> c_prime_estimate;
  std::optional<std::size_t> c_prime_sample;
};

CountReport count_points(std::size_t m, std::size_t n, const Rat& b, const Config& cfg = {});
CountReport count_free(std::size_t m, std::size_t n, const Rat& b, const Rat& eps, const Config& cfg = {});
/// Same, from records covering at least height b.
CountReport count_free(const std::vector<PointRecord>& records, std::size_t m, std::size_t n, const Rat& b,
                       const Rat& eps);
CountReport count_by_max_slope(std::size_t m, std::size_t n, const Rat& b, const Config& cfg = {});
/// Same, from records covering at least height b^(m(n-m)).
CountReport count_by_max_slope(const std::vector<PointRecord>& records, std::size_t m, std::size_t n, const Rat& b);

struct EquiRow {
  Rat level;
  std::size_t sample = 0;
  double mean = 0;
  std::string statistic;
};

/// statistic: "exp-slope", "mu-max-u", "minima", "indicator:T" or "one".
/// Rows at B_i = B / 2^(levels - i), i = 1..levels.
std::vector<EquiRow> equi_table(std::size_t m, std::size_t n, const Rat& b, std::size_t levels,
                                const std::string& statistic, const Config& cfg = {});
std::vector<EquiRow> equi_table(const std::vector<PointRecord>& records, const Rat& b, std::size_t levels,
                                const std::string& statistic, const Config& cfg = {});

/// Primitive rank-r lattices in Z^n with covol <= R whose successive minima
/// satisfy lo_i <= s_i < hi_i for every box (lo_i, hi_i).
std::size_t probe_minima_boxes(std::size_t r, std::size_t n, const std::vector<std::pair<Rat, Rat>>& boxes,
                               const Rat& covol_bound, const Config& cfg = {});

struct InvariantResult {
  std::string name;
  bool passed = true;
  std::size_t checked = 0;
  std::string counterexample;
  std::string note;  ///< observed extremes, for invariants that are reported rather than bounded
};

struct VerifyOptions {
  /// Replace dual(L) by 2 dual(L) in the Banaszczyk check (fault injection).
  bool corrupt_dual = false;
  std::size_t random_lattices = 40;
  std::size_t linprog_instances = 1000;
  std::uint64_t seed = 20240611;
};

/// Runs the invariant catalogue over all points of Gr(m,n) with H <= B and
/// over seeded random lattices. Failures are reported, never thrown.
std::vector<InvariantResult> verify_suite(std::size_t m, std::size_t n, const Rat& b, const Config& cfg = {},
                                          const VerifyOptions& opts = {});

}  // namespace grasslat

#include "grasslat/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "grasslat/volumes.hpp"

namespace grasslat {

double zeta(unsigned s, double precision) {
  if (s < 2) throw Error("zeta requires s >= 2");
  // Euler-Maclaurin: sum_{k<N} k^-s + N^(1-s)/(s-1) + N^-s/2 + sum_j B_2j/(2j)! (s)_(2j-1) N^(-s-2j+1).
  static const long double bernoulli[] = {1.0L / 6, -1.0L / 30, 1.0L / 42, -1.0L / 30, 5.0L / 66, -691.0L / 2730};
  for (unsigned big_n = 8;; big_n *= 2) {
    const long double nn = big_n;
    long double head = 0;
    for (unsigned k = big_n - 1; k >= 1; --k) head += std::pow(static_cast<long double>(k), -static_cast<long double>(s));
    long double tail = std::pow(nn, 1.0L - s) / (s - 1) + std::pow(nn, -static_cast<long double>(s)) / 2;
    long double rising = s;  // s (s+1) ... (s+2j-2)
    long double fact = 2;    // (2j)!
    long double last = 0;
    for (unsigned j = 1; j <= 6; ++j) {
      if (j > 1) {
        rising *= (s + 2 * j - 3.0L) * (s + 2 * j - 2.0L);
        fact *= (2.0L * j - 1) * (2.0L * j);
      }
      last = bernoulli[j - 1] / fact * rising * std::pow(nn, -static_cast<long double>(s) - 2 * j + 1);
      tail += last;
    }
    if (std::fabs(last) < precision || big_n > (1u << 20)) return static_cast<double>(head + tail);
  }
}

double constant_cmn(std::size_t m, std::size_t n, double precision) {
  if (m < 1 || m >= n) throw Error("need 1 <= m <= n-1");
  const double zp = precision * 1e-3;
  long double c = 1.0L / n;
  // binomial(n, m)
  long double binom = 1;
  for (std::size_t i = 1; i <= m; ++i) binom = binom * (n - m + i) / i;
  c *= binom;
  for (std::size_t i = 0; i < m; ++i) c *= ball_volume(n - i);
  for (std::size_t i = 1; i <= m; ++i) c /= ball_volume(i);
  for (std::size_t i = 2; i <= m; ++i) c *= zeta(static_cast<unsigned>(i), zp);
  for (std::size_t i = 0; i < m; ++i) c /= zeta(static_cast<unsigned>(n - i), zp);
  return static_cast<double>(c);
}

namespace {

template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  workers = std::max(1u, workers);
  if (workers == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w)
    threads.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// Sum in sorted order so the result does not depend on how records were produced.
double stable_mean(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  long double s = 0;
  for (double v : values) s += v;
  return static_cast<double>(s / values.size());
}

bool within_height(const GrassmannPoint& p, const Rat& b) { return p.height_sq() <= b * b; }

std::string describe(const Lattice& l) {
  std::ostringstream s;
  write_lattice(s, l);
  std::string out = s.str();
  std::replace(out.begin(), out.end(), '\n', ';');
  return out;
}

}  // namespace

std::vector<PointRecord> analyze_points(const std::vector<GrassmannPoint>& points, const Config& cfg) {
  std::vector<std::optional<PointRecord>> slots(points.size());
  parallel_for(points.size(), cfg.workers, [&](std::size_t i) {
    FreenessReport r = freeness(points[i], cfg);
    double u = mu_max_u(r);
    slots[i] = PointRecord{points[i], std::move(r), u};
  });
  std::vector<PointRecord> out;
  out.reserve(points.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::vector<PointRecord> analyzed_points(std::size_t m, std::size_t n, const Rat& b, const Config& cfg) {
  return analyze_points(enumerate_points(m, n, b, cfg), cfg);
}

CountReport count_points(std::size_t m, std::size_t n, const Rat& b, const Config& cfg) {
  CountReport r;
  r.m = m;
  r.n = n;
  r.b = b;
  r.n_b = enumerate_points(m, n, b, cfg).size();
  r.c_mn = constant_cmn(m, n);
  r.ratio = r.n_b / (r.c_mn * b.get_d());
  return r;
}

CountReport count_free(const std::vector<PointRecord>& records, std::size_t m, std::size_t n, const Rat& b,
                       const Rat& eps) {
  CountReport r;
  r.m = m;
  r.n = n;
  r.b = b;
  r.c_mn = constant_cmn(m, n);
  r.eps = eps;
  std::size_t free = 0, at_most = 0;
  for (const auto& rec : records) {
    if (!within_height(rec.point, b)) continue;
    ++r.n_b;
    if (is_free(rec.report, eps)) ++free;
    if (is_at_most(rec.report, eps)) ++at_most;
  }
  r.ratio = r.n_b / (r.c_mn * b.get_d());
  r.free_count = free;
  r.e_eps = r.n_b - free;
  r.omega_eps = at_most;
  return r;
}

CountReport count_free(std::size_t m, std::size_t n, const Rat& b, const Rat& eps, const Config& cfg) {
  if (eps < 0 || eps >= 1) throw Error("epsilon must lie in [0,1)");
  return count_free(analyzed_points(m, n, b, cfg), m, n, b, eps);
}

// mu_max(T) <= log B forces h <= dim * mu_max(T), i.e. H <= B^dim, so the
// records up to that height contain every counted point.
CountReport count_by_max_slope(const std::vector<PointRecord>& records, std::size_t m, std::size_t n, const Rat& b) {
  if (b <= 1) throw Error("slope bound must exceed 1");
  const std::size_t d = m * (n - m);
  const Rat h = pow(b, d);
  CountReport r;
  r.m = m;
  r.n = n;
  r.b = b;
  r.c_mn = constant_cmn(m, n);
  std::size_t counted = 0;
  std::vector<double> weights;
  for (const auto& rec : records) {
    if (!within_height(rec.point, h)) continue;
    ++r.n_b;
    weights.push_back(std::exp(-static_cast<double>(d) * rec.mu_max_u));
    if (max_slope_at_most(rec.report, b)) ++counted;
  }
  r.ratio = r.n_b / (r.c_mn * h.get_d());
  r.n_mu = counted;
  r.n_mu_normalized = counted / h.get_d();
  r.c_prime_sample = weights.size();
  r.c_prime_estimate = r.c_mn * stable_mean(std::move(weights));
  return r;
}

CountReport count_by_max_slope(std::size_t m, std::size_t n, const Rat& b, const Config& cfg) {
  if (b <= 1) throw Error("slope bound must exceed 1");
  return count_by_max_slope(analyzed_points(m, n, pow(b, m * (n - m)), cfg), m, n, b);
}

std::vector<EquiRow> equi_table(const std::vector<PointRecord>& records, const Rat& b, std::size_t levels,
                                const std::string& statistic, const Config& cfg) {
  if (levels < 2) throw Error("equidistribution table needs at least two levels");
  // Per-record statistic values; "minima" yields one column per minimum.
  std::vector<std::vector<double>> values(records.size());
  std::vector<std::string> names;
  if (statistic == "exp-slope" || statistic == "mu-max-u" || statistic == "one" ||
      statistic.rfind("indicator:", 0) == 0) {
    names = {statistic};
    double threshold = 0;
    if (statistic.rfind("indicator:", 0) == 0) {
      try {
        threshold = std::stod(statistic.substr(10));
      } catch (const std::exception&) {
        throw Error("indicator statistic needs a numeric threshold");
      }
    }
    for (std::size_t i = 0; i < records.size(); ++i) {
      const auto& rec = records[i];
      const double d = static_cast<double>(rec.report.rank);
      double v;
      if (statistic == "exp-slope")
        v = std::exp(-d * rec.mu_max_u);
      else if (statistic == "mu-max-u")
        v = rec.mu_max_u;
      else if (statistic == "one")
        v = 1;
      else
        v = rec.mu_max_u <= threshold ? 1 : 0;
      values[i] = {v};
    }
  } else if (statistic == "minima") {
    std::size_t d = records.empty() ? 0 : records.front().report.rank;
    for (std::size_t j = 1; j <= d; ++j) names.push_back("minima:" + std::to_string(j));
    parallel_for(records.size(), cfg.workers, [&](std::size_t i) {
      const auto& rec = records[i];
      const double shift = log_rat(rec.report.dual_covol_sq) / (2.0 * rec.report.rank);
      std::vector<double> row;
      for (const Rat& s : successive_minima(tangent(rec.point).t, cfg).s_sq) row.push_back(0.5 * log_rat(s) + shift);
      values[i] = std::move(row);
    });
  } else {
    throw Error("unknown statistic: " + statistic);
  }

  std::vector<EquiRow> rows;
  for (std::size_t i = 1; i <= levels; ++i) {
    const Rat level = b / pow(Rat(2), levels - i);
    std::vector<std::vector<double>> cols(names.size());
    std::size_t sample = 0;
    for (std::size_t k = 0; k < records.size(); ++k) {
      if (!within_height(records[k].point, level)) continue;
      ++sample;
      for (std::size_t j = 0; j < names.size(); ++j) cols[j].push_back(values[k][j]);
    }
    for (std::size_t j = 0; j < names.size(); ++j) rows.push_back({level, sample, stable_mean(cols[j]), names[j]});
  }
  return rows;
}

std::vector<EquiRow> equi_table(std::size_t m, std::size_t n, const Rat& b, std::size_t levels,
                                const std::string& statistic, const Config& cfg) {
  return equi_table(analyzed_points(m, n, b, cfg), b, levels, statistic, cfg);
}

std::size_t probe_minima_boxes(std::size_t r, std::size_t n, const std::vector<std::pair<Rat, Rat>>& boxes,
                               const Rat& covol_bound, const Config& cfg) {
  if (boxes.size() != r) throw Error("need one box per successive minimum");
  for (std::size_t i = 0; i < r; ++i) {
    if (boxes[i].first > boxes[i].second) throw Error("box endpoints out of order");
    if (i > 0 && boxes[i].first < boxes[i - 1].first) throw Error("box lower endpoints must be nondecreasing");
  }
  if (covol_bound < 1) return 0;
  std::size_t count = 0;
  for (const auto& p : enumerate_points(r, n, pow(covol_bound, n), cfg)) {
    MinimaProfile s = successive_minima(p.lattice(), cfg);
    bool inside = true;
    for (std::size_t i = 0; i < r && inside; ++i) {
      const Rat lo = boxes[i].first * boxes[i].first, hi = boxes[i].second * boxes[i].second;
      inside = lo <= s.s_sq[i] && s.s_sq[i] < hi;
    }
    if (inside) ++count;
  }
  return count;
}

namespace {

class Suite {
 public:
  InvariantResult& get(const std::string& name) {
    for (auto& r : results_)
      if (r.name == name) return r;
    InvariantResult r;
    r.name = name;
    results_.push_back(std::move(r));
    return results_.back();
  }
  void check(const std::string& name, bool ok, const std::function<std::string()>& witness) {
    InvariantResult& r = get(name);
    ++r.checked;
    if (!ok && r.passed) {
      r.passed = false;
      r.counterexample = witness();
    }
  }
  std::vector<InvariantResult> take() { return std::move(results_); }

 private:
  std::vector<InvariantResult> results_;
};

constexpr double kTol = 1e-9;

// Minkowski, Banaszczyk, slope duality and Borek on one lattice and its dual.
void lattice_inequalities(Suite& suite, const Lattice& l, const SlopeTable& table, const Config& cfg,
                          const VerifyOptions& opts, double& borek_max) {
  const std::size_t r = l.rank();
  const Rat c = covol_sq(l);
  MinimaProfile s = successive_minima(l, cfg);
  Lattice d = opts.corrupt_dual ? scaled(dual(l), 2) : dual(l);
  MinimaProfile sd = successive_minima(d, cfg);
  auto who = [&] { return describe(l); };

  Rat prod = 1;
  for (const Rat& x : s.s_sq) prod *= x;
  double log_prod = 0;
  for (const Rat& x : s.s_sq) log_prod += log_rat(x);
  const double upper = 2 * std::log(minkowski_factor(r)) + log_rat(c);
  suite.check("minkowski", c <= prod && log_prod <= upper + kTol * (1 + std::fabs(upper)), who);

  bool ban = true;
  for (std::size_t k = 1; k <= r; ++k) {
    Rat p = s.s_sq[k - 1] * sd.s_sq[r - k];
    ban = ban && p >= 1 && p <= Rat(r * r);
  }
  suite.check("banaszczyk", ban, [&] {
    std::string w = describe(l) + " products:";
    for (std::size_t k = 1; k <= r; ++k) w += " " + to_string(Rat(s.s_sq[k - 1] * sd.s_sq[r - k]));
    return w;
  });

  // Two independent routes: the quotient formula on l's table, and the
  // maximal slope of the dual from its own search.
  const double via_dual = -slope_table(dual(l), cfg).summary.mu_max;
  suite.check("slope-duality", std::fabs(via_dual - table.summary.mu_min) < kTol, who);

  const double low_r = 0.5 * log_rat(s.s_sq.back()) + table.summary.mu_min;
  const double low_1 = 0.5 * log_rat(s.s_sq.front()) + table.summary.mu_max;
  borek_max = std::max(borek_max, low_r);
  suite.check("borek-lower", low_r >= -kTol && low_1 >= -kTol, who);
}

}  // namespace

std::vector<InvariantResult> verify_suite(std::size_t m, std::size_t n, const Rat& b, const Config& cfg,
                                          const VerifyOptions& opts) {
  Suite suite;
  const std::size_t d = m * (n - m);
  std::vector<PointRecord> records = analyzed_points(m, n, b, cfg);
  double borek_max = 0;

  for (const auto& rec : records) {
    const GrassmannPoint& p = rec.point;
    const Lattice l = p.lattice();
    const TangentData td = tangent(p);
    auto who = [&] { return describe(l); };

    suite.check("tangent-covolume", covol_sq(td.t) * pow(p.covol_sq, n) == 1, who);
    suite.check("dual-tangent", equals(td.t_dual, dual(td.t)), who);
    suite.check("factor-dual-orthogonal", equals(factor(l), dual(orthogonal(l))), who);
    suite.check("double-dual", equals(dual(dual(l)), l), who);
    const Lattice perp = orthogonal(l);
    suite.check("double-orthogonal", equals(orthogonal(perp), l) && covol_sq(perp) == p.covol_sq, who);
    suite.check("slope-height", std::fabs(mu(td.t) - p.log_height() / d) < kTol, who);

    const FreenessReport& fr = rec.report;
    if (!fr.height_one) {
      suite.check("freeness-range", fr.ell >= -kTol && fr.ell <= 1 + kTol, who);
      if (m == 1 || m + 1 == n) {
        const double floor_ell = (n - 1.0) / n;
        suite.check("projective-freeness-floor", fr.ell >= floor_ell - kTol, who);
      }
    }
    suite.check("max-slope-u-nonnegative", rec.mu_max_u >= -kTol, who);

    SlopeTable dual_table = slope_table(td.t_dual, cfg);
    lattice_inequalities(suite, td.t_dual, dual_table, cfg, opts, borek_max);
    lattice_inequalities(suite, l, slope_table(l, cfg), cfg, opts, borek_max);

    if (d <= 6) {
      const double a = mu_max(l, cfg), c = mu_max(perp, cfg);
      const double t = fr.dual_summary.mu_max;
      suite.check("chen-tensor", a + c <= t + kTol && t <= a + c + m + (n - m) + kTol, who);
    }
    if (m == 1) suite.check("lines-tangent-isometry", lemma_m1_check(p.basis.column(0), cfg), who);
  }

  // Duality involution between Gr(m,n) and Gr(n-m,n).
  {
    std::vector<GrassmannPoint> other = enumerate_points(n - m, n, b, cfg);
    std::set<IntMatrix, bool (*)(const IntMatrix&, const IntMatrix&)> keys(lex_less);
    for (const auto& q : other) keys.insert(q.basis);
    bool ok = other.size() == records.size();
    std::string bad;
    for (const auto& rec : records) {
      GrassmannPoint q = orthogonal_point(rec.point);
      if (q.covol_sq != rec.point.covol_sq || !keys.count(q.basis)) {
        ok = false;
        if (bad.empty()) bad = describe(rec.point.lattice());
      }
    }
    suite.check("duality-involution-counts", ok, [&] {
      return "counts " + std::to_string(records.size()) + " vs " + std::to_string(other.size()) + " " + bad;
    });
  }

  // Seeded random lattices with rational bases.
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<long> entry(-4, 4);
  for (std::size_t i = 0; i < opts.random_lattices; ++i) {
    const std::size_t r = 1 + i % 3;
    const std::size_t dim = r + (i / 3) % 2;
    IntMatrix mtx(dim, r);
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t c = 0; c < r; ++c) mtx(a, c) = entry(rng);
    if (rank(mtx) < r) continue;
    Lattice l = scaled(Lattice(mtx), Rat(1, 1 + static_cast<long>(i % 4)));
    SlopeTable table = slope_table(l, cfg);
    lattice_inequalities(suite, l, table, cfg, opts, borek_max);
    const Rat alpha(3, 2);
    SlopeTable st = slope_table(scaled(l, alpha), cfg);
    bool ok = true;
    for (std::size_t k = 1; k <= r; ++k) ok = ok && st.min_covol_sq(k) == pow(alpha, 2 * k) * table.min_covol_sq(k);
    ok = ok && std::fabs(st.summary.mu_max - (table.summary.mu_max - log_rat(alpha))) < kTol;
    suite.check("scaling-covariance", ok, [&] { return describe(l); });
  }

  // The small-s1 criterion on flag points with low freeness.
  if (1 < m && m + 1 < n) {
    const double cst = cfg.small_s1_constant;
    const Rat eps(1, 2);
    IntVector u(n, Int(0)), v(n, Int(0));
    u[0] = 1;
    v[n - 1] = 1;
    std::vector<GrassmannPoint> seeds = enumerate_points(m - 1, n - 2, 200, cfg);
    for (const auto& seed : seeds) {
      GrassmannPoint p = unfree_through_flag(u, v, seed);
      FreenessReport fr = freeness(p, cfg);
      if (fr.height_one || is_free(fr, eps)) continue;
      const Lattice l = p.lattice();
      const double lhs = log_rat(successive_minima(l, cfg).s_sq[0]) +
                         log_rat(successive_minima(orthogonal(l), cfg).s_sq[0]);
      const double rhs = 2 * std::log(cst) + eps.get_d() * n / d * log_rat(p.covol_sq);
      suite.check("small-s1", lhs <= rhs + kTol, [&] { return describe(l); });
    }
  }

  // Weighted power-mean inequality with sorted xi >= 1 and nonincreasing alpha >= 0.
  {
    std::mt19937_64 lr(opts.seed + 1);
    std::uniform_real_distribution<double> xi(1.0, 50.0), al(0.0, 5.0);
    for (std::size_t i = 0; i < opts.linprog_instances; ++i) {
      const std::size_t r = 1 + i % 8;
      std::vector<double> x(r), a(r);
      for (auto& t : x) t = xi(lr);
      for (auto& t : a) t = al(lr);
      std::sort(x.begin(), x.end());
      std::sort(a.begin(), a.end(), std::greater<>());
      double lhs = 0, logs = 0, asum = 0;
      for (std::size_t k = 0; k < r; ++k) {
        lhs += a[k] * std::log(x[k]);
        logs += std::log(x[k]);
        asum += a[k];
      }
      const double rhs = asum / r * logs;
      suite.check("power-mean", lhs <= rhs + kTol * (1 + std::fabs(rhs)), [&] {
        std::ostringstream s;
        s << "r=" << r << " lhs=" << lhs << " rhs=" << rhs;
        return s.str();
      });
    }
  }

  std::vector<InvariantResult> out = suite.take();
  for (auto& r : out)
    if (r.name == "borek-lower") {
      std::ostringstream s;
      s << "largest observed log s_r + mu_min: " << borek_max;
      r.note = s.str();
    }
  return out;
}

}  // namespace grasslat

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "grasslat/experiments.hpp"

using namespace grasslat;
using nlohmann::json;

namespace {

json int_json(const Int& v) {
  if (v.fits_slong_p()) return v.get_si();
  return to_string(v);
}

json rat_json(const Rat& v) { return to_string(v); }

json real_json(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

json columns_json(const IntMatrix& m) {
  json out = json::array();
  for (std::size_t c = 0; c < m.cols(); ++c) {
    json col = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) col.push_back(int_json(m(r, c)));
    out.push_back(col);
  }
  return out;
}

json columns_json(const RatMatrix& m) {
  json out = json::array();
  for (std::size_t c = 0; c < m.cols(); ++c) {
    json col = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) col.push_back(rat_json(m(r, c)));
    out.push_back(col);
  }
  return out;
}

json freeness_json(const GrassmannPoint& p, const FreenessReport& r) {
  json out;
  out["tangent_rank"] = r.rank;
  out["mu"] = real_json(r.mu_t);
  out["mu_max"] = real_json(r.mu_max_t);
  out["mu_min"] = real_json(r.mu_min_t);
  out["mu_max_u"] = real_json(mu_max_u(r));
  if (r.height_one)
    out["ell"] = r.ell_label();
  else
    out["ell"] = real_json(r.ell);
  out["ell_zero"] = r.ell_zero;
  out["ell_one"] = r.ell_one;
  json mcs = json::array();
  for (const Rat& x : r.dual_mcs) mcs.push_back(rat_json(x));
  out["dual_min_covol_sq"] = mcs;
  out["destabilizing_sublattice"] = columns_json(r.witness_lattice(p).basis());
  return out;
}

json point_json(const GrassmannPoint& p, const FreenessReport& r, const Config& cfg) {
  json out;
  out["m"] = p.m;
  out["n"] = p.n;
  out["basis"] = columns_json(p.basis);
  out["H2"] = rat_json(p.height_sq());
  MinimaProfile s = successive_minima(p.lattice(), cfg);
  json minima = json::array();
  for (const Rat& x : s.s_sq) minima.push_back(rat_json(x));
  out["minima_sq"] = minima;
  json witnesses = json::array();
  for (const IntVector& c : s.witnesses) {
    json v = json::array();
    for (std::size_t i = 0; i < p.n; ++i) {
      Int x = 0;
      for (std::size_t j = 0; j < p.m; ++j) x += p.basis(i, j) * c[j];
      v.push_back(int_json(x));
    }
    witnesses.push_back(v);
  }
  out["minima_witnesses"] = witnesses;
  out["tangent"] = freeness_json(p, r);
  return out;
}

json count_json(const CountReport& r) {
  json out;
  out["m"] = r.m;
  out["n"] = r.n;
  out["B"] = rat_json(r.b);
  out["N_B"] = r.n_b;
  out["c_mn"] = r.c_mn;
  out["ratio"] = real_json(r.ratio);
  if (r.eps) out["epsilon"] = rat_json(*r.eps);
  if (r.free_count) out["free"] = *r.free_count;
  if (r.e_eps) out["E_eps"] = *r.e_eps;
  if (r.omega_eps) out["ell_at_most_eps"] = *r.omega_eps;
  if (r.n_mu) out["N_mu"] = *r.n_mu;
  if (r.n_mu_normalized) out["N_mu_normalized"] = real_json(*r.n_mu_normalized);
  if (r.c_prime_estimate) out["c_prime_estimate"] = real_json(*r.c_prime_estimate);
  if (r.c_prime_sample) out["c_prime_sample"] = *r.c_prime_sample;
  return out;
}

std::string basis_cell(const IntMatrix& m) {
  std::string out;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (c) out += ';';
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r) out += ' ';
      out += to_string(m(r, c));
    }
  }
  return out;
}

void check_dims(std::size_t m, std::size_t n) {
  if (m < 1 || m >= n) throw Error("need 1 <= m <= n-1");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact lattice slopes and freeness on Grassmannians"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::size_t> budget;
  std::optional<unsigned> workers;
  std::optional<double> small_s1;
  app.add_option("--budget-vectors", budget, "Max vectors per enumeration (GRASSLAT_BUDGET_VECTORS)");
  app.add_option("--workers", workers, "Worker threads (GRASSLAT_WORKERS)");
  app.add_option("--small-s1-constant", small_s1, "Constant of the small-s1 diagnostic (GRASSLAT_SMALL_S1_CONSTANT)");

  std::size_t m = 0, n = 0, levels = 4;
  std::string height = "1", eps_text, format = "jsonl", statistic = "exp-slope", basis_file, q_text;
  double precision = 1e-9;
  VerifyOptions vopts;

  auto* constants = app.add_subcommand("constants", "Print the counting constant c_{m,n}");
  auto* enumerate = app.add_subcommand("enumerate", "Stream all points of height at most B");
  auto* point = app.add_subcommand("point", "Slope and freeness report for one lattice");
  auto* count = app.add_subcommand("count", "Count points, optionally split by freeness");
  auto* by_slope = app.add_subcommand("count-by-slope", "Count points by the maximal tangent slope");
  auto* equi = app.add_subcommand("equi", "Empirical means of a statistic at dyadic heights");
  auto* verify = app.add_subcommand("verify", "Run the invariant suite");
  auto* unfree = app.add_subcommand("unfree", "Emit a point with freeness zero");

  for (auto* sub : {constants, enumerate, count, by_slope, equi, verify, unfree}) {
    sub->add_option("--m", m)->required();
    sub->add_option("--n", n)->required();
  }
  constants->add_option("--precision", precision);
  for (auto* sub : {enumerate, count, equi, verify}) sub->add_option("--max-height", height)->required();
  enumerate->add_option("--format", format)->check(CLI::IsMember({"jsonl", "csv"}));
  point->add_option("--basis", basis_file)->required();
  count->add_option("--epsilon", eps_text);
  by_slope->add_option("--max-exp-slope", height)->required();
  equi->add_option("--levels", levels);
  equi->add_option("--statistic", statistic);
  verify->add_flag("--corrupt-dual", vopts.corrupt_dual, "Inject a scaled dual into the Banaszczyk check");
  verify->add_option("--random-lattices", vopts.random_lattices);
  verify->add_option("--seed", vopts.seed);
  unfree->add_option("--q", q_text)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    Config cfg = config_from_env();
    if (budget) cfg.max_vectors = *budget;
    if (workers) cfg.workers = std::max(1u, *workers);
    if (small_s1) cfg.small_s1_constant = *small_s1;
    const Rat b = parse_rat(height);
    std::cout << std::setprecision(15);

    if (*constants) {
      check_dims(m, n);
      std::cout << constant_cmn(m, n, precision) << "\n";
    } else if (*enumerate) {
      check_dims(m, n);
      auto pts = enumerate_points(m, n, b, cfg);
      if (format == "csv") std::cout << "m,n,H2,basis\n";
      for (const auto& p : pts) {
        if (format == "csv") {
          std::cout << m << "," << n << "," << to_string(p.height_sq()) << "," << basis_cell(p.basis) << "\n";
        } else {
          json j = {{"m", m}, {"n", n}, {"basis", columns_json(p.basis)}, {"H2", rat_json(p.height_sq())}};
          std::cout << j.dump() << "\n";
        }
      }
    } else if (*point) {
      std::ifstream in(basis_file);
      if (!in) throw Error("cannot open " + basis_file);
      GrassmannPoint p = point_from_lattice(read_lattice(in));
      std::cout << point_json(p, freeness(p, cfg), cfg).dump(2) << "\n";
    } else if (*count) {
      check_dims(m, n);
      CountReport r = eps_text.empty() ? count_points(m, n, b, cfg) : count_free(m, n, b, parse_rat(eps_text), cfg);
      std::cout << count_json(r).dump(2) << "\n";
    } else if (*by_slope) {
      check_dims(m, n);
      std::cout << count_json(count_by_max_slope(m, n, b, cfg)).dump(2) << "\n";
    } else if (*equi) {
      check_dims(m, n);
      std::cout << "level,sample,mean,statistic\n";
      for (const auto& row : equi_table(m, n, b, levels, statistic, cfg))
        std::cout << to_string(row.level) << "," << row.sample << "," << row.mean << "," << row.statistic << "\n";
    } else if (*verify) {
      check_dims(m, n);
      bool ok = true;
      for (const auto& r : verify_suite(m, n, b, cfg, vopts)) {
        json j = {{"invariant", r.name}, {"passed", r.passed}, {"checked", r.checked}};
        if (!r.passed) j["counterexample"] = r.counterexample;
        if (!r.note.empty()) j["note"] = r.note;
        std::cout << j.dump() << "\n";
        ok = ok && r.passed;
      }
      if (!ok) return 2;
    } else if (*unfree) {
      GrassmannPoint p = unfree_family(m, n, Int(q_text));
      std::cout << point_json(p, freeness(p, cfg), cfg).dump(2) << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

#include "grasslat/grassmann.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "grasslat/normal_form.hpp"
#include "grasslat/volumes.hpp"

namespace grasslat {

bool point_less(const GrassmannPoint& a, const GrassmannPoint& b) {
  if (a.covol_sq != b.covol_sq) return a.covol_sq < b.covol_sq;
  return lex_less(a.basis, b.basis);
}

GrassmannPoint point_from_basis(const IntMatrix& basis, std::size_t m, std::size_t n) {
  if (basis.rows() != n || basis.cols() != m) throw Error("basis must be an n x m matrix");
  if (m < 1 || m >= n) throw Error("need 1 <= m <= n-1");
  IntMatrix h = saturate_columns(basis);
  Rat c = det(gram(h));
  return {m, n, std::move(h), std::move(c)};
}

GrassmannPoint point_from_lattice(const Lattice& l) {
  return point_from_basis(l.integral_basis(), l.rank(), l.ambient_dim());
}

GrassmannPoint orthogonal_point(const GrassmannPoint& p) {
  IntMatrix k = int_kernel(p.basis.transpose());
  return {p.n - p.m, p.n, k, p.covol_sq};
}

Lattice tangent_dual(const GrassmannPoint& p) {
  return Lattice(kronecker(p.basis, int_kernel(p.basis.transpose())));
}

TangentData tangent(const GrassmannPoint& p) {
  Lattice l = p.lattice();
  return {tensor(dual(l), factor(l)), tangent_dual(p), p.height_sq(), p.log_height()};
}

Lattice FreenessReport::witness_lattice(const GrassmannPoint& p) const { return sublattice(tangent_dual(p), witness); }

std::string FreenessReport::ell_label() const {
  if (height_one) return "undefined-height-one";
  std::ostringstream s;
  s.precision(17);
  s << ell;
  return s.str();
}

FreenessReport freeness(const GrassmannPoint& p, const Config& cfg) {
  FreenessReport r;
  r.rank = p.tangent_rank();
  Lattice td = tangent_dual(p);
  SlopeTable table = slope_table(td, cfg);
  r.dual_covol_sq = table.min_covol_sq(r.rank);
  r.dual_mcs = table.min_covols();
  r.dual_summary = table.summary;
  r.witness = table.per_rank[table.summary.argmax_rank - 1].coords;

  const double log_c = log_rat(r.dual_covol_sq);
  r.mu_t = log_c / (2.0 * r.rank);
  r.mu_min_t = -table.summary.mu_max;
  r.mu_max_t = -table.summary.mu_min;

  if (r.dual_covol_sq == 1) {
    r.height_one = true;
    r.ell = std::numeric_limits<double>::quiet_NaN();
    return r;
  }
  // T* is integral, so every minimal covolume is an integer >= 1 and
  // mu_min(T) = min_k log(mcs_k)/(2k) >= 0, with equality iff some mcs_k = 1.
  const std::size_t k = table.summary.argmax_rank;
  const Rat& best = r.dual_mcs[k - 1];
  if (best == 1) {
    r.ell_zero = true;
    r.ell = 0;
  } else if (k == r.rank) {
    r.ell_one = true;
    r.ell = 1;
  } else {
    r.ell = (static_cast<double>(r.rank) / k) * log_rat(best) / log_c;
  }
  return r;
}

namespace {

void check_eps(const Rat& eps) {
  if (eps < 0 || eps >= 1) throw Error("epsilon must lie in [0,1)");
}

}  // namespace

// ell = min_k (d/k) log(mcs_k) / log C, so ell >= p/q iff mcs_k^(q d) >= C^(p k) for all k.
bool is_free(const FreenessReport& r, const Rat& eps) {
  check_eps(eps);
  if (r.height_one || eps == 0) return true;
  const Int p = eps.get_num(), q = eps.get_den();
  for (std::size_t k = 1; k <= r.rank; ++k) {
    const unsigned long lhs_exp = q.get_ui() * r.rank;
    const unsigned long rhs_exp = p.get_ui() * k;
    if (pow(r.dual_mcs[k - 1], lhs_exp) < pow(r.dual_covol_sq, rhs_exp)) return false;
  }
  return true;
}

bool is_at_most(const FreenessReport& r, const Rat& eps) {
  check_eps(eps);
  if (r.height_one) return false;
  const Int p = eps.get_num(), q = eps.get_den();
  for (std::size_t k = 1; k <= r.rank; ++k)
    if (pow(r.dual_mcs[k - 1], q.get_ui() * r.rank) <= pow(r.dual_covol_sq, p.get_ui() * k)) return true;
  return false;
}

bool max_slope_at_most(const FreenessReport& r, const Rat& b) {
  if (b <= 0) throw Error("bound must be positive");
  const std::size_t d = r.rank;
  for (std::size_t k = 0; k < d; ++k) {
    Rat quotient = k == 0 ? r.dual_covol_sq : r.dual_covol_sq / r.dual_mcs[k - 1];
    if (quotient > pow(b, 2 * (d - k))) return false;
  }
  return true;
}

namespace {

// Determinant of a small integer Gram matrix by Bareiss elimination in 128 bits.
__int128 small_gram_det(const std::vector<std::array<long, 8>>& g, std::size_t k) {
  __int128 a[8][8];
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) a[i][j] = g[i][j];
  __int128 prev = 1;
  int sign = 1;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = c;
    while (piv < k && a[piv][c] == 0) ++piv;
    if (piv == k) return 0;
    if (piv != c) {
      for (std::size_t j = 0; j < k; ++j) std::swap(a[piv][j], a[c][j]);
      sign = -sign;
    }
    for (std::size_t i = c + 1; i < k; ++i)
      for (std::size_t j = c + 1; j < k; ++j) a[i][j] = (a[i][j] * a[c][c] - a[i][c] * a[c][j]) / prev;
    prev = a[c][c];
  }
  return sign * a[k - 1][k - 1];
}

long long gcd_ll(long long a, long long b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

// gcd of the m x m minors of the n x m matrix with the given columns.
long long minor_gcd(const std::vector<const std::vector<long>*>& cols, std::size_t n) {
  const std::size_t m = cols.size();
  long long g = 0;
  std::vector<std::size_t> rows(m);
  auto rec = [&](auto&& self, std::size_t start, std::size_t depth) -> bool {
    if (depth == m) {
      __int128 a[8][8];
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) a[i][j] = (*cols[j])[rows[i]];
      __int128 prev = 1;
      int sign = 1;
      __int128 d = 0;
      bool zero = false;
      for (std::size_t c = 0; c < m && !zero; ++c) {
        std::size_t piv = c;
        while (piv < m && a[piv][c] == 0) ++piv;
        if (piv == m) {
          zero = true;
          break;
        }
        if (piv != c) {
          for (std::size_t j = 0; j < m; ++j) std::swap(a[piv][j], a[c][j]);
          sign = -sign;
        }
        for (std::size_t i = c + 1; i < m; ++i)
          for (std::size_t j = c + 1; j < m; ++j) a[i][j] = (a[i][j] * a[c][c] - a[i][c] * a[c][j]) / prev;
        prev = a[c][c];
      }
      if (!zero) d = sign * a[m - 1][m - 1];
      g = gcd_ll(g, static_cast<long long>(d));
      return g == 1;
    }
    for (std::size_t i = start; i + (m - depth) <= n; ++i) {
      rows[depth] = i;
      if (self(self, i + 1, depth + 1)) return true;
    }
    return false;
  };
  rec(rec, 0, 0);
  return g;
}

}  // namespace

// Completeness: if Lambda has covol <= B^(1/n), its successive minima satisfy
// 1 <= s_i and prod s_i <= (2^m/V(m)) covol (Minkowski), so s_i is at most
// (P / prod_{j<i} s_j)^(1/(m-i+1)) with P = (2^m/V(m)) B^(1/n). Lambda is the
// saturation of the span of its minima witnesses; for m <= 4 the minima are
// realized by a basis, so that span is Lambda itself.
std::vector<GrassmannPoint> enumerate_points(std::size_t m, std::size_t n, const Rat& b, const Config& cfg,
                                             bool assume_minima_basis) {
  if (m < 1 || m >= n) throw Error("need 1 <= m <= n-1");
  if (b < 1) throw Error("height bound must be at least 1");
  if (m > 8) throw BudgetExceeded("rank exceeds the enumeration limit");
  if (m > 4) assume_minima_basis = false;

  const Rat b_sq = b * b;
  const double log_covol_max = log_rat(b) / n;  // log of B^(1/n)
  const double p = minkowski_factor(m) * std::exp(log_covol_max) * (1 + 1e-9);
  const double p_sq = p * p;
  if (p_sq > 1e12) throw BudgetExceeded("enumeration radius too large");
  const long radius_sq = static_cast<long>(std::floor(p_sq));
  // covol_sq bound for the integer-only prefilter, slightly inflated.
  const long covol_sq_cap = static_cast<long>(std::floor(std::exp(2 * log_covol_max) * (1 + 1e-9))) + 1;

  std::vector<std::vector<long>> vecs = integer_ball(n, radius_sq);
  if (vecs.size() > cfg.max_vectors) throw BudgetExceeded("enumeration budget exceeded");
  std::vector<long> norms(vecs.size());
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    long s = 0;
    for (long x : vecs[i]) s += x * x;
    norms[i] = s;
  }
  std::vector<std::size_t> order(vecs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) { return norms[a] < norms[c]; });
  {
    std::vector<std::vector<long>> v2;
    std::vector<long> n2;
    for (std::size_t i : order) {
      v2.push_back(vecs[i]);
      n2.push_back(norms[i]);
    }
    vecs.swap(v2);
    norms.swap(n2);
  }

  auto dot = [&](std::size_t i, std::size_t j) {
    long s = 0;
    for (std::size_t t = 0; t < n; ++t) s += vecs[i][t] * vecs[j][t];
    return s;
  };

  auto accept = [&](const IntMatrix& h, std::vector<GrassmannPoint>& out) {
    Rat c = det(gram(h));
    if (pow(c, n) > b_sq) return;
    out.push_back({m, n, h, c});
  };

  auto worker = [&](unsigned id, unsigned stride, std::vector<GrassmannPoint>& out) {
    std::vector<std::size_t> idx(m);
    std::vector<std::array<long, 8>> g(m);
    auto rec = [&](auto&& self, std::size_t depth, std::size_t start, double prod) -> void {
      // Remaining product budget for s_depth .. s_m, each at least |v_depth|.
      const double rest = p / prod;
      const double cap = std::pow(rest, 2.0 / static_cast<double>(m - depth)) * (1 + 1e-9);
      for (std::size_t i = start; i < vecs.size(); ++i) {
        if (static_cast<double>(norms[i]) > cap) break;
        if (depth == 0 && (i % stride) != id) continue;
        idx[depth] = i;
        for (std::size_t j = 0; j <= depth; ++j) {
          g[depth][j] = dot(idx[depth], idx[j]);
          g[j][depth] = g[depth][j];
        }
        __int128 d = small_gram_det(g, depth + 1);
        if (d == 0) continue;
        if (depth + 1 < m) {
          self(self, depth + 1, i + 1, prod * std::sqrt(static_cast<double>(norms[i])));
          continue;
        }
        std::vector<const std::vector<long>*> cols(m);
        for (std::size_t j = 0; j < m; ++j) cols[j] = &vecs[idx[j]];
        if (assume_minima_basis) {
          if (d > covol_sq_cap) continue;
          if (minor_gcd(cols, n) != 1) continue;
          IntMatrix raw(n, m);
          for (std::size_t j = 0; j < m; ++j)
            for (std::size_t t = 0; t < n; ++t) raw(t, j) = (*cols[j])[t];
          accept(hnf(raw).first, out);
        } else {
          IntMatrix raw(n, m);
          for (std::size_t j = 0; j < m; ++j)
            for (std::size_t t = 0; t < n; ++t) raw(t, j) = (*cols[j])[t];
          accept(saturate_columns(raw), out);
        }
      }
    };
    rec(rec, 0, 0, 1.0);
  };

  const unsigned workers = std::max(1u, cfg.workers);
  std::vector<std::vector<GrassmannPoint>> parts(workers);
  if (workers == 1) {
    worker(0, 1, parts[0]);
  } else {
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w)
      threads.emplace_back([&, w] {
        try {
          worker(w, workers, parts[w]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& t : threads) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  std::vector<GrassmannPoint> all;
  for (auto& part : parts)
    for (auto& pt : part) all.push_back(std::move(pt));
  std::sort(all.begin(), all.end(), point_less);
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

GrassmannPoint unfree_family(std::size_t m, std::size_t n, const Int& q) {
  if (!(1 < m && m + 1 < n)) throw Error("unfree family requires 1 < m < n-1");
  if (q < 1) throw Error("q must be a positive integer");
  IntMatrix b(n, m);
  b(0, 0) = q;
  b(1, 0) = 1;
  for (std::size_t j = 1; j < m; ++j) b(j + 1, j) = 1;
  return point_from_basis(b, m, n);
}

GrassmannPoint unfree_through_flag(const IntVector& u, const IntVector& v, const GrassmannPoint& seed) {
  const std::size_t n = u.size();
  const std::size_t m = seed.m + 1;
  if (v.size() != n || seed.n + 2 != n) throw Error("seed must be a point of Gr(m-1, n-2)");
  if (!(1 < m && m + 1 < n)) throw Error("flag construction requires 1 < m < n-1");
  if (content(u) != 1 || content(v) != 1) throw Error("u and v must be primitive");
  if (dot(u, v) != 0) throw Error("u and v must be orthogonal");

  // Basis of the primitive lattice v-perp, then one of it starting with u.
  IntMatrix k = int_kernel(IntMatrix(1, n, v));
  IntMatrix x = coordinates_in(Lattice(IntMatrix(n, 1, u)), Lattice(k));
  IntMatrix w = k * complete_to_unimodular(x.column(0));
  IntMatrix rest = w.columns(1, n - 2);
  IntMatrix lifted = rest * seed.basis;
  IntMatrix b(n, m);
  b.set_column(0, u);
  for (std::size_t j = 0; j + 1 < m; ++j) b.set_column(j + 1, lifted.column(j));
  return point_from_basis(b, m, n);
}

double mu_max_u(const FreenessReport& r) { return r.mu_max_t - r.mu_t; }

NormalizedStats normalized_tangent_stats(const GrassmannPoint& p, const Config& cfg) {
  FreenessReport r = freeness(p, cfg);
  NormalizedStats s;
  s.mu_max_u = mu_max_u(r);
  // u(T) = covol(T)^(-1/d) T and covol_sq(T) = 1/covol_sq(T*).
  const double shift = log_rat(r.dual_covol_sq) / (2.0 * r.rank);
  Lattice t = tangent(p).t;
  for (const Rat& s_sq : successive_minima(t, cfg).s_sq) s.log_minima_u.push_back(0.5 * log_rat(s_sq) + shift);
  return s;
}

Lattice phi_tilde(const IntMatrix& g, std::size_t m) {
  const std::size_t n = g.rows();
  if (g.cols() != n) throw Error("g must be square");
  if (m < 1 || m >= n) throw Error("need 1 <= m <= n-1");
  if (det(g) == 0) throw Error("singular matrix");
  RatMatrix a = to_rat(g.columns(0, m));
  RatMatrix ata_inv = inverse(a.transpose() * a);
  RatMatrix a_tilde = a * ata_inv;
  RatMatrix proj = RatMatrix::identity(n);
  RatMatrix pa = a * ata_inv * a.transpose();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) proj(i, j) -= pa(i, j);
  RatMatrix b_tilde = proj * to_rat(g.columns(m, n - m));
  return Lattice(kronecker(a_tilde, b_tilde));
}

bool lemma_m1_check(const IntVector& x, const Config& cfg) {
  const std::size_t n = x.size();
  if (n < 2 || content(x) != 1) throw Error("x must be a primitive vector");
  GrassmannPoint p = point_from_basis(IntMatrix(n, 1, x), 1, n);
  Lattice t = tangent(p).t;
  Lattice k = factor(p.lattice());  // (Z^n cap x-perp)^*
  const Rat norm = dot(x, x);
  if (covol_sq(t) != covol_sq(k) / pow(norm, n - 1)) return false;
  MinimaProfile mt = successive_minima(t, cfg), mk = successive_minima(k, cfg);
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (mt.s_sq[i] != mk.s_sq[i] / norm) return false;
  std::map<Rat, std::size_t> ct, ck;
  for (const auto& v : short_vectors(t, mt.s_sq.back(), cfg)) ++ct[v.norm_sq];
  for (const auto& v : short_vectors(k, mk.s_sq.back(), cfg)) ++ck[v.norm_sq / norm];
  return ct == ck;
}

}  // namespace grasslat

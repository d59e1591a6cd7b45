#include "grasslat/minima.hpp"

#include <algorithm>
#include <cmath>

#include "grasslat/normal_form.hpp"
#include "grasslat/volumes.hpp"

namespace grasslat {

MinimaProfile successive_minima_gram(const RatMatrix& g, const Config& cfg) {
  const std::size_t r = g.rows();
  GramEnumerator e(g);
  MinimaProfile out;
  if (r == 0) return out;
  // Grow the radius geometrically; at max_reduced_norm the reduced basis
  // guarantees r independent vectors are in range.
  Rat bound = e.min_reduced_norm();
  for (;;) {
    IndependenceTracker t;
    out = {};
    for (const auto& sv : e.collect(bound, cfg.max_vectors)) {
      if (!t.try_add(sv.coords)) continue;
      out.s_sq.push_back(sv.norm_sq);
      out.witnesses.push_back(sv.coords);
      if (t.size() == r) return out;
    }
    if (bound >= e.max_reduced_norm()) throw Error("successive minima search failed to find a basis");
    bound = std::min<Rat>(bound * 4, e.max_reduced_norm());
  }
}

MinimaProfile successive_minima(const Lattice& l, const Config& cfg) {
  return successive_minima_gram(gram(l.basis()), cfg);
}

namespace {

// Branch and bound over HKZ-shaped bases.
//
// Every lattice M has a basis b_1..b_k whose Gram-Schmidt vectors b_j* are
// shortest nonzero vectors of the projections pi_j(M) orthogonal to
// b_1..b_{j-1}. Then covol^2(M) = prod |b_j*|^2, the b_j* satisfy
// |b_{j+1}*|^2 >= (3/4)|b_j*|^2 (size-reduce the lift of b_{j+1}*), and by
// Minkowski |b_j*|^{2s} <= (2^s/V(s))^2 covol^2(pi_{j-1}(M)) with s = k-j+1.
// If M is primitive in L then pi_j(M) is primitive in pi_j(L), so b_j* is a
// primitive vector of pi_j(L). The search walks these projections of L: at
// each level it enumerates primitive vectors of the projected lattice under
// the two bounds, completes the choice to a basis and passes to the Schur
// complement. A chosen sequence of primitive vectors extends to a basis of L,
// so every leaf is a primitive sublattice and no saturation is needed. Each
// bound is computed with a small upward slack and compared against the best
// value found so far with <=, so every minimizer (including ties) is reached.
class SublatticeSearch {
 public:
  SublatticeSearch(const Lattice& l, std::size_t k, const Config& cfg) : l_(l), k_(k), cfg_(cfg) {
    for (std::size_t s = 1; s <= k; ++s) log_mink_.push_back(2 * std::log(minkowski_factor(s)));
  }

  SublatticeMin run() {
    const RatMatrix g = gram(l_.basis());
    GramEnumerator top(g);
    // Start from the first k reduced basis vectors.
    IntMatrix start = top.reduced().transform.columns(0, k_);
    RatMatrix sub(k_, k_);
    for (std::size_t i = 0; i < k_; ++i)
      for (std::size_t j = 0; j < k_; ++j) sub(i, j) = top.reduced().gram(i, j);
    best_ = det(sub);
    best_coords_ = hnf(start).first;
    best_form_ = canonical_form(sublattice(l_, best_coords_));
    log_best_ = log_rat(best_);

    std::vector<IntVector> chosen;
    descend(top, IntMatrix::identity(g.rows()), g, chosen, Rat(1), Rat(0));
    return {best_coords_, best_};
  }

 private:
  double log_bound(std::size_t s, const Rat& prefix) const {
    const double rest = log_best_ - log_rat(prefix);
    const double mink = (log_mink_[s - 1] + rest) / s;
    const double chain = (rest - 0.5 * s * (s - 1.0) * std::log(0.75)) / s;
    return std::min(mink, chain);
  }

  static Rat rat_upper(double log_value) {
    double v = std::exp(log_value) * (1 + 1e-9) + 1e-300;
    Rat out;
    mpq_set_d(out.get_mpq_t(), v);
    return out;
  }

  void leaf(const std::vector<IntVector>& chosen, const Rat& covol) {
    if (covol > best_) return;
    IntMatrix coords = hnf(IntMatrix::from_columns(l_.rank(), chosen)).first;
    CanonicalForm form = canonical_form(sublattice(l_, coords));
    if (covol < best_ || form < best_form_) {
      best_ = covol;
      log_best_ = log_rat(best_);
      best_coords_ = std::move(coords);
      best_form_ = std::move(form);
    }
  }

  // level_gram: Gram matrix of the current projected lattice in the basis
  // whose lifts to L have coordinates given by the columns of lift.
  void descend(const GramEnumerator& e, const IntMatrix& lift, const RatMatrix& level_gram,
               std::vector<IntVector>& chosen, const Rat& prefix, const Rat& last) {
    const std::size_t s = k_ - chosen.size();
    const Rat lower = last * Rat(3, 4);
    Rat bound = rat_upper(log_bound(s, prefix));
    std::vector<ShortVector> cands = e.collect(bound, cfg_.max_vectors);
    for (const auto& c : cands) {
      if (c.norm_sq < lower) continue;
      bound = rat_upper(log_bound(s, prefix));
      if (c.norm_sq > bound) break;
      if (content(c.coords) != 1) continue;
      chosen.push_back(lift * c.coords);
      const Rat next_prefix = prefix * c.norm_sq;
      if (s == 1) {
        leaf(chosen, next_prefix);
      } else {
        // Complete to a basis (c, rest) and pass to the projection off c.
        const IntMatrix ui = complete_to_unimodular(c.coords);
        const RatMatrix u = to_rat(ui);
        const RatMatrix g2 = u.transpose() * level_gram * u;
        const std::size_t r2 = g2.rows() - 1;
        RatMatrix schur(r2, r2);
        for (std::size_t i = 0; i < r2; ++i)
          for (std::size_t j = 0; j < r2; ++j) schur(i, j) = g2(i + 1, j + 1) - g2(i + 1, 0) * g2(0, j + 1) / g2(0, 0);
        IntMatrix lift2 = (lift * ui).columns(1, r2);
        GramEnumerator next(schur);
        descend(next, lift2, schur, chosen, next_prefix, c.norm_sq);
      }
      chosen.pop_back();
    }
  }

  const Lattice& l_;
  std::size_t k_;
  const Config& cfg_;
  std::vector<double> log_mink_;
  Rat best_;
  double log_best_ = 0;
  IntMatrix best_coords_;
  CanonicalForm best_form_;
};

}  // namespace

SublatticeMin min_covol_sublattice(const Lattice& l, std::size_t k, const Config& cfg) {
  const std::size_t r = l.rank();
  if (k < 1 || k > r) throw Error("sublattice rank out of range");
  if (r > cfg.max_rank) throw BudgetExceeded("lattice rank exceeds the configured maximum");
  if (k == r) return {IntMatrix::identity(r), covol_sq(l)};
  return SublatticeSearch(l, k, cfg).run();
}

SlopeSummary summarize_slopes(const std::vector<Rat>& mcs) {
  const std::size_t r = mcs.size();
  if (r == 0) throw Error("empty slope table");
  const Rat& total = mcs.back();
  SlopeSummary out;
  out.mu = -log_rat(total) / (2.0 * r);

  std::size_t best = 1;
  for (std::size_t k = 2; k <= r; ++k)
    if (pow(mcs[k - 1], best) <= pow(mcs[best - 1], k)) best = k;
  out.argmax_rank = best;
  out.mu_max = -log_rat(mcs[best - 1]) / (2.0 * best);

  auto quotient = [&](std::size_t k) { return k == 0 ? total : total / mcs[k - 1]; };
  std::size_t low = 0;
  for (std::size_t k = 1; k < r; ++k)
    if (pow(quotient(k), r - low) > pow(quotient(low), r - k)) low = k;
  out.argmin_rank = low;
  out.mu_min = -log_rat(quotient(low)) / (2.0 * (r - low));
  return out;
}

std::vector<Rat> SlopeTable::min_covols() const {
  std::vector<Rat> out;
  for (const auto& e : per_rank) out.push_back(e.covol_sq);
  return out;
}

SlopeTable slope_table(const Lattice& l, const Config& cfg) {
  SlopeTable t;
  t.rank = l.rank();
  for (std::size_t k = 1; k <= t.rank; ++k) t.per_rank.push_back(min_covol_sublattice(l, k, cfg));
  t.summary = summarize_slopes(t.min_covols());
  return t;
}

double mu(const Lattice& l) { return -log_rat(covol_sq(l)) / (2.0 * l.rank()); }
double mu_max(const Lattice& l, const Config& cfg) { return slope_table(l, cfg).summary.mu_max; }
double mu_min(const Lattice& l, const Config& cfg) { return slope_table(l, cfg).summary.mu_min; }

}  // namespace grasslat

#include "grasslat/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace grasslat {

namespace {

constexpr long kSmallLimit = 1L << 40;

bool fits(const Int& x, long limit) { return x < limit && x > -limit; }

}  // namespace

GramEnumerator::GramEnumerator(const RatMatrix& g) : n_(g.rows()), lll_(lll_gram(g)) {
  const RatMatrix& r = lll_.gram;
  scale_ = common_denominator(r);
  scaled_ = IntMatrix(n_, n_);
  small_ = true;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      scaled_(i, j) = Rat(r(i, j) * scale_).get_num();
      if (!fits(scaled_(i, j), kSmallLimit)) small_ = false;
    }
  if (small_) {
    small_gram_.assign(n_, std::vector<long long>(n_));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) small_gram_[i][j] = scaled_(i, j).get_si();
  }

  // G = U^t D U with U unit upper triangular.
  std::vector<std::vector<long double>> gd(n_, std::vector<long double>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) gd[i][j] = static_cast<long double>(r(i, j).get_d());
  diag_.assign(n_, 0);
  upper_.assign(n_, std::vector<long double>(n_, 0));
  for (std::size_t k = 0; k < n_; ++k) {
    long double dk = gd[k][k];
    for (std::size_t l = 0; l < k; ++l) dk -= diag_[l] * upper_[l][k] * upper_[l][k];
    diag_[k] = dk;
    upper_[k][k] = 1;
    for (std::size_t j = k + 1; j < n_; ++j) {
      long double v = gd[k][j];
      for (std::size_t l = 0; l < k; ++l) v -= diag_[l] * upper_[l][k] * upper_[l][j];
      upper_[k][j] = v / dk;
    }
  }
  for (std::size_t i = 0; i < n_; ++i) {
    if (i == 0 || r(i, i) > max_diag_) max_diag_ = r(i, i);
    if (i == 0 || r(i, i) < min_diag_) min_diag_ = r(i, i);
  }
}

void GramEnumerator::for_each(const Rat& bound, std::size_t max_vectors,
                              const std::function<void(const IntVector&, const Rat&)>& fn) const {
  if (bound <= 0 || n_ == 0) return;
  const Int limit = floor(bound * scale_);
  const bool small = small_ && fits(limit, 1L << 62);
  const __int128 small_limit = small ? static_cast<__int128>(limit.get_si()) : 0;

  const long double radius = static_cast<long double>(bound.get_d()) * (1 + 1e-9L) + 1e-300L;
  std::vector<long> x(n_, 0);
  std::vector<long double> partial(n_ + 1, 0);
  std::size_t reported = 0;
  IntVector xi(n_), out(n_);

  auto leaf = [&]() {
    bool zero = true;
    for (long v : x) zero = zero && v == 0;
    if (zero) return;
    Int value;
    bool ok;
    if (small) {
      __int128 s = 0;
      for (std::size_t i = 0; i < n_; ++i) {
        if (x[i] == 0) continue;
        __int128 row = 0;
        for (std::size_t j = 0; j < n_; ++j) row += static_cast<__int128>(small_gram_[i][j]) * x[j];
        s += row * x[i];
      }
      ok = s <= small_limit;
      if (ok) {
        // s is at most limit, which fits in 63 bits.
        value = static_cast<long>(s);
      }
    } else {
      for (std::size_t i = 0; i < n_; ++i) xi[i] = x[i];
      value = 0;
      for (std::size_t i = 0; i < n_; ++i) {
        if (x[i] == 0) continue;
        Int row = 0;
        for (std::size_t j = 0; j < n_; ++j) row += scaled_(i, j) * xi[j];
        value += row * xi[i];
      }
      ok = value <= limit;
    }
    if (!ok) return;
    if (++reported > max_vectors)
      throw BudgetExceeded("enumeration budget exceeded (bound " + to_string(bound) + ", cap " +
                           std::to_string(max_vectors) + ")");
    const IntMatrix& h = lll_.transform;
    for (std::size_t i = 0; i < n_; ++i) {
      out[i] = 0;
      for (std::size_t j = 0; j < n_; ++j)
        if (x[j] != 0) out[i] += h(i, j) * x[j];
    }
    std::size_t first = 0;
    while (out[first] == 0) ++first;
    if (out[first] < 0)
      for (auto& v : out) v = -v;
    fn(out, make_rat(value, scale_));
  };

  // Depth-first over coordinates n-1 .. 0; while every higher coordinate is
  // zero the current one is taken nonnegative, which picks one of each +- pair.
  auto recurse = [&](auto&& self, std::size_t k, bool zero_above) -> void {
    long double c = 0;
    for (std::size_t j = k + 1; j < n_; ++j) c -= upper_[k][j] * x[j];
    long double rem = radius - partial[k + 1];
    if (rem < 0) rem = 0;
    long double t = std::sqrt(rem / diag_[k]);
    long double slack = 1e-9L * (1 + std::fabs(c) + t);
    long lo = static_cast<long>(std::ceil(c - t - slack));
    long hi = static_cast<long>(std::floor(c + t + slack));
    if (zero_above && lo < 0) lo = 0;
    for (long v = lo; v <= hi; ++v) {
      x[k] = v;
      long double diff = v - c;
      partial[k] = partial[k + 1] + diag_[k] * diff * diff;
      if (k == 0)
        leaf();
      else
        self(self, k - 1, zero_above && v == 0);
    }
    x[k] = 0;
  };
  recurse(recurse, n_ - 1, true);
}

bool short_vector_less(const ShortVector& a, const ShortVector& b) {
  if (a.norm_sq != b.norm_sq) return a.norm_sq < b.norm_sq;
  return a.coords < b.coords;
}

std::vector<ShortVector> GramEnumerator::collect(const Rat& bound, std::size_t max_vectors) const {
  std::vector<ShortVector> out;
  for_each(bound, max_vectors, [&](const IntVector& x, const Rat& q) { out.push_back({x, q}); });
  std::sort(out.begin(), out.end(), short_vector_less);
  return out;
}

std::vector<LatticeVector> short_vectors(const Lattice& l, const Rat& bound_sq, const Config& cfg) {
  if (bound_sq <= 0) throw Error("bound must be positive");
  GramEnumerator e(gram(l.basis()));
  std::vector<LatticeVector> out;
  for (auto& sv : e.collect(bound_sq, cfg.max_vectors)) {
    RatVector v = l.basis() * RatVector(sv.coords.begin(), sv.coords.end());
    out.push_back({std::move(sv.coords), std::move(v), std::move(sv.norm_sq)});
  }
  return out;
}

std::vector<std::vector<long>> integer_ball(std::size_t n, long bound) {
  std::vector<std::vector<long>> out;
  if (n == 0 || bound <= 0) return out;
  std::vector<long> x(n, 0);
  auto recurse = [&](auto&& self, std::size_t i, long used, bool zero_before) -> void {
    if (i == n) {
      if (!zero_before) out.push_back(x);
      return;
    }
    long r = static_cast<long>(std::sqrt(static_cast<double>(bound - used))) + 1;
    while (r * r > bound - used) --r;
    for (long v = zero_before ? 0 : -r; v <= r; ++v) {
      x[i] = v;
      self(self, i + 1, used + v * v, zero_before && v == 0);
    }
    x[i] = 0;
  };
  recurse(recurse, 0, 0, true);
  return out;
}

}  // namespace grasslat

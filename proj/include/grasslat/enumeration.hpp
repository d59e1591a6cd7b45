#pragma once

#include <functional>

#include "grasslat/config.hpp"
#include "grasslat/lattice.hpp"
#include "grasslat/reduction.hpp"

namespace grasslat {

struct ShortVector {
  IntVector coords;  ///< coordinates in the basis of the input Gram matrix
  Rat norm_sq;
};

/// Fincke-Pohst enumeration on an LLL-reduced copy of a positive definite
/// Gram matrix. The tree search runs in long double with a slightly inflated
/// radius; every leaf is accepted or rejected by an exact integer test, so
/// the output is exactly {x != 0 : x^t G x <= bound} modulo +-.
class GramEnumerator {
 public:
  explicit GramEnumerator(const RatMatrix& g);

  std::size_t dim() const { return n_; }
  const LllResult& reduced() const { return lll_; }
  /// Largest diagonal entry of the reduced Gram matrix; the reduced basis
  /// vectors give dim() independent vectors within this bound.
  const Rat& max_reduced_norm() const { return max_diag_; }
  const Rat& min_reduced_norm() const { return min_diag_; }

  /// Calls fn for every nonzero x with x^t G x <= bound, one per +- pair
  /// (normalized so the first nonzero coordinate is positive). Throws
  /// BudgetExceeded past max_vectors reports.
  void for_each(const Rat& bound, std::size_t max_vectors,
                const std::function<void(const IntVector&, const Rat&)>& fn) const;

  /// All such vectors sorted by (norm, coordinates).
  std::vector<ShortVector> collect(const Rat& bound, std::size_t max_vectors) const;

 private:
  std::size_t n_ = 0;
  LllResult lll_;
  IntMatrix scaled_;  // integer multiple of the reduced Gram matrix
  Int scale_;
  std::vector<long double> diag_;
  std::vector<std::vector<long double>> upper_;
  bool small_ = false;  // scaled_ fits comfortably in 64 bits
  std::vector<std::vector<long long>> small_gram_;
  Rat max_diag_, min_diag_;
};

/// Orders vectors by norm, then lexicographically by coordinates.
bool short_vector_less(const ShortVector& a, const ShortVector& b);

struct LatticeVector {
  IntVector coords;  ///< coordinates in l.basis()
  RatVector vector;  ///< the vector in the ambient space
  Rat norm_sq;
};

/// Nonzero vectors of l with squared norm at most bound_sq, one per +- pair.
std::vector<LatticeVector> short_vectors(const Lattice& l, const Rat& bound_sq, const Config& cfg = {});

/// Integer vectors of Z^n with 0 < |x|^2 <= bound, one per +- pair (first
/// nonzero coordinate positive), in lexicographic order.
std::vector<std::vector<long>> integer_ball(std::size_t n, long bound);

}  // namespace grasslat

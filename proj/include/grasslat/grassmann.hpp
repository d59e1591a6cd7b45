#pragma once

#include <optional>
#include <string>

#include "grasslat/config.hpp"
#include "grasslat/lattice.hpp"
#include "grasslat/minima.hpp"

namespace grasslat {

/// A rational point of Gr(m,n): a primitive rank-m sublattice of Z^n stored
/// by its Hermite basis, which doubles as the canonical form.
struct GrassmannPoint {
  std::size_t m = 0;
  std::size_t n = 0;
  IntMatrix basis;  ///< n x m, column Hermite form
  Rat covol_sq;

  Lattice lattice() const { return Lattice(basis); }
  /// H(x)^2 = covol(Lambda)^(2n).
  Rat height_sq() const { return pow(covol_sq, n); }
  /// (n/2) log covol_sq.
  double log_height() const { return 0.5 * static_cast<double>(n) * log_rat(covol_sq); }
  std::size_t tangent_rank() const { return m * (n - m); }

  friend bool operator==(const GrassmannPoint& a, const GrassmannPoint& b) { return a.basis == b.basis; }
};

/// Orders by height, then by canonical basis.
bool point_less(const GrassmannPoint& a, const GrassmannPoint& b);

/// The point whose lattice is the saturation of the column span of basis.
GrassmannPoint point_from_basis(const IntMatrix& basis, std::size_t m, std::size_t n);
GrassmannPoint point_from_lattice(const Lattice& l);

/// The complementary point orthogonal(Lambda) in Gr(n-m, n).
GrassmannPoint orthogonal_point(const GrassmannPoint& p);

struct TangentData {
  Lattice t;       ///< dual(Lambda) (x) factor(Lambda), rank m(n-m) in dimension n^2
  Lattice t_dual;  ///< Lambda (x) orthogonal(Lambda), integral
  Rat h_sq;        ///< covol_sq(Lambda)^n
  double h;        ///< (n/2) log covol_sq(Lambda)
};

TangentData tangent(const GrassmannPoint& p);
/// Lambda (x) orthogonal(Lambda) alone; the lattice all slope searches run on.
Lattice tangent_dual(const GrassmannPoint& p);

/// Slope data of a point derived from one slope table of the integral
/// lattice T* = Lambda (x) orthogonal(Lambda).
struct FreenessReport {
  std::size_t rank = 0;   ///< m(n-m)
  Rat dual_covol_sq;      ///< covol_sq(T*) = covol_sq(Lambda)^n
  std::vector<Rat> dual_mcs;  ///< minimal covol_sq of rank-k sublattices of T*, k = 1..rank
  SlopeSummary dual_summary;
  bool height_one = false;  ///< ell undefined (0/0)
  bool ell_zero = false;    ///< exact
  bool ell_one = false;     ///< exact
  double ell = 0;           ///< NaN when height_one
  double mu_t = 0;          ///< mu(T) = -mu(T*)
  double mu_min_t = 0;      ///< -mu_max(T*)
  double mu_max_t = 0;      ///< -mu_min(T*)
  IntMatrix witness;        ///< coordinates (in the T* basis) of the most destabilizing sublattice of T*
  Lattice witness_lattice(const GrassmannPoint& p) const;
  /// "undefined-height-one" or the decimal value of ell.
  std::string ell_label() const;
};

FreenessReport freeness(const GrassmannPoint& p, const Config& cfg = {});

/// Exact test of ell >= eps for rational eps in [0,1). Height-one points count as free.
bool is_free(const FreenessReport& r, const Rat& eps);
/// Exact test of ell <= eps; false for height-one points.
bool is_at_most(const FreenessReport& r, const Rat& eps);
/// Exact test of mu_max(T) <= log b, i.e. min_covol_sq_k(T) >= b^(-2k) for all k.
bool max_slope_at_most(const FreenessReport& r, const Rat& b);

/// All points with H <= B, sorted by point_less. With assume_minima_basis
/// (valid for m <= 4) only tuples whose span is already primitive are kept;
/// otherwise every tuple span is saturated.
std::vector<GrassmannPoint> enumerate_points(std::size_t m, std::size_t n, const Rat& b, const Config& cfg = {},
                                             bool assume_minima_basis = true);

/// Lambda = Z(q,1,0,...,0) + Z e_3 + ... + Z e_{m+1}; needs 1 < m < n-1.
GrassmannPoint unfree_family(std::size_t m, std::size_t n, const Int& q);

/// A point containing u whose span lies in the hyperplane orthogonal to v,
/// obtained by lifting a seed point of Gr(m-1, n-2).
GrassmannPoint unfree_through_flag(const IntVector& u, const IntVector& v, const GrassmannPoint& seed);

struct NormalizedStats {
  double mu_max_u = 0;
  std::vector<double> log_minima_u;
};

/// Statistics of the unimodular rescaling u(T) of the tangent lattice.
NormalizedStats normalized_tangent_stats(const GrassmannPoint& p, const Config& cfg = {});
/// mu_max(u(T)) = mu_max(T) - mu(T) from an existing report.
double mu_max_u(const FreenessReport& r);

/// The lattice spanned by kron(A~, B~) for invertible g.
Lattice phi_tilde(const IntMatrix& g, std::size_t m);

/// Compares the tangent lattice of Z x with |x|^-1 (Z^n cap x-perp)^* through
/// exact covolume, minima and short-vector counts.
bool lemma_m1_check(const IntVector& x, const Config& cfg = {});

}  // namespace grasslat

#pragma once

#include <optional>

#include "grasslat/config.hpp"
#include "grasslat/enumeration.hpp"
#include "grasslat/lattice.hpp"

namespace grasslat {

/// Squared successive minima with witnesses (coordinates in the lattice basis).
struct MinimaProfile {
  std::vector<Rat> s_sq;
  std::vector<IntVector> witnesses;
};

MinimaProfile successive_minima_gram(const RatMatrix& g, const Config& cfg = {});
MinimaProfile successive_minima(const Lattice& l, const Config& cfg = {});

struct SublatticeMin {
  IntMatrix coords;  ///< r x k, coordinates of a basis of M in the basis of L
  Rat covol_sq;
};

/// A primitive rank-k sublattice of minimal covolume, ties broken by the
/// smallest CanonicalForm of the sublattice.
SublatticeMin min_covol_sublattice(const Lattice& l, std::size_t k, const Config& cfg = {});

/// Slope extremes from per-rank minimal covolumes. mcs[k-1] is the minimal
/// squared covolume in rank k; the last entry is covol_sq of the lattice.
struct SlopeSummary {
  double mu = 0;
  double mu_max = 0;
  double mu_min = 0;
  std::size_t argmax_rank = 0;  ///< ties go to the largest rank
  std::size_t argmin_rank = 0;  ///< rank k of the sublattice M in the quotient L/M; ties go to the smallest
};

SlopeSummary summarize_slopes(const std::vector<Rat>& mcs);

struct SlopeTable {
  std::size_t rank = 0;
  std::vector<SublatticeMin> per_rank;  ///< index k-1
  SlopeSummary summary;

  const Rat& min_covol_sq(std::size_t k) const { return per_rank.at(k - 1).covol_sq; }
  std::vector<Rat> min_covols() const;
};

SlopeTable slope_table(const Lattice& l, const Config& cfg = {});

double mu(const Lattice& l);
double mu_max(const Lattice& l, const Config& cfg = {});
/// Quotient formulation on the lattice's own slope table.
double mu_min(const Lattice& l, const Config& cfg = {});

}  // namespace grasslat

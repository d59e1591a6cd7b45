#pragma once

#include <cstddef>

namespace grasslat {

/// Resource guards and tuning knobs shared by the search routines.
struct Config {
  /// Maximum number of vectors a single enumeration may produce.
  std::size_t max_vectors = 1'000'000;
  /// Maximum lattice rank accepted by the slope search.
  std::size_t max_rank = 8;
  /// Worker threads for point enumeration and per-point analysis.
  unsigned workers = 1;
  /// Constant in the diagnostic small-s1 check; never used for freeness itself.
  double small_s1_constant = 1.0;
};

/// Overrides defaults from GRASSLAT_BUDGET_VECTORS, GRASSLAT_MAX_RANK,
/// GRASSLAT_WORKERS and GRASSLAT_SMALL_S1_CONSTANT when set.
Config config_from_env(Config base = {});

}  // namespace grasslat

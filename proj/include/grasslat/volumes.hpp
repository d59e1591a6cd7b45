#pragma once

#include <cstddef>

namespace grasslat {

/// Volume of the unit ball in R^k.
double ball_volume(std::size_t k);

/// A certified upper bound for 2^k / V(k), the constant in Minkowski's
/// second theorem prod s_i <= (2^k/V(k)) covol.
double minkowski_factor(std::size_t k);

}  // namespace grasslat

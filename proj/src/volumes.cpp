#include "grasslat/volumes.hpp"

#include <cmath>
#include <numbers>

namespace grasslat {

double ball_volume(std::size_t k) {
  const double h = static_cast<double>(k) / 2;
  return std::pow(std::numbers::pi, h) / std::tgamma(h + 1);
}

double minkowski_factor(std::size_t k) {
  // tgamma and pow are accurate to a few ulps; 1e-12 relative slack covers them.
  const double v_lower = ball_volume(k) * (1 - 1e-12);
  return std::ldexp(1.0, static_cast<int>(k)) / v_lower;
}

}  // namespace grasslat

#pragma once

#include "grasslat/matrix.hpp"

namespace grasslat {

struct LllResult {
  /// Columns are the reduced basis vectors in the coordinates of the input basis.
  IntMatrix transform;
  /// Gram matrix of the reduced basis: transform^t * G * transform.
  RatMatrix gram;
};

/// Exact integral LLL (delta = 3/4) on a positive definite rational Gram matrix.
LllResult lll_gram(const RatMatrix& g);

}  // namespace grasslat

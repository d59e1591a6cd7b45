#pragma once

#include <utility>

#include "grasslat/matrix.hpp"

namespace grasslat {

/// Column-style Hermite form: H = M * U with U unimodular. Pivot rows are
/// strictly increasing with column index, entries right of a pivot are zero,
/// pivots are positive and entries left of a pivot lie in [0, pivot).
/// Columns at index >= rank are zero, so the trailing columns of U span the
/// integer kernel of M.
struct HermiteDecomposition {
  IntMatrix h;
  IntMatrix u;
  std::size_t rank = 0;
};

HermiteDecomposition column_hermite(const IntMatrix& m);

/// HNF of a full-column-rank matrix; throws "rank deficient" otherwise.
std::pair<IntMatrix, IntMatrix> hnf(const IntMatrix& m);

/// Elementary divisors d_1 | d_2 | ..., min(rows, cols) of them, nonnegative.
IntVector snf(const IntMatrix& m);

/// Saturated basis (columns, in Hermite form) of {x in Z^cols : M x = 0}.
IntMatrix int_kernel(const IntMatrix& m);

/// Basis of span_Q(columns of c) intersected with Z^rows, in Hermite form.
IntMatrix saturate_columns(const IntMatrix& c);

/// A unimodular matrix whose first column is the primitive vector x.
IntMatrix complete_to_unimodular(const IntVector& x);

}  // namespace grasslat

#pragma once

#include <iosfwd>

#include "grasslat/matrix.hpp"

namespace grasslat {

/// A rank-r lattice in Q^N with the standard inner product. The columns of
/// the N x r basis matrix are the basis vectors.
class Lattice {
 public:
  /// Throws unless the columns are linearly independent and r >= 1.
  explicit Lattice(RatMatrix basis);
  explicit Lattice(const IntMatrix& basis);

  std::size_t ambient_dim() const { return basis_.rows(); }
  std::size_t rank() const { return basis_.cols(); }
  const RatMatrix& basis() const { return basis_; }

  bool is_integral() const;
  /// The basis as an integer matrix; throws if some entry is not integral.
  IntMatrix integral_basis() const;

 private:
  RatMatrix basis_;
};

/// Least common denominator of the basis together with the Hermite form of
/// the cleared basis. Two lattices are equal iff their canonical forms are.
struct CanonicalForm {
  Int denominator;
  IntMatrix hnf;

  friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) {
    return a.denominator == b.denominator && a.hnf == b.hnf;
  }
  friend bool operator<(const CanonicalForm& a, const CanonicalForm& b) {
    if (a.denominator != b.denominator) return a.denominator < b.denominator;
    return lex_less(a.hnf, b.hnf);
  }
};

struct CanonicalFormHash {
  std::size_t operator()(const CanonicalForm& c) const;
};

Rat covol_sq(const Lattice& l);
Lattice dual(const Lattice& l);

/// Integer vectors orthogonal to a primitive integral lattice.
Lattice orthogonal(const Lattice& l);
/// dual(orthogonal(l)): the projection of Z^N off span(l).
Lattice factor(const Lattice& l);

Lattice saturate(const Lattice& l);
bool is_primitive(const Lattice& l);

Lattice tensor(const Lattice& a, const Lattice& b);

/// Coordinates X (integral) with l.basis() * X = m.basis(); throws
/// "not a sublattice" when m is not contained in l.
IntMatrix coordinates_in(const Lattice& m, const Lattice& l);
/// span_R(m) intersected with l.
Lattice saturate_in(const Lattice& m, const Lattice& l);

CanonicalForm canonical_form(const Lattice& l);
bool equals(const Lattice& a, const Lattice& b);

/// The lattice with basis reconstructed from a canonical form.
Lattice from_canonical(const CanonicalForm& c);
Lattice scaled(const Lattice& l, const Rat& alpha);
/// Sublattice spanned by l.basis() * coords (coords must have full column rank).
Lattice sublattice(const Lattice& l, const IntMatrix& coords);

/// Text format: a line "N r" followed by r lines of N rationals, one basis
/// vector per line.
Lattice read_lattice(std::istream& in);
/// Writes the canonical basis.
void write_lattice(std::ostream& out, const Lattice& l);

}  // namespace grasslat

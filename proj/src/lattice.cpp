#include "grasslat/lattice.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "grasslat/normal_form.hpp"

namespace grasslat {

Lattice::Lattice(RatMatrix basis) : basis_(std::move(basis)) {
  if (basis_.cols() == 0 || basis_.cols() > basis_.rows())
    throw Error("lattice rank must satisfy 1 <= r <= N");
  if (grasslat::rank(basis_) != basis_.cols()) throw Error("lattice basis is not linearly independent");
}

Lattice::Lattice(const IntMatrix& basis) : Lattice(to_rat(basis)) {}

bool Lattice::is_integral() const {
  for (const Rat& x : basis_.data())
    if (x.get_den() != 1) return false;
  return true;
}

IntMatrix Lattice::integral_basis() const {
  IntMatrix out(basis_.rows(), basis_.cols());
  for (std::size_t i = 0; i < basis_.rows(); ++i)
    for (std::size_t j = 0; j < basis_.cols(); ++j) {
      if (basis_(i, j).get_den() != 1) throw Error("lattice is not integral");
      out(i, j) = basis_(i, j).get_num();
    }
  return out;
}

std::size_t CanonicalFormHash::operator()(const CanonicalForm& c) const {
  std::size_t h = hash_int(c.denominator) ^ (c.hnf.rows() * 131 + c.hnf.cols());
  for (const Int& x : c.hnf.data()) h = h * 1000003 ^ hash_int(x);
  return h;
}

Rat covol_sq(const Lattice& l) { return det(gram(l.basis())); }

Lattice dual(const Lattice& l) { return Lattice(l.basis() * inverse(gram(l.basis()))); }

namespace {

IntMatrix primitive_integral_basis(const Lattice& l) {
  if (!l.is_integral() || !is_primitive(l)) throw Error("requires primitive integral lattice");
  return l.integral_basis();
}

}  // namespace

Lattice orthogonal(const Lattice& l) {
  IntMatrix b = primitive_integral_basis(l);
  IntMatrix k = int_kernel(b.transpose());
  if (k.cols() == 0) throw Error("orthogonal lattice of a full-rank lattice is zero");
  return Lattice(k);
}

Lattice factor(const Lattice& l) { return dual(orthogonal(l)); }

Lattice saturate(const Lattice& l) {
  if (!l.is_integral()) throw Error("saturation requires an integral lattice");
  return Lattice(saturate_columns(l.integral_basis()));
}

bool is_primitive(const Lattice& l) {
  if (!l.is_integral()) throw Error("primitivity requires an integral lattice");
  for (const Int& d : snf(l.integral_basis()))
    if (d != 1) return false;
  return true;
}

Lattice tensor(const Lattice& a, const Lattice& b) { return Lattice(kronecker(a.basis(), b.basis())); }

IntMatrix coordinates_in(const Lattice& m, const Lattice& l) {
  if (m.ambient_dim() != l.ambient_dim()) throw Error("not a sublattice");
  const RatMatrix& b = l.basis();
  RatMatrix x = inverse(gram(b)) * (b.transpose() * m.basis());
  if (!(b * x == m.basis())) throw Error("not a sublattice");
  IntMatrix out(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) {
      if (x(i, j).get_den() != 1) throw Error("not a sublattice");
      out(i, j) = x(i, j).get_num();
    }
  return out;
}

Lattice saturate_in(const Lattice& m, const Lattice& l) {
  IntMatrix x = coordinates_in(m, l);
  return sublattice(l, saturate_columns(x));
}

CanonicalForm canonical_form(const Lattice& l) {
  const RatMatrix& b = l.basis();
  Int d = common_denominator(b);
  IntMatrix cleared(b.rows(), b.cols());
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Rat v = b(i, j) * d;
      cleared(i, j) = v.get_num();
    }
  return {d, hnf(cleared).first};
}

bool equals(const Lattice& a, const Lattice& b) { return canonical_form(a) == canonical_form(b); }

Lattice from_canonical(const CanonicalForm& c) {
  RatMatrix b(c.hnf.rows(), c.hnf.cols());
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) = make_rat(c.hnf(i, j), c.denominator);
  return Lattice(std::move(b));
}

Lattice scaled(const Lattice& l, const Rat& alpha) {
  if (alpha == 0) throw Error("scaling factor must be nonzero");
  RatMatrix b = l.basis();
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) *= alpha;
  return Lattice(std::move(b));
}

Lattice sublattice(const Lattice& l, const IntMatrix& coords) { return Lattice(l.basis() * to_rat(coords)); }

Lattice read_lattice(std::istream& in) {
  std::size_t n = 0, r = 0;
  if (!(in >> n >> r) || n == 0 || r == 0) throw Error("lattice file: expected header \"N r\"");
  RatMatrix b(n, r);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      std::string tok;
      if (!(in >> tok)) throw Error("lattice file: expected " + std::to_string(n * r) + " entries");
      b(i, j) = parse_rat(tok);
    }
  return Lattice(std::move(b));
}

void write_lattice(std::ostream& out, const Lattice& l) {
  Lattice c = from_canonical(canonical_form(l));
  out << c.ambient_dim() << ' ' << c.rank() << '\n';
  for (std::size_t j = 0; j < c.rank(); ++j) {
    for (std::size_t i = 0; i < c.ambient_dim(); ++i) out << (i ? " " : "") << to_string(c.basis()(i, j));
    out << '\n';
  }
}

}  // namespace grasslat

#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace grasslat {

using Int = mpz_class;
using Rat = mpq_class;

using IntVector = std::vector<Int>;
using RatVector = std::vector<Rat>;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an enumeration would exceed its configured resource guard.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

Rat make_rat(const Int& num, const Int& den);
Rat parse_rat(std::string_view text);
std::string to_string(const Int& value);
std::string to_string(const Rat& value);

Rat pow(const Rat& base, unsigned long exponent);
Int pow(const Int& base, unsigned long exponent);
Int lcm(const Int& a, const Int& b);
Int gcd(const Int& a, const Int& b);

/// Content (nonnegative gcd) of an integer vector; zero for the zero vector.
Int content(const IntVector& v);
bool is_zero(const IntVector& v);

/// Natural logarithm of a positive rational, accurate for numerators and
/// denominators far outside the double range.
double log_rat(const Rat& value);
double log_int(const Int& value);

/// Floor of a rational.
Int floor(const Rat& value);

/// Integer nearest to a rational, halves rounded toward +infinity.
Int round_nearest(const Rat& value);

std::size_t hash_int(const Int& value);

}  // namespace grasslat

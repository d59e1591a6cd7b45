#include "grasslat/exact.hpp"

#include <cctype>
#include <cmath>

namespace grasslat {

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw Error("zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat parse_rat(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) throw Error("empty rational literal");
  Rat r;
  if (r.set_str(s, 10) != 0) throw Error("malformed rational literal '" + s + "'");
  if (r.get_den() == 0) throw Error("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

std::string to_string(const Int& value) { return value.get_str(); }

std::string to_string(const Rat& value) { return value.get_str(); }

Int pow(const Int& base, unsigned long exponent) {
  Int out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

Rat pow(const Rat& base, unsigned long exponent) {
  Rat out(pow(Int(base.get_num()), exponent), pow(Int(base.get_den()), exponent));
  out.canonicalize();
  return out;
}

Int lcm(const Int& a, const Int& b) {
  Int out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

Int gcd(const Int& a, const Int& b) {
  Int out;
  mpz_gcd(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

Int content(const IntVector& v) {
  Int g = 0;
  for (const auto& x : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

bool is_zero(const IntVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

double log_int(const Int& value) {
  if (value <= 0) throw Error("logarithm of a nonpositive integer");
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, value.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

double log_rat(const Rat& value) {
  if (value <= 0) throw Error("logarithm of a nonpositive rational");
  return log_int(Int(value.get_num())) - log_int(Int(value.get_den()));
}

Int floor(const Rat& value) {
  Int out;
  mpz_fdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

Int round_nearest(const Rat& value) { return floor(value + Rat(1, 2)); }

std::size_t hash_int(const Int& value) {
  std::size_t h = std::hash<long>{}(mpz_get_si(value.get_mpz_t()));
  h ^= static_cast<std::size_t>(mpz_size(value.get_mpz_t())) * 0x9e3779b97f4a7c15ULL;
  return h ^ (static_cast<std::size_t>(mpz_sgn(value.get_mpz_t()) + 1) << 7);
}

}  // namespace grasslat

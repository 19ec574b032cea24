#pragma once

#include <gmpxx.h>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kwb {

using BigInt = mpz_class;
using Rational = mpq_class;

using IntVector = std::vector<BigInt>;
using RatVector = std::vector<Rational>;

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline std::string to_string(const BigInt& z) { return z.get_str(); }

/// "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

/// Nonnegative gcd of all entries; 0 for an empty or all-zero vector.
inline BigInt gcd_of(std::span<const BigInt> v) {
  BigInt g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

/// g = s*a + t*b with g = gcd(a, b) >= 0.
struct ExtendedGcd {
  BigInt g, s, t;
};

inline ExtendedGcd extended_gcd(const BigInt& a, const BigInt& b) {
  ExtendedGcd r;
  mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
  return r;
}

/// Exact rational cube root, or nullopt if q is not the cube of a rational.
inline std::optional<Rational> rational_cbrt(const Rational& q) {
  BigInt num, den;
  if (mpz_root(num.get_mpz_t(), q.get_num_mpz_t(), 3) == 0) return std::nullopt;
  if (mpz_root(den.get_mpz_t(), q.get_den_mpz_t(), 3) == 0) return std::nullopt;
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational pow(const Rational& q, unsigned e) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), e);
  return r;
}

inline BigInt pow(const BigInt& z, unsigned e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), z.get_mpz_t(), e);
  return r;
}

}  // namespace kwb

#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "kwb/expr_io.hpp"
#include "kwb/polynomial.hpp"

namespace kwb::test {

inline Polynomial P(const std::string& text, const VarList& vars) {
  return parse_polynomial(text, vars);
}

inline PolyMap M(const std::vector<std::string>& comps, const VarList& vars) {
  auto ring = make_ring(vars);
  std::vector<Polynomial> out;
  for (const auto& c : comps) out.push_back(parse_polynomial(c, ring));
  return PolyMap(std::move(out));
}

inline RatVector Q(std::initializer_list<long> xs) {
  RatVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

/// Random polynomial with small integer or half-integer coefficients.
inline Polynomial random_poly(std::mt19937& rng, std::shared_ptr<const VarList> ring,
                              unsigned max_degree, unsigned max_terms, bool rational = false) {
  std::uniform_int_distribution<int> coef(-5, 5);
  std::uniform_int_distribution<unsigned> nterms(1, max_terms);
  std::uniform_int_distribution<unsigned> deg(0, max_degree);
  std::uniform_int_distribution<std::size_t> var(0, ring->size() - 1);
  Polynomial p(ring);
  const unsigned k = nterms(rng);
  for (unsigned t = 0; t < k; ++t) {
    Monomial m(ring->size());
    const unsigned d = deg(rng);
    for (unsigned j = 0; j < d; ++j) m[var(rng)] += 1;
    Rational c(coef(rng));
    if (rational && (rng() & 1u)) c /= 2;
    p.add_term(m, c);
  }
  return p;
}

inline std::mt19937 seeded(unsigned seed) { return std::mt19937(seed); }

}  // namespace kwb::test

#include "kwb/keller.hpp"

namespace kwb::test {

/// Strictly lower-triangular integer matrix with entries in [-range, range].
inline IntMatrix random_strict_lower(std::mt19937& rng, std::size_t n, int range) {
  std::uniform_int_distribution<int> e(-range, range);
  IntMatrix a(n, n, BigInt(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) a(i, j) = e(rng);
  return a;
}

/// P A P^T for a random permutation P: still nilpotent, no longer triangular.
inline IntMatrix random_permuted(std::mt19937& rng, const IntMatrix& a) {
  std::vector<std::size_t> perm(a.rows());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  IntMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(perm[i], perm[j]) = a(i, j);
  return out;
}

}  // namespace kwb::test

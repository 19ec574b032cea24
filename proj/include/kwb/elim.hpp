#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "kwb/polynomial.hpp"

namespace kwb {

enum class OrderKind { lex, graded_lex, block };

/// Monomial order. `permutation` lists variable indices from most to least
/// significant (empty means declaration order). For block orders the first
/// `split` variables of the permutation form the first block; each block is
/// compared graded-lexicographically, the first block deciding.
struct TermOrder {
  OrderKind kind = OrderKind::graded_lex;
  std::vector<std::size_t> permutation;
  std::size_t split = 0;

  static TermOrder lex(std::vector<std::size_t> permutation = {});
  static TermOrder graded_lex(std::vector<std::size_t> permutation = {});
  static TermOrder block(std::vector<std::size_t> permutation, std::size_t split);

  std::strong_ordering compare(const Monomial& a, const Monomial& b) const;
  void validate(std::size_t nvars) const;
};

/// Caps that turn runaway Buchberger runs into BudgetExceeded.
struct GroebnerBudget {
  std::size_t max_basis_size = 400;
  unsigned max_degree = 64;
  std::size_t max_pairs = 200000;
};

/// Ideal given by generators over one ring. A zero ideal is represented by a
/// single zero generator.
class Ideal {
 public:
  explicit Ideal(std::vector<Polynomial> generators);

  const std::vector<Polynomial>& generators() const noexcept { return gens_; }
  const std::shared_ptr<const VarList>& ring() const { return gens_.front().ring(); }
  bool is_zero() const;

 private:
  std::vector<Polynomial> gens_;
};

/// Leading monomial and coefficient of p under `order`; p must be nonzero.
std::pair<Monomial, Rational> leading_term(const Polynomial& p, const TermOrder& order);

/// Reduced Groebner basis, monic, sorted by ascending leading monomial.
Ideal groebner(const Ideal& ideal, const TermOrder& order, const GroebnerBudget& budget = {});

/// Full reduction of f modulo `basis` (any generating set; a Groebner basis
/// for canonical output).
Polynomial normal_form(const Polynomial& f, const Ideal& basis, const TermOrder& order);

/// Membership test against a Groebner basis computed with `order`.
bool reduces_to_zero(const Polynomial& f, const Ideal& groebner_basis, const TermOrder& order);

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const TermOrder& order);

/// Generators of ideal ∩ Q[keep], computed with a block order that puts the
/// eliminated variables first.
Ideal eliminate(const Ideal& ideal, const std::vector<std::string>& keep,
                const GroebnerBudget& budget = {});

/// Ring (Y1..Yn, T) used for minimal polynomials of coordinates.
std::shared_ptr<const VarList> coordinate_ring(std::size_t n);

/// h(Y, T) generating <F_1 - Y_1, ..., F_n - Y_n> ∩ Q[Y, X_i] with X_i
/// renamed T; integer content 1, leading coefficient in T positive.
/// `coordinate` is 0-based.
Polynomial minimal_poly_of_coordinate(const PolyMap& f, std::size_t coordinate,
                                      const GroebnerBudget& budget = {});

/// Number of points, with multiplicity, in the fiber F^{-1}(sample): the
/// dimension of the quotient by <F_i - sample_i>.
unsigned generic_fiber_degree(const PolyMap& f, std::span<const Rational> sample,
                              const GroebnerBudget& budget = {});

/// Sylvester resultant in `var` at the given formal degrees.
Polynomial resultant(const Polynomial& p, const Polynomial& q, std::size_t var,
                     unsigned formal_degree_p, unsigned formal_degree_q);
/// Resultant at the actual degrees.
Polynomial resultant(const Polynomial& p, const Polynomial& q, std::size_t var);

/// (-1)^(d(d-1)/2) Res(p, p') / lc_d(p) at formal degree d; 1 when d = 1.
Polynomial discriminant(const Polynomial& p, std::size_t var, unsigned formal_degree);

}  // namespace kwb

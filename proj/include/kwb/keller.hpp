#pragma once

#include <cstddef>
#include <string>
#include <variant>

#include "kwb/polynomial.hpp"

namespace kwb {

/// Matrix of partial derivatives, row i = gradient of F_i.
PolyMatrix jacobian_matrix(const PolyMap& f);

/// det DF, expanded exactly. Throws DomainError for non-square maps.
Polynomial jacobian_det(const PolyMap& f);

/// True iff det DF is the constant 1.
bool is_keller(const PolyMap& f);

/// Truncated inverse of F. When `exact` is set the truncation is a genuine
/// polynomial inverse: F o G = identity as polynomials.
struct FormalInverse {
  PolyMap map;
  unsigned degree_bound = 0;
  bool exact = false;
};

/// 3^(n-1): the classical inverse-degree bound for cubic maps in n variables.
unsigned default_degree_cap(std::size_t n);

/// Fixed-point iteration G <- L^{-1}(Y - N(G)) truncated at `degree_cap`,
/// where F = L + N splits F into its linear part and higher-order terms.
/// Requires F(0) = 0 and an invertible linear part.
FormalInverse formal_inverse(const PolyMap& f, unsigned degree_cap);

/// F_i(X) = X_i + <a_i, X>^3, rows a_i of an n x n rational matrix.
class CubicLinearForm {
 public:
  explicit CubicLinearForm(RatMatrix rows);
  explicit CubicLinearForm(const IntMatrix& rows) : CubicLinearForm(to_rational(rows)) {}

  const RatMatrix& matrix() const noexcept { return rows_; }
  std::size_t dimension() const noexcept { return rows_.rows(); }
  bool is_integral() const;
  /// Integer rows; throws DomainError when some entry is not an integer.
  IntMatrix integer_matrix() const;

  /// The map over `vars` (x1..xn when omitted).
  PolyMap to_map(std::shared_ptr<const VarList> vars) const;
  PolyMap to_map() const;

  friend bool operator==(const CubicLinearForm&, const CubicLinearForm&) = default;

 private:
  RatMatrix rows_;
};

/// Default variable names x1..xn.
std::shared_ptr<const VarList> standard_ring(std::size_t n, const std::string& prefix = "x");

struct CubicRejection {
  std::size_t component;  // 0-based
  std::string reason;
};

/// Recognizes F_i = X_i + c_i^3 with c_i linear over Q.
std::variant<CubicLinearForm, CubicRejection> as_cubic_linear(const PolyMap& f);

}  // namespace kwb

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kwb/keller.hpp"
#include "kwb/polynomial.hpp"

namespace kwb {

/// (1/r) F(rX). Requires r != 0 and F(0) = 0; the degree-k homogeneous part
/// of F picks up the factor r^(k-1).
PolyMap scale_conjugate(const PolyMap& f, const Rational& r);

/// (F(X), Y_1, ..., Y_m) over n + m variables. New variables take the names
/// in `new_names`, or fresh x<k> names when it is empty.
PolyMap extend_variables(const PolyMap& f, std::size_t m, VarList new_names = {});

/// A o F o A^{-1}. Throws DomainError for singular A.
PolyMap conjugate_by_linear(const PolyMap& f, const RatMatrix& a);

/// Z -> F(Z - a) - F(-a): the point -a moved to the origin, which is then fixed.
PolyMap translate_to_origin(const PolyMap& f, std::span<const Rational> a);

/// T(X) = (v_1 X_1, ..., v_n X_n) with v_i = w_i^3 and delta = prod v_i.
class DiagonalTransform {
 public:
  explicit DiagonalTransform(IntVector weights);

  const IntVector& weights() const noexcept { return w_; }
  const IntVector& scales() const noexcept { return v_; }
  const BigInt& delta() const noexcept { return delta_; }
  std::size_t dimension() const noexcept { return w_.size(); }

 private:
  IntVector w_;
  IntVector v_;
  BigInt delta_;
};

/// G(X) = (1/delta) T^{-1}(F(T(delta X))) for an integer cubic-linear F with
/// rows b_i. The result is cubic-linear with integer rows
///   a_i = (w_i^{-1} prod_j w_j^2) (v_1 b_i1, ..., v_n b_in).
/// The closed form is checked against the composition on every call.
CubicLinearForm diagonal_cube_conjugate(const CubicLinearForm& f, const DiagonalTransform& t);

/// G_i = F_i(X_1 + X_{n+1}, ..., X_n + X_{n+1}) - X_{n+1} for i <= n and
/// G_{n+1} = X_{n+1}. Cubic-linear with rows (a_i, sum_j a_ij) and a zero
/// last row. Checked against the composition, and Keller-ness of F carried over.
CubicLinearForm diagonal_shift_extension(const CubicLinearForm& f);

/// Smallest r of the form 1 + max |s_i| over nonzero s in `points`; no
/// nonzero point of the set lies in r Z^n. Returns 1 when the set is {0}.
BigInt choose_clearing_scale(std::span<const IntVector> points);

}  // namespace kwb

#pragma once

#include <cstddef>
#include <span>

#include "kwb/matrix.hpp"

namespace kwb {

/// Integer vector whose coordinates have gcd 1.
class PrimitiveVector {
 public:
  /// Throws DomainError for the zero vector or a non-primitive one.
  explicit PrimitiveVector(IntVector coords);

  const IntVector& coords() const noexcept { return v_; }
  std::size_t size() const noexcept { return v_.size(); }
  const BigInt& operator[](std::size_t i) const { return v_[i]; }

 private:
  IntVector v_;
};

/// Square integer matrix of determinant exactly 1.
class UnimodularMatrix {
 public:
  /// Throws DomainError when `m` is not square or det m != 1.
  explicit UnimodularMatrix(IntMatrix m);

  const IntMatrix& matrix() const noexcept { return m_; }
  std::size_t dimension() const noexcept { return m_.rows(); }
  IntVector operator*(const IntVector& v) const { return m_ * v; }
  friend UnimodularMatrix operator*(const UnimodularMatrix& a, const UnimodularMatrix& b);
  friend bool operator==(const UnimodularMatrix&, const UnimodularMatrix&) = default;

 private:
  struct Trusted {};
  UnimodularMatrix(IntMatrix m, Trusted) : m_(std::move(m)) {}
  IntMatrix m_;
};

/// gcd(|v_1|, ..., |v_n|) == 1. Throws DomainError for the zero vector.
bool is_primitive(std::span<const BigInt> v);

/// A in SL(n, Z) with first column v, built by induction on n: the (n-1)-case
/// completion of (v_2, ..., v_n)/r is bordered by v_1 and a free last column
/// (beta, alpha * vbar), and (alpha, beta) solve det = 1 by extended Euclid.
/// For n = 1 only v = (1) is completable.
UnimodularMatrix sl_complete(const PrimitiveVector& v);

/// A in SL(n, Z) with A v = w.
UnimodularMatrix map_primitive_pair(const PrimitiveVector& v, const PrimitiveVector& w);

/// Integer inverse via the adjugate.
UnimodularMatrix sl_inverse(const UnimodularMatrix& a);
/// Same, for a raw matrix; throws DomainError when det != 1.
UnimodularMatrix sl_inverse(const IntMatrix& a);

}  // namespace kwb

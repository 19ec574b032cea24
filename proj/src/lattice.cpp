#include "kwb/lattice.hpp"

#include <algorithm>

namespace kwb {

PrimitiveVector::PrimitiveVector(IntVector coords) : v_(std::move(coords)) {
  if (!is_primitive(v_)) throw DomainError("vector is not primitive");
}

UnimodularMatrix::UnimodularMatrix(IntMatrix m) : m_(std::move(m)) {
  if (!m_.is_square() || m_.rows() == 0) throw DomainError("unimodular matrix must be square");
  if (determinant(m_) != 1) throw DomainError("matrix does not have determinant 1");
}

UnimodularMatrix operator*(const UnimodularMatrix& a, const UnimodularMatrix& b) {
  return UnimodularMatrix(a.m_ * b.m_, UnimodularMatrix::Trusted{});
}

bool is_primitive(std::span<const BigInt> v) {
  const BigInt g = gcd_of(v);
  if (g == 0) throw DomainError("is_primitive: zero vector");
  return g == 1;
}

namespace {

IntMatrix complete(const IntVector& v) {
  const std::size_t n = v.size();
  if (n == 1) {
    if (v[0] != 1) throw DomainError("sl_complete: SL(1, Z) only contains (1)");
    return IntMatrix{{1}};
  }
  if (n == 2) {
    const auto [g, s, t] = extended_gcd(v[0], v[1]);
    if (g != 1) throw InternalError("sl_complete: base case on a non-primitive vector");
    return IntMatrix{{v[0], -t}, {v[1], s}};
  }

  if (v[0] == 0) {
    // Swap a nonzero coordinate to the front, complete, swap the rows back;
    // negating column 2 restores det = +1 without touching column 1.
    const auto k = static_cast<std::size_t>(
        std::find_if(v.begin(), v.end(), [](const BigInt& x) { return x != 0; }) - v.begin());
    IntVector w = v;
    std::swap(w[0], w[k]);
    IntMatrix a = complete(w);
    a.swap_rows(0, k);
    for (std::size_t i = 0; i < n; ++i) a(i, 1) = -a(i, 1);
    return a;
  }

  const IntVector tail(v.begin() + 1, v.end());
  const BigInt r = gcd_of(tail);
  if (r == 0) {
    IntMatrix a = IntMatrix::identity(n);
    if (v[0] == -1) a(0, 0) = a(1, 1) = -1;
    return a;
  }
  if (gcd(r, v[0]) != 1) throw InternalError("sl_complete: gcd(r, v_1) != 1");

  IntVector vbar(tail.size());
  for (std::size_t i = 0; i < tail.size(); ++i) vbar[i] = exact_div(tail[i], r);
  const IntMatrix abar = complete(vbar);  // [vbar | B], (n-1) x (n-1)

  auto bordered = [&](const BigInt& alpha, const BigInt& beta) {
    IntMatrix a(n, n, BigInt(0));
    a(0, 0) = v[0];
    a(0, n - 1) = beta;
    for (std::size_t i = 1; i < n; ++i) {
      a(i, 0) = r * vbar[i - 1];
      for (std::size_t j = 1; j + 1 < n; ++j) a(i, j) = abar(i - 1, j);
      a(i, n - 1) = alpha * vbar[i - 1];
    }
    return a;
  };
  // det is affine in (alpha, beta): the pair occupies a single column.
  const BigInt c0 = determinant(bordered(0, 0));
  const BigInt c1 = determinant(bordered(1, 0)) - c0;
  const BigInt c2 = determinant(bordered(0, 1)) - c0;
  const BigInt target = 1 - c0;
  const auto [g, s, t] = extended_gcd(c1, c2);
  if (g == 0 || target % g != 0)
    throw InternalError("sl_complete: determinant form cannot reach 1");
  const BigInt k = exact_div(target, g);
  return bordered(s * k, t * k);
}

}  // namespace

UnimodularMatrix sl_complete(const PrimitiveVector& v) {
  IntMatrix a = complete(v.coords());
  if (a.col(0) != v.coords()) throw InternalError("sl_complete: wrong first column");
  return UnimodularMatrix(std::move(a));
}

UnimodularMatrix map_primitive_pair(const PrimitiveVector& v, const PrimitiveVector& w) {
  if (v.size() != w.size()) throw DomainError("map_primitive_pair: dimension mismatch");
  const UnimodularMatrix a = sl_complete(w) * sl_inverse(sl_complete(v));
  if (a * v.coords() != w.coords()) throw InternalError("map_primitive_pair: A v != w");
  return a;
}

UnimodularMatrix sl_inverse(const UnimodularMatrix& a) {
  const IntMatrix& m = a.matrix();
  const std::size_t n = m.rows();
  if (n == 1) return a;
  IntMatrix adj(n, n);
  IntMatrix minor(n - 1, n - 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t r = 0, mr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, mc = 0; c < n; ++c)
          if (c != j) minor(mr, mc++) = m(r, c);
        ++mr;
      }
      const BigInt cof = determinant(minor);
      adj(j, i) = (i + j) % 2 == 0 ? cof : BigInt(-cof);
    }
  if (adj * m != IntMatrix::identity(n)) throw InternalError("sl_inverse: adjugate check failed");
  return UnimodularMatrix(std::move(adj));
}

UnimodularMatrix sl_inverse(const IntMatrix& a) { return sl_inverse(UnimodularMatrix(a)); }

}  // namespace kwb

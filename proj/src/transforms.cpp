#include "kwb/transforms.hpp"

#include <algorithm>

namespace kwb {

namespace {

void require_origin_fixed(const PolyMap& f, const char* op) {
  for (const auto& c : f.components())
    if (c.constant_term() != 0) throw DomainError(std::string(op) + ": F(0) != 0");
}

RatMatrix diagonal(const RatVector& d) {
  RatMatrix m(d.size(), d.size(), Rational(0));
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

}  // namespace

PolyMap scale_conjugate(const PolyMap& f, const Rational& r) {
  if (r == 0) throw DomainError("scale_conjugate: r = 0");
  require_origin_fixed(f, "scale_conjugate");
  std::vector<Polynomial> scaled;
  for (std::size_t i = 0; i < f.nvars(); ++i)
    scaled.push_back(Polynomial::variable(f.ring(), i) * r);
  const PolyMap inner = compose(f, PolyMap(std::move(scaled)));
  std::vector<Polynomial> out;
  for (const auto& c : inner.components()) out.push_back(c * (1 / r));
  return PolyMap(std::move(out));
}

PolyMap extend_variables(const PolyMap& f, std::size_t m, VarList new_names) {
  if (m == 0) return f;
  VarList vars = f.variables();
  if (new_names.empty()) {
    for (std::size_t k = 1; k <= m; ++k) {
      std::string name = "x" + std::to_string(f.nvars() + k);
      while (std::find(vars.begin(), vars.end(), name) != vars.end()) name += '_';
      vars.push_back(name);
    }
  } else {
    if (new_names.size() != m) throw DomainError("extend_variables: wrong number of names");
    for (auto& name : new_names) {
      if (std::find(vars.begin(), vars.end(), name) != vars.end())
        throw DomainError("extend_variables: name '" + name + "' already in use");
      vars.push_back(std::move(name));
    }
  }
  auto ring = make_ring(std::move(vars));
  std::vector<Polynomial> comps;
  for (const auto& c : f.components()) comps.push_back(c.with_variables(ring));
  for (std::size_t k = 0; k < m; ++k) comps.push_back(Polynomial::variable(ring, f.nvars() + k));
  return PolyMap(std::move(comps));
}

PolyMap conjugate_by_linear(const PolyMap& f, const RatMatrix& a) {
  if (!f.is_square() || a.rows() != f.size())
    throw DomainError("conjugate_by_linear: shape mismatch");
  const RatMatrix ainv = inverse(a);
  return apply_matrix(a, compose(f, linear_map(ainv, f.ring())));
}

PolyMap translate_to_origin(const PolyMap& f, std::span<const Rational> a) {
  if (a.size() != f.nvars()) throw DomainError("translate_to_origin: point has wrong dimension");
  std::vector<Polynomial> shifted;
  for (std::size_t i = 0; i < f.nvars(); ++i)
    shifted.push_back(Polynomial::variable(f.ring(), i) - Polynomial::constant(f[0], a[i]));
  const PolyMap moved = compose(f, PolyMap(std::move(shifted)));
  RatVector minus_a(a.begin(), a.end());
  for (auto& c : minus_a) c = -c;
  const RatVector at = f.evaluate(minus_a);
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < f.size(); ++i)
    out.push_back(moved[i] - Polynomial::constant(f[0], at[i]));
  return PolyMap(std::move(out));
}

DiagonalTransform::DiagonalTransform(IntVector weights) : w_(std::move(weights)), delta_(1) {
  if (w_.empty()) throw DomainError("diagonal transform needs at least one weight");
  for (const auto& w : w_) {
    if (w == 0) throw DomainError("diagonal transform: zero weight");
    v_.push_back(w * w * w);
    delta_ *= v_.back();
  }
}

CubicLinearForm diagonal_cube_conjugate(const CubicLinearForm& f, const DiagonalTransform& t) {
  const std::size_t n = f.dimension();
  if (t.dimension() != n) throw DomainError("diagonal_cube_conjugate: dimension mismatch");
  const IntMatrix b = f.integer_matrix();

  BigInt w_sq = 1;
  for (const auto& w : t.weights()) w_sq *= w * w;
  IntMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const BigInt factor = exact_div(w_sq, t.weights()[i]);
    for (std::size_t j = 0; j < n; ++j) a(i, j) = factor * t.scales()[j] * b(i, j);
  }
  CubicLinearForm out(a);

  // Defining composition (1/delta) T^{-1} o F o T(delta X).
  RatVector inner(n), outer(n);
  for (std::size_t i = 0; i < n; ++i) {
    inner[i] = Rational(t.delta() * t.scales()[i]);
    outer[i] = 1 / inner[i];
  }
  const PolyMap fm = f.to_map();
  const PolyMap g = apply_matrix(diagonal(outer), compose(fm, linear_map(diagonal(inner), fm.ring())));
  if (g != out.to_map(fm.ring()))
    throw InternalError("diagonal_cube_conjugate: closed form disagrees with composition");
  return out;
}

CubicLinearForm diagonal_shift_extension(const CubicLinearForm& f) {
  const std::size_t n = f.dimension();
  const RatMatrix& a = f.matrix();
  RatMatrix ext(n + 1, n + 1, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    Rational sum = 0;
    for (std::size_t j = 0; j < n; ++j) {
      ext(i, j) = a(i, j);
      sum += a(i, j);
    }
    ext(i, n) = sum;
  }
  CubicLinearForm out(ext);

  auto ring = standard_ring(n + 1);
  const Polynomial last = Polynomial::variable(ring, n);
  std::vector<Polynomial> shift;
  for (std::size_t j = 0; j < n; ++j) shift.push_back(Polynomial::variable(ring, j) + last);
  const PolyMap fm = f.to_map(standard_ring(n));
  std::vector<Polynomial> comps;
  for (std::size_t i = 0; i < n; ++i) comps.push_back(substitute(fm[i], shift) - last);
  comps.push_back(last);
  const PolyMap g(std::move(comps));
  if (g != out.to_map(ring))
    throw InternalError("diagonal_shift_extension: closed form disagrees with composition");
  if (is_keller(fm) && !is_keller(g))
    throw InternalError("diagonal_shift_extension: Keller property lost");
  return out;
}

BigInt choose_clearing_scale(std::span<const IntVector> points) {
  BigInt largest = 0;
  for (const auto& p : points)
    for (const auto& x : p) largest = std::max<BigInt>(largest, abs(x));
  return largest + 1;
}

}  // namespace kwb

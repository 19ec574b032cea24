#include "kwb/keller.hpp"

namespace kwb {

PolyMatrix jacobian_matrix(const PolyMap& f) {
  const std::size_t n = f.size(), m = f.nvars();
  PolyMatrix j(n, m, Polynomial(f.ring()));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < m; ++c) j(r, c) = partial_derivative(f[r], c);
  return j;
}

Polynomial jacobian_det(const PolyMap& f) {
  if (!f.is_square()) throw DomainError("jacobian_det: map is not square");
  return determinant(jacobian_matrix(f), f[0]);
}

bool is_keller(const PolyMap& f) {
  return jacobian_det(f) == Polynomial::constant(f[0], 1);
}

unsigned default_degree_cap(std::size_t n) {
  unsigned cap = 1;
  for (std::size_t k = 1; k < n; ++k) cap *= 3;
  return cap;
}

FormalInverse formal_inverse(const PolyMap& f, unsigned degree_cap) {
  if (!f.is_square()) throw DomainError("formal_inverse: map is not square");
  if (degree_cap == 0) throw DomainError("formal_inverse: degree cap must be positive");
  const std::size_t n = f.size();
  for (const auto& c : f.components())
    if (c.constant_term() != 0) throw DomainError("formal_inverse: F(0) != 0");

  RatMatrix linear(n, n);
  std::vector<Polynomial> higher;
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial rest = f[i];
    for (std::size_t j = 0; j < n; ++j) {
      const Rational c = f[i].coefficient(Monomial::unit(n, j));
      linear(i, j) = c;
      rest.add_term(Monomial::unit(n, j), -c);
    }
    higher.push_back(std::move(rest));
  }
  RatMatrix linv;
  try {
    linv = inverse(linear);
  } catch (const DomainError&) {
    throw DomainError("formal_inverse: DF(0) is singular");
  }
  const PolyMap nonlinear(std::move(higher));
  const PolyMap identity = PolyMap::identity(f.ring());

  PolyMap g = linear_map(linv, f.ring());
  for (unsigned iter = 0; iter < degree_cap; ++iter) {
    const PolyMap ng = compose(nonlinear, g, degree_cap);
    std::vector<Polynomial> rhs;
    for (std::size_t i = 0; i < n; ++i) rhs.push_back(identity[i] - ng[i]);
    PolyMap next = apply_matrix(linv, PolyMap(std::move(rhs)));
    if (next == g) break;
    g = std::move(next);
  }
  FormalInverse out{g, degree_cap, false};
  out.exact = compose(f, g) == identity;
  return out;
}

// ---------------------------------------------------------------------------

CubicLinearForm::CubicLinearForm(RatMatrix rows) : rows_(std::move(rows)) {
  if (!rows_.is_square() || rows_.rows() == 0)
    throw DomainError("cubic-linear form needs a nonempty square matrix");
}

bool CubicLinearForm::is_integral() const {
  for (std::size_t i = 0; i < rows_.rows(); ++i)
    for (std::size_t j = 0; j < rows_.cols(); ++j)
      if (!is_integer(rows_(i, j))) return false;
  return true;
}

IntMatrix CubicLinearForm::integer_matrix() const {
  if (!is_integral()) throw DomainError("cubic-linear form has non-integer rows");
  IntMatrix out(rows_.rows(), rows_.cols());
  for (std::size_t i = 0; i < rows_.rows(); ++i)
    for (std::size_t j = 0; j < rows_.cols(); ++j) out(i, j) = rows_(i, j).get_num();
  return out;
}

std::shared_ptr<const VarList> standard_ring(std::size_t n, const std::string& prefix) {
  VarList vars;
  for (std::size_t i = 1; i <= n; ++i) vars.push_back(prefix + std::to_string(i));
  return make_ring(std::move(vars));
}

PolyMap CubicLinearForm::to_map(std::shared_ptr<const VarList> vars) const {
  const std::size_t n = dimension();
  if (vars->size() != n) throw DomainError("cubic-linear form: ring has wrong dimension");
  std::vector<Polynomial> comps;
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial lin(vars);
    for (std::size_t j = 0; j < n; ++j) lin.add_term(Monomial::unit(n, j), rows_(i, j));
    comps.push_back(Polynomial::variable(vars, i) + pow(lin, 3));
  }
  return PolyMap(std::move(comps));
}

PolyMap CubicLinearForm::to_map() const { return to_map(standard_ring(dimension())); }

std::variant<CubicLinearForm, CubicRejection> as_cubic_linear(const PolyMap& f) {
  if (!f.is_square()) return CubicRejection{0, "map is not square"};
  const std::size_t n = f.size();
  RatMatrix rows(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const Polynomial rest = f[i] - Polynomial::variable(f.ring(), i);
    if (rest.is_zero()) continue;
    const auto& [lm, lc] = rest.lex_leading_term();
    // The lex-leading term of (c_k x_k + ...)^3, k the first nonzero index, is c_k^3 x_k^3.
    std::size_t k = n;
    for (std::size_t v = 0; v < n; ++v)
      if (lm[v] != 0) {
        k = v;
        break;
      }
    if (k == n || lm[k] != 3 || lm.total_degree() != 3)
      return CubicRejection{i, "remainder is not the cube of a linear form"};
    const auto ck = rational_cbrt(lc);
    if (!ck) return CubicRejection{i, "leading coefficient is not a rational cube"};
    const Rational denom = 3 * (*ck) * (*ck);
    Polynomial lin(f.ring());
    for (std::size_t j = 0; j < n; ++j) {
      Rational c = *ck;
      if (j != k) {
        Monomial m = Monomial::unit(n, k, 2);
        m[j] += 1;
        c = rest.coefficient(m) / denom;
      }
      rows(i, j) = c;
      lin.add_term(Monomial::unit(n, j), c);
    }
    // Exact division by the linear form three times must leave 1.
    Polynomial q = rest;
    for (int step = 0; step < 3; ++step) {
      auto d = divide_exact(q, lin);
      if (!d) return CubicRejection{i, "remainder is not the cube of a linear form"};
      q = *std::move(d);
    }
    if (q != Polynomial::constant(f[i], 1))
      return CubicRejection{i, "remainder is not the cube of a linear form"};
  }
  return CubicLinearForm(std::move(rows));
}

}  // namespace kwb

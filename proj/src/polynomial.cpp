#include "kwb/polynomial.hpp"

#include <algorithm>
#include <limits>

namespace kwb {

namespace {

const std::shared_ptr<const VarList>& empty_ring() {
  static const auto ring = std::make_shared<const VarList>();
  return ring;
}

}  // namespace

std::shared_ptr<const VarList> make_ring(VarList vars) {
  return std::make_shared<const VarList>(std::move(vars));
}

bool same_ring(const Polynomial& p, const Polynomial& q) {
  return p.ring() == q.ring() || p.variables() == q.variables();
}

// ---------------------------------------------------------------------------
// Construction and queries

Polynomial::Polynomial() : vars_(empty_ring()) {}
Polynomial::Polynomial(VarList vars) : vars_(make_ring(std::move(vars))) {}
Polynomial::Polynomial(std::shared_ptr<const VarList> vars) : vars_(std::move(vars)) {}

Polynomial Polynomial::constant(const Polynomial& ring_of, const Rational& c) {
  Polynomial p(ring_of.vars_);
  p.add_term(Monomial(p.nvars()), c);
  return p;
}

Polynomial Polynomial::constant(VarList vars, const Rational& c) {
  Polynomial p(std::move(vars));
  p.add_term(Monomial(p.nvars()), c);
  return p;
}

Polynomial Polynomial::variable(VarList vars, std::string_view name) {
  Polynomial p(std::move(vars));
  auto idx = p.index_of(name);
  if (!idx) throw DomainError("unknown variable '" + std::string(name) + "'");
  p.add_term(Monomial::unit(p.nvars(), *idx), Rational(1));
  return p;
}

Polynomial Polynomial::variable(std::shared_ptr<const VarList> vars, std::size_t index) {
  Polynomial p(std::move(vars));
  if (index >= p.nvars()) throw DomainError("variable index out of range");
  p.add_term(Monomial::unit(p.nvars(), index), Rational(1));
  return p;
}

Polynomial Polynomial::term(std::shared_ptr<const VarList> vars, Monomial m, Rational c) {
  Polynomial p(std::move(vars));
  if (m.size() != p.nvars()) throw DomainError("monomial length does not match ring");
  p.add_term(m, c);
  return p;
}

std::optional<std::size_t> Polynomial::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < vars_->size(); ++i)
    if ((*vars_)[i] == name) return i;
  return std::nullopt;
}

bool Polynomial::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Polynomial::constant_term() const { return coefficient(Monomial(nvars())); }

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

int Polynomial::total_degree() const noexcept {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.total_degree()));
  return d;
}

unsigned Polynomial::degree_in(std::size_t var) const noexcept {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max<unsigned>(d, m[var]);
  return d;
}

bool Polynomial::involves(std::size_t var) const noexcept {
  for (const auto& [m, c] : terms_)
    if (m[var] != 0) return true;
  return false;
}

bool Polynomial::is_homogeneous() const noexcept {
  if (terms_.empty()) return true;
  const unsigned d = terms_.begin()->first.total_degree();
  for (const auto& [m, c] : terms_)
    if (m.total_degree() != d) return false;
  return true;
}

bool Polynomial::is_integral() const noexcept {
  for (const auto& [m, c] : terms_)
    if (!is_integer(c)) return false;
  return true;
}

const std::pair<const Monomial, Rational>& Polynomial::lex_leading_term() const {
  if (terms_.empty()) throw DomainError("leading term of the zero polynomial");
  return *terms_.rbegin();
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() != nvars()) throw DomainError("evaluate: point has wrong dimension");
  Rational sum = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] != 0) t *= kwb::pow(point[i], m[i]);
    sum += t;
  }
  return sum;
}

Polynomial Polynomial::with_variables(std::shared_ptr<const VarList> vars) const {
  Polynomial out(vars);
  std::vector<std::optional<std::size_t>> map(nvars());
  for (std::size_t i = 0; i < nvars(); ++i) map[i] = out.index_of((*vars_)[i]);
  for (const auto& [m, c] : terms_) {
    Monomial nm(out.nvars());
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!map[i])
        throw DomainError("variable '" + (*vars_)[i] + "' is missing from the target ring");
      nm[*map[i]] += m[i];
    }
    out.add_term(nm, c);
  }
  return out;
}

Polynomial Polynomial::with_variables(VarList vars) const {
  return with_variables(make_ring(std::move(vars)));
}

void Polynomial::check_same_ring(const Polynomial& q, const char* op) const {
  if (!same_ring(*this, q))
    throw DomainError(std::string(op) + ": variable-list mismatch");
}

// ---------------------------------------------------------------------------
// Arithmetic

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& [m, c] : p.terms_) c = -c;
  return p;
}

Polynomial& Polynomial::operator+=(const Polynomial& q) {
  check_same_ring(q, "add");
  for (const auto& [m, c] : q.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& q) {
  check_same_ring(q, "sub");
  for (const auto& [m, c] : q.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& q) {
  *this = *this * q;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coef] : terms_) coef *= c;
  return *this;
}

namespace {

Polynomial multiply(const Polynomial& p, const Polynomial& q, unsigned max_degree) {
  p.check_same_ring(q, "mul");
  Polynomial::TermMap acc;
  for (const auto& [ma, ca] : p.terms()) {
    const unsigned da = ma.total_degree();
    if (da > max_degree) continue;
    for (const auto& [mb, cb] : q.terms()) {
      if (da + mb.total_degree() > max_degree) continue;
      auto [it, inserted] = acc.try_emplace(ma * mb, ca * cb);
      if (!inserted) it->second += ca * cb;
    }
  }
  Polynomial out(p.ring());
  for (auto& [m, c] : acc) out.add_term(m, c);
  return out;
}

constexpr unsigned kNoCap = std::numeric_limits<unsigned>::max();

}  // namespace

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
  return multiply(p, q, kNoCap);
}

bool operator==(const Polynomial& p, const Polynomial& q) {
  return same_ring(p, q) && p.terms_ == q.terms_;
}

Polynomial pow(const Polynomial& p, unsigned e) {
  Polynomial result = Polynomial::constant(p, 1);
  Polynomial base = p;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return result;
}

Polynomial mul_truncated(const Polynomial& p, const Polynomial& q, unsigned max_degree) {
  return multiply(p, q, max_degree);
}

Polynomial truncate(const Polynomial& p, unsigned max_degree) {
  Polynomial out(p.ring());
  for (const auto& [m, c] : p.terms())
    if (m.total_degree() <= max_degree) out.add_term(m, c);
  return out;
}

Polynomial arith(const Polynomial& p, const Polynomial& q, ArithOp op) {
  switch (op) {
    case ArithOp::add:
      return p + q;
    case ArithOp::sub:
      return p - q;
    case ArithOp::mul:
      return p * q;
  }
  throw DomainError("unknown arithmetic operation");
}

// ---------------------------------------------------------------------------
// Substitution and differentiation

Polynomial substitute(const Polynomial& p, std::span<const Polynomial> images,
                      std::optional<unsigned> max_degree) {
  if (images.size() != p.nvars())
    throw DomainError("substitute: expected one image per variable");
  if (images.empty()) return p;
  const auto& target = images.front().ring();
  for (const auto& img : images) img.check_same_ring(images.front(), "substitute");
  const unsigned cap = max_degree.value_or(kNoCap);

  // powers[i][k] = images[i]^k, filled lazily
  std::vector<std::vector<Polynomial>> powers(p.nvars());
  auto power = [&](std::size_t i, unsigned k) -> const Polynomial& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Polynomial::constant(images[i], 1));
    while (cache.size() <= k) cache.push_back(multiply(cache.back(), images[i], cap));
    return cache[k];
  };

  Polynomial out(target);
  for (const auto& [m, c] : p.terms()) {
    Polynomial t = Polynomial::constant(out, c);
    for (std::size_t i = 0; i < m.size() && !t.is_zero(); ++i)
      if (m[i] != 0) t = multiply(t, power(i, m[i]), cap);
    out += t;
  }
  return out;
}

Polynomial substitute(const Polynomial& p, const std::map<std::string, Polynomial>& bindings) {
  if (bindings.empty()) {
    if (!p.is_constant()) throw DomainError("substitute: unbound variable");
    return p;
  }
  const Polynomial& first = bindings.begin()->second;
  std::vector<Polynomial> images;
  images.reserve(p.nvars());
  for (std::size_t i = 0; i < p.nvars(); ++i) {
    const auto& name = p.variables()[i];
    auto it = bindings.find(name);
    if (it == bindings.end()) {
      if (p.involves(i)) throw DomainError("substitute: unbound variable '" + name + "'");
      images.emplace_back(first.ring());
    } else {
      it->second.check_same_ring(first, "substitute");
      images.push_back(it->second.with_variables(first.ring()));
    }
  }
  return substitute(p, images);
}

Polynomial partial_evaluate(const Polynomial& p, const std::map<std::size_t, Rational>& values) {
  Polynomial out(p.ring());
  for (const auto& [m, c] : p.terms()) {
    Monomial nm = m;
    Rational nc = c;
    for (const auto& [var, value] : values) {
      if (nm[var] == 0) continue;
      nc *= kwb::pow(value, nm[var]);
      nm[var] = 0;
    }
    out.add_term(nm, nc);
  }
  return out;
}

Polynomial partial_derivative(const Polynomial& p, std::size_t var) {
  if (var >= p.nvars()) throw DomainError("partial_derivative: variable out of range");
  Polynomial out(p.ring());
  for (const auto& [m, c] : p.terms()) {
    if (m[var] == 0) continue;
    Monomial nm = m;
    nm[var] -= 1;
    out.add_term(nm, c * m[var]);
  }
  return out;
}

Polynomial partial_derivative(const Polynomial& p, std::string_view var) {
  auto idx = p.index_of(var);
  if (!idx) throw DomainError("partial_derivative: undeclared variable '" + std::string(var) + "'");
  return partial_derivative(p, *idx);
}

std::vector<std::pair<unsigned, Polynomial>> homogeneous_components(const Polynomial& p) {
  std::map<unsigned, Polynomial> by_degree;
  for (const auto& [m, c] : p.terms()) {
    auto it = by_degree.try_emplace(m.total_degree(), p.ring()).first;
    it->second.add_term(m, c);
  }
  return {by_degree.begin(), by_degree.end()};
}

Polynomial leading_form(const Polynomial& p) {
  if (p.is_zero()) throw DomainError("leading_form of the zero polynomial");
  return homogeneous_components(p).back().second;
}

std::vector<Polynomial> coefficients_in(const Polynomial& p, std::size_t var) {
  std::vector<Polynomial> out(p.degree_in(var) + 1, Polynomial(p.ring()));
  for (const auto& [m, c] : p.terms()) {
    Monomial nm = m;
    nm[var] = 0;
    out[m[var]].add_term(nm, c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Normalization, division, gcd

Polynomial normalize(const Polynomial& p) {
  if (p.is_zero()) return p;
  BigInt den_lcm = 1;
  BigInt num_gcd = 0;
  for (const auto& [m, c] : p.terms()) {
    den_lcm = lcm(den_lcm, c.get_den());
    num_gcd = gcd(num_gcd, c.get_num());
  }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (p.lex_leading_term().second < 0) scale = -scale;
  return p * scale;
}

bool equal_up_to_scalar(const Polynomial& p, const Polynomial& q) {
  return normalize(p) == normalize(q);
}

std::optional<Polynomial> divide_exact(const Polynomial& p, const Polynomial& q) {
  p.check_same_ring(q, "divide");
  if (q.is_zero()) throw DomainError("division by the zero polynomial");
  Polynomial quotient(p.ring());
  Polynomial rem = p;
  const auto& [qm, qc] = q.lex_leading_term();
  while (!rem.is_zero()) {
    const auto& [rm, rc] = rem.lex_leading_term();
    if (!qm.divides(rm)) return std::nullopt;
    const Monomial tm = rm / qm;
    const Rational tc = rc / qc;
    quotient.add_term(tm, tc);
    for (const auto& [m, c] : q.terms()) rem.add_term(tm * m, -tc * c);
  }
  return quotient;
}

Polynomial exact_div(const Polynomial& a, const Polynomial& b) {
  auto q = divide_exact(a, b);
  if (!q) throw InternalError("fraction-free elimination: inexact division");
  return *std::move(q);
}

Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, std::size_t var) {
  a.check_same_ring(b, "pseudo_remainder");
  if (b.is_zero()) throw DomainError("pseudo_remainder by zero");
  const unsigned db = b.degree_in(var);
  const auto bc = coefficients_in(b, var);
  const Polynomial& lb = bc.back();
  Polynomial r = a;
  int e = static_cast<int>(a.degree_in(var)) - static_cast<int>(db) + 1;
  if (e <= 0) return r;
  while (!r.is_zero() && r.degree_in(var) >= db) {
    const unsigned dr = r.degree_in(var);
    const Polynomial lr = coefficients_in(r, var).back();
    const Polynomial shift = Polynomial::term(r.ring(), Monomial::unit(r.nvars(), var, dr - db), 1);
    r = lb * r - lr * shift * b;
    --e;
  }
  return pow(lb, static_cast<unsigned>(e)) * r;
}

namespace {

Polynomial one_like(const Polynomial& p) { return Polynomial::constant(p, 1); }

Polynomial gcd_rec(const Polynomial& a, const Polynomial& b);

/// gcd of the coefficients of p with respect to var.
Polynomial content_in(const Polynomial& p, std::size_t var) {
  Polynomial g(p.ring());
  for (const auto& c : coefficients_in(p, var)) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? normalize(c) : gcd_rec(g, c);
    if (g.is_constant()) return one_like(p);
  }
  return g;
}

Polynomial subresultant_gcd(Polynomial a, Polynomial b, std::size_t var) {
  if (a.degree_in(var) < b.degree_in(var)) std::swap(a, b);
  Polynomial g = one_like(a);
  Polynomial h = one_like(a);
  while (true) {
    const unsigned delta = a.degree_in(var) - b.degree_in(var);
    Polynomial r = pseudo_remainder(a, b, var);
    if (r.is_zero()) {
      Polynomial c = content_in(b, var);
      return normalize(exact_div(b, c));
    }
    if (r.degree_in(var) == 0) return one_like(a);
    a = std::move(b);
    b = exact_div(r, g * pow(h, delta));
    g = coefficients_in(a, var).back();
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      h = exact_div(pow(g, delta), pow(h, delta - 1));
    }
  }
}

Polynomial gcd_rec(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return normalize(b);
  if (b.is_zero()) return normalize(a);
  if (a.is_constant() || b.is_constant()) return one_like(a);

  // Pick the variable occurring in the fewest terms of a and b.
  const std::size_t n = a.nvars();
  std::optional<std::size_t> best;
  std::size_t best_count = 0;
  for (std::size_t v = 0; v < n; ++v) {
    const bool in_a = a.involves(v);
    const bool in_b = b.involves(v);
    if (!in_a && !in_b) continue;
    // A variable present in only one operand reduces to a content gcd.
    if (in_a != in_b) {
      return in_a ? gcd_rec(content_in(a, v), b) : gcd_rec(a, content_in(b, v));
    }
    std::size_t count = 0;
    for (const auto& [m, c] : a.terms()) count += m[v] != 0;
    for (const auto& [m, c] : b.terms()) count += m[v] != 0;
    if (!best || count < best_count) {
      best = v;
      best_count = count;
    }
  }
  const std::size_t var = *best;
  const Polynomial ca = content_in(a, var);
  const Polynomial cb = content_in(b, var);
  const Polynomial c = gcd_rec(ca, cb);
  const Polynomial g = subresultant_gcd(exact_div(a, ca), exact_div(b, cb), var);
  return normalize(c * g);
}

}  // namespace

Polynomial gcd(const Polynomial& p, const Polynomial& q) {
  p.check_same_ring(q, "gcd");
  if (p.is_zero() && q.is_zero()) return p;
  return normalize(gcd_rec(p, q));
}

Polynomial squarefree_part(const Polynomial& p) {
  if (p.is_zero()) throw DomainError("squarefree_part of the zero polynomial");
  if (p.is_constant()) return one_like(p);
  Polynomial g = p;
  for (std::size_t v = 0; v < p.nvars() && !g.is_constant(); ++v)
    if (p.involves(v)) g = gcd(g, partial_derivative(p, v));
  return normalize(exact_div(p, g));
}

// ---------------------------------------------------------------------------
// Determinants

namespace {

Polynomial cofactor_det(const PolyMatrix& m, std::vector<std::size_t>& cols, std::size_t row,
                        const Polynomial& zero) {
  const std::size_t n = m.rows();
  if (row == n) return one_like(zero);
  Polynomial sum = zero;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const std::size_t c = cols[k];
    if (m(row, c).is_zero()) continue;
    std::vector<std::size_t> rest = cols;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
    Polynomial minor = cofactor_det(m, rest, row + 1, zero);
    if (k % 2 == 0)
      sum += m(row, c) * minor;
    else
      sum -= m(row, c) * minor;
  }
  return sum;
}

}  // namespace

Polynomial determinant(const PolyMatrix& m, const Polynomial& ring_of) {
  if (!m.is_square()) throw DomainError("determinant of a non-square matrix");
  const Polynomial zero(ring_of.ring());
  if (m.rows() <= 4) {
    std::vector<std::size_t> cols(m.rows());
    for (std::size_t i = 0; i < cols.size(); ++i) cols[i] = i;
    return cofactor_det(m, cols, 0, zero);
  }
  return bareiss_determinant(m, zero, one_like(zero));
}

// ---------------------------------------------------------------------------
// Polynomial maps

PolyMap::PolyMap(std::vector<Polynomial> components) : comps_(std::move(components)) {
  if (comps_.empty()) throw DomainError("polynomial map needs at least one component");
  for (auto& c : comps_) {
    c.check_same_ring(comps_.front(), "PolyMap");
    if (c.ring() != comps_.front().ring()) c = c.with_variables(comps_.front().ring());
  }
}

PolyMap PolyMap::identity(VarList vars) { return identity(make_ring(std::move(vars))); }

PolyMap PolyMap::identity(std::shared_ptr<const VarList> vars) {
  std::vector<Polynomial> comps;
  for (std::size_t i = 0; i < vars->size(); ++i) comps.push_back(Polynomial::variable(vars, i));
  return PolyMap(std::move(comps));
}

int PolyMap::degree() const {
  int d = -1;
  for (const auto& c : comps_) d = std::max(d, c.total_degree());
  return d;
}

bool PolyMap::is_integral() const {
  return std::all_of(comps_.begin(), comps_.end(),
                     [](const Polynomial& p) { return p.is_integral(); });
}

RatVector PolyMap::evaluate(std::span<const Rational> point) const {
  RatVector out;
  out.reserve(size());
  for (const auto& c : comps_) out.push_back(c.evaluate(point));
  return out;
}

PolyMap compose(const PolyMap& outer, const PolyMap& inner, std::optional<unsigned> max_degree) {
  if (outer.nvars() != inner.size())
    throw DomainError("compose: inner map size does not match outer arity");
  std::vector<Polynomial> comps;
  comps.reserve(outer.size());
  for (const auto& c : outer.components())
    comps.push_back(substitute(c, inner.components(), max_degree));
  return PolyMap(std::move(comps));
}

PolyMap apply_matrix(const RatMatrix& linear, const PolyMap& f) {
  if (linear.cols() != f.size()) throw DomainError("apply_matrix: shape mismatch");
  std::vector<Polynomial> comps;
  for (std::size_t i = 0; i < linear.rows(); ++i) {
    Polynomial acc(f.ring());
    for (std::size_t j = 0; j < linear.cols(); ++j)
      if (linear(i, j) != 0) acc += f[j] * linear(i, j);
    comps.push_back(std::move(acc));
  }
  return PolyMap(std::move(comps));
}

PolyMap linear_map(const RatMatrix& m, std::shared_ptr<const VarList> vars) {
  if (m.cols() != vars->size()) throw DomainError("linear_map: shape mismatch");
  return apply_matrix(m, PolyMap::identity(std::move(vars)));
}

}  // namespace kwb

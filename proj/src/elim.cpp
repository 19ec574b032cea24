#include "kwb/elim.hpp"

#include <algorithm>
#include <numeric>

namespace kwb {

// ---------------------------------------------------------------------------
// Term orders

TermOrder TermOrder::lex(std::vector<std::size_t> permutation) {
  return {OrderKind::lex, std::move(permutation), 0};
}

TermOrder TermOrder::graded_lex(std::vector<std::size_t> permutation) {
  return {OrderKind::graded_lex, std::move(permutation), 0};
}

TermOrder TermOrder::block(std::vector<std::size_t> permutation, std::size_t split) {
  return {OrderKind::block, std::move(permutation), split};
}

void TermOrder::validate(std::size_t nvars) const {
  if (!permutation.empty()) {
    if (permutation.size() != nvars) throw DomainError("term order: permutation has wrong length");
    std::vector<bool> seen(nvars, false);
    for (auto v : permutation) {
      if (v >= nvars || seen[v]) throw DomainError("term order: invalid permutation");
      seen[v] = true;
    }
  }
  if (kind == OrderKind::block && split > nvars)
    throw DomainError("term order: block split index out of range");
}

namespace {

std::strong_ordering graded_lex_range(const Monomial& a, const Monomial& b,
                                      const std::vector<std::size_t>& perm, std::size_t lo,
                                      std::size_t hi) {
  unsigned da = 0, db = 0;
  for (std::size_t k = lo; k < hi; ++k) {
    const std::size_t v = perm.empty() ? k : perm[k];
    da += a[v];
    db += b[v];
  }
  if (da != db) return da <=> db;
  for (std::size_t k = lo; k < hi; ++k) {
    const std::size_t v = perm.empty() ? k : perm[k];
    if (a[v] != b[v]) return a[v] <=> b[v];
  }
  return std::strong_ordering::equal;
}

}  // namespace

std::strong_ordering TermOrder::compare(const Monomial& a, const Monomial& b) const {
  const std::size_t n = a.size();
  switch (kind) {
    case OrderKind::lex:
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t v = permutation.empty() ? k : permutation[k];
        if (a[v] != b[v]) return a[v] <=> b[v];
      }
      return std::strong_ordering::equal;
    case OrderKind::graded_lex:
      return graded_lex_range(a, b, permutation, 0, n);
    case OrderKind::block: {
      auto first = graded_lex_range(a, b, permutation, 0, split);
      if (first != 0) return first;
      return graded_lex_range(a, b, permutation, split, n);
    }
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Ideal

Ideal::Ideal(std::vector<Polynomial> generators) : gens_(std::move(generators)) {
  if (gens_.empty()) throw DomainError("ideal needs at least one generator");
  for (const auto& g : gens_) g.check_same_ring(gens_.front(), "Ideal");
}

bool Ideal::is_zero() const {
  return std::all_of(gens_.begin(), gens_.end(), [](const Polynomial& g) { return g.is_zero(); });
}

// ---------------------------------------------------------------------------
// Buchberger

namespace {

struct OrderLess {
  const TermOrder* order;
  bool operator()(const Monomial& a, const Monomial& b) const { return order->compare(a, b) < 0; }
};

using Terms = std::vector<std::pair<Monomial, Rational>>;  // descending in the order

/// Polynomial sorted by the term order, leading term first.
struct OrderedPoly {
  Terms terms;
  const Monomial& lm() const { return terms.front().first; }
  bool empty() const { return terms.empty(); }
};

OrderedPoly to_ordered(const Polynomial& p, const TermOrder& order) {
  OrderedPoly out;
  out.terms.assign(p.terms().begin(), p.terms().end());
  std::sort(out.terms.begin(), out.terms.end(), [&](const auto& x, const auto& y) {
    return order.compare(x.first, y.first) > 0;
  });
  return out;
}

Polynomial from_ordered(const OrderedPoly& p, const std::shared_ptr<const VarList>& ring) {
  Polynomial out(ring);
  for (const auto& [m, c] : p.terms) out.add_term(m, c);
  return out;
}

void make_monic(OrderedPoly& p) {
  if (p.empty()) return;
  const Rational lc = p.terms.front().second;
  if (lc == 1) return;
  for (auto& [m, c] : p.terms) c /= lc;
}

/// Full reduction of f by the nonzero polys in `basis` (all monic).
/// `skip` excludes one basis element (used during interreduction).
OrderedPoly reduce(const OrderedPoly& f, const std::vector<OrderedPoly>& basis,
                   const TermOrder& order, std::size_t skip = static_cast<std::size_t>(-1)) {
  std::map<Monomial, Rational, OrderLess> work(OrderLess{&order});
  for (const auto& t : f.terms) work.emplace(t.first, t.second);
  OrderedPoly rem;
  while (!work.empty()) {
    auto top = std::prev(work.end());
    const Monomial m = top->first;
    const Rational c = top->second;
    const OrderedPoly* divisor = nullptr;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (k == skip || basis[k].empty()) continue;
      if (basis[k].lm().divides(m)) {
        divisor = &basis[k];
        break;
      }
    }
    if (!divisor) {
      rem.terms.emplace_back(m, c);
      work.erase(top);
      continue;
    }
    const Monomial q = m / divisor->lm();
    work.erase(top);
    for (auto it = std::next(divisor->terms.begin()); it != divisor->terms.end(); ++it) {
      const Monomial prod = q * it->first;
      auto [slot, inserted] = work.try_emplace(prod, -c * it->second);
      if (!inserted) {
        slot->second -= c * it->second;
        if (slot->second == 0) work.erase(slot);
      }
    }
  }
  return rem;
}

OrderedPoly spoly(const OrderedPoly& f, const OrderedPoly& g, const TermOrder& order) {
  const Monomial l = lcm(f.lm(), g.lm());
  const Monomial uf = l / f.lm();
  const Monomial ug = l / g.lm();
  std::map<Monomial, Rational, OrderLess> work(OrderLess{&order});
  const Rational& cf = f.terms.front().second;
  const Rational& cg = g.terms.front().second;
  for (const auto& [m, c] : f.terms) work[uf * m] += c / cf;
  for (const auto& [m, c] : g.terms) work[ug * m] -= c / cg;
  OrderedPoly out;
  for (auto it = work.rbegin(); it != work.rend(); ++it)
    if (it->second != 0) out.terms.emplace_back(it->first, it->second);
  return out;
}

struct Pair {
  std::size_t i, j;
  Monomial lcm;
};

std::vector<OrderedPoly> buchberger(std::vector<OrderedPoly> input, const TermOrder& order,
                                    const GroebnerBudget& budget) {
  std::vector<OrderedPoly> basis;
  std::vector<Pair> pairs;
  std::vector<std::vector<bool>> pending;  // pending[i][j], i < j
  std::size_t pairs_done = 0;

  auto add = [&](OrderedPoly p) {
    make_monic(p);
    if (static_cast<unsigned>(p.lm().total_degree()) > budget.max_degree)
      throw BudgetExceeded("Groebner basis element exceeds degree cap " +
                           std::to_string(budget.max_degree));
    if (basis.size() >= budget.max_basis_size)
      throw BudgetExceeded("Groebner basis exceeds size cap " +
                           std::to_string(budget.max_basis_size));
    const std::size_t k = basis.size();
    basis.push_back(std::move(p));
    for (auto& row : pending) row.push_back(false);
    pending.emplace_back(k + 1, false);
    for (std::size_t i = 0; i < k; ++i) {
      if (basis[i].empty()) continue;
      pairs.push_back({i, k, lcm(basis[i].lm(), basis[k].lm())});
      pending[i][k] = true;
    }
  };

  for (auto& p : input) {
    OrderedPoly r = reduce(p, basis, order);
    if (!r.empty()) add(std::move(r));
  }

  auto is_pending = [&](std::size_t a, std::size_t b) {
    return a < b ? pending[a][b] : pending[b][a];
  };

  while (!pairs.empty()) {
    // normal strategy: smallest lcm first
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
      return order.compare(a.lcm, b.lcm) < 0;
    });
    const Pair pr = *best;
    pairs.erase(best);
    pending[pr.i][pr.j] = false;
    if (++pairs_done > budget.max_pairs)
      throw BudgetExceeded("Groebner computation exceeds pair budget");

    const OrderedPoly& f = basis[pr.i];
    const OrderedPoly& g = basis[pr.j];
    if (coprime(f.lm(), g.lm())) continue;  // first criterion
    bool chain = false;                     // second criterion
    for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == pr.i || k == pr.j || basis[k].empty()) continue;
      if (basis[k].lm().divides(pr.lcm) && !is_pending(pr.i, k) && !is_pending(pr.j, k))
        chain = true;
    }
    if (chain) continue;
    OrderedPoly r = reduce(spoly(f, g, order), basis, order);
    if (!r.empty()) add(std::move(r));
  }

  // Minimalize: drop elements whose leading monomial is divisible by another's.
  std::vector<OrderedPoly> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      if (basis[j].lm().divides(basis[i].lm()) &&
          (basis[j].lm() != basis[i].lm() || j < i))
        redundant = true;
    }
    if (!redundant) minimal.push_back(basis[i]);
  }
  // Interreduce.
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    OrderedPoly tail;
    tail.terms.assign(minimal[i].terms.begin() + 1, minimal[i].terms.end());
    OrderedPoly r = reduce(tail, minimal, order, i);
    r.terms.insert(r.terms.begin(), minimal[i].terms.front());
    minimal[i] = std::move(r);
  }
  std::sort(minimal.begin(), minimal.end(), [&](const OrderedPoly& a, const OrderedPoly& b) {
    return order.compare(a.lm(), b.lm()) < 0;
  });
  return minimal;
}

std::vector<OrderedPoly> ordered_generators(const Ideal& ideal, const TermOrder& order) {
  std::vector<OrderedPoly> out;
  for (const auto& g : ideal.generators())
    if (!g.is_zero()) out.push_back(to_ordered(g, order));
  return out;
}

}  // namespace

std::pair<Monomial, Rational> leading_term(const Polynomial& p, const TermOrder& order) {
  if (p.is_zero()) throw DomainError("leading term of the zero polynomial");
  const auto best = std::max_element(
      p.terms().begin(), p.terms().end(),
      [&](const auto& a, const auto& b) { return order.compare(a.first, b.first) < 0; });
  return {best->first, best->second};
}

Ideal groebner(const Ideal& ideal, const TermOrder& order, const GroebnerBudget& budget) {
  order.validate(ideal.ring()->size());
  auto basis = buchberger(ordered_generators(ideal, order), order, budget);
  std::vector<Polynomial> out;
  for (const auto& p : basis) out.push_back(from_ordered(p, ideal.ring()));
  if (out.empty()) out.emplace_back(ideal.ring());
  return Ideal(std::move(out));
}

Polynomial normal_form(const Polynomial& f, const Ideal& basis, const TermOrder& order) {
  f.check_same_ring(basis.generators().front(), "normal_form");
  std::vector<OrderedPoly> gens = ordered_generators(basis, order);
  for (auto& g : gens) make_monic(g);
  return from_ordered(reduce(to_ordered(f, order), gens, order), f.ring());
}

bool reduces_to_zero(const Polynomial& f, const Ideal& groebner_basis, const TermOrder& order) {
  return normal_form(f, groebner_basis, order).is_zero();
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const TermOrder& order) {
  f.check_same_ring(g, "s_polynomial");
  if (f.is_zero() || g.is_zero()) throw DomainError("S-polynomial of a zero polynomial");
  return from_ordered(spoly(to_ordered(f, order), to_ordered(g, order), order), f.ring());
}

Ideal eliminate(const Ideal& ideal, const std::vector<std::string>& keep,
                const GroebnerBudget& budget) {
  const VarList& vars = *ideal.ring();
  std::vector<bool> kept(vars.size(), false);
  for (const auto& name : keep) {
    auto it = std::find(vars.begin(), vars.end(), name);
    if (it == vars.end()) throw DomainError("eliminate: unknown variable '" + name + "'");
    kept[static_cast<std::size_t>(it - vars.begin())] = true;
  }
  std::vector<std::size_t> perm;
  for (std::size_t v = 0; v < vars.size(); ++v)
    if (!kept[v]) perm.push_back(v);
  const std::size_t split = perm.size();
  for (std::size_t v = 0; v < vars.size(); ++v)
    if (kept[v]) perm.push_back(v);

  const Ideal gb = groebner(ideal, TermOrder::block(perm, split), budget);
  std::vector<Polynomial> out;
  for (const auto& g : gb.generators()) {
    if (g.is_zero()) continue;
    bool only_kept = true;
    for (std::size_t v = 0; v < vars.size() && only_kept; ++v)
      if (!kept[v] && g.involves(v)) only_kept = false;
    if (only_kept) out.push_back(g);
  }
  if (out.empty()) out.emplace_back(ideal.ring());
  return Ideal(std::move(out));
}

// ---------------------------------------------------------------------------
// Minimal polynomials and fibers

std::shared_ptr<const VarList> coordinate_ring(std::size_t n) {
  VarList vars;
  for (std::size_t j = 1; j <= n; ++j) vars.push_back("Y" + std::to_string(j));
  vars.push_back("T");
  return make_ring(std::move(vars));
}

Polynomial minimal_poly_of_coordinate(const PolyMap& f, std::size_t coordinate,
                                      const GroebnerBudget& budget) {
  if (!f.is_square()) throw DomainError("minimal_poly_of_coordinate: map is not square");
  const std::size_t n = f.size();
  if (coordinate >= n) throw DomainError("minimal_poly_of_coordinate: coordinate out of range");

  // Graph ring: X_1..X_n, Y_1..Y_n. Internal names cannot collide with user names.
  VarList graph_vars;
  for (std::size_t j = 0; j < n; ++j) graph_vars.push_back("$X" + std::to_string(j + 1));
  for (std::size_t j = 0; j < n; ++j) graph_vars.push_back("$Y" + std::to_string(j + 1));
  auto graph = make_ring(graph_vars);

  std::vector<Polynomial> embed;
  for (std::size_t j = 0; j < n; ++j) embed.push_back(Polynomial::variable(graph, j));
  std::vector<Polynomial> gens;
  for (std::size_t j = 0; j < n; ++j)
    gens.push_back(substitute(f[j], embed) - Polynomial::variable(graph, n + j));

  std::vector<std::string> keep{graph_vars[coordinate]};
  for (std::size_t j = 0; j < n; ++j) keep.push_back(graph_vars[n + j]);
  const Ideal elim = eliminate(Ideal(gens), keep, budget);
  if (elim.is_zero())
    throw DomainError("minimal_poly_of_coordinate: elimination ideal is zero");
  if (elim.generators().size() != 1)
    throw DomainError("minimal_poly_of_coordinate: elimination ideal is not principal "
                      "(map is not dominant)");
  const Polynomial& g = elim.generators().front();
  if (!g.involves(coordinate))
    throw DomainError("minimal_poly_of_coordinate: map is not dominant");

  // Relabel into (Y1..Yn, T).
  auto target = coordinate_ring(n);
  std::vector<Polynomial> relabel(2 * n, Polynomial(target));
  relabel[coordinate] = Polynomial::variable(target, n);
  for (std::size_t j = 0; j < n; ++j) relabel[n + j] = Polynomial::variable(target, j);
  Polynomial h = normalize(substitute(g, relabel));
  const Polynomial lead = coefficients_in(h, n).back();
  if (lead.lex_leading_term().second < 0) h = -h;
  return h;
}

unsigned generic_fiber_degree(const PolyMap& f, std::span<const Rational> sample,
                              const GroebnerBudget& budget) {
  if (sample.size() != f.size()) throw DomainError("generic_fiber_degree: sample has wrong size");
  std::vector<Polynomial> gens;
  for (std::size_t j = 0; j < f.size(); ++j)
    gens.push_back(f[j] - Polynomial::constant(f[j], sample[j]));
  const TermOrder order = TermOrder::lex();
  const Ideal gb = groebner(Ideal(gens), order, budget);
  const std::size_t n = f.nvars();

  std::vector<Monomial> leads;
  for (const auto& g : gb.generators()) {
    if (g.is_zero()) continue;
    leads.push_back(leading_term(g, order).first);
  }
  for (const auto& m : leads)
    if (m.is_one()) return 0;  // empty fiber

  std::vector<std::uint32_t> bound(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    for (const auto& m : leads) {
      bool pure = m[v] > 0;
      for (std::size_t w = 0; w < n && pure; ++w)
        if (w != v && m[w] != 0) pure = false;
      if (pure && (bound[v] == 0 || m[v] < bound[v])) bound[v] = m[v];
    }
    if (bound[v] == 0)
      throw DomainError("generic_fiber_degree: fiber ideal is not zero-dimensional");
  }

  // Count standard monomials inside the box given by the pure powers.
  unsigned count = 0;
  Monomial m(n);
  while (true) {
    bool standard = true;
    for (const auto& l : leads)
      if (l.divides(m)) {
        standard = false;
        break;
      }
    if (standard) ++count;
    std::size_t v = 0;
    while (v < n && ++m[v] == bound[v]) m[v++] = 0;
    if (v == n) break;
  }
  return count;
}

// ---------------------------------------------------------------------------
// Resultants

Polynomial resultant(const Polynomial& p, const Polynomial& q, std::size_t var,
                     unsigned formal_degree_p, unsigned formal_degree_q) {
  p.check_same_ring(q, "resultant");
  if (var >= p.nvars()) throw DomainError("resultant: variable out of range");
  if (formal_degree_p == 0 && formal_degree_q == 0)
    throw DomainError("resultant: both formal degrees are zero");
  if (p.degree_in(var) > formal_degree_p || q.degree_in(var) > formal_degree_q)
    throw DomainError("resultant: actual degree exceeds formal degree");

  auto cp = coefficients_in(p, var);
  auto cq = coefficients_in(q, var);
  cp.resize(formal_degree_p + 1, Polynomial(p.ring()));
  cq.resize(formal_degree_q + 1, Polynomial(p.ring()));
  const std::size_t dp = formal_degree_p, dq = formal_degree_q, size = dp + dq;
  PolyMatrix s(size, size, Polynomial(p.ring()));
  for (std::size_t r = 0; r < dq; ++r)
    for (std::size_t k = 0; k <= dp; ++k) s(r, r + k) = cp[dp - k];
  for (std::size_t r = 0; r < dp; ++r)
    for (std::size_t k = 0; k <= dq; ++k) s(dq + r, r + k) = cq[dq - k];
  if (size <= 4) return determinant(s, p);
  return bareiss_determinant(s, Polynomial(p.ring()), Polynomial::constant(p, 1));
}

Polynomial resultant(const Polynomial& p, const Polynomial& q, std::size_t var) {
  return resultant(p, q, var, p.degree_in(var), q.degree_in(var));
}

Polynomial discriminant(const Polynomial& p, std::size_t var, unsigned formal_degree) {
  if (formal_degree == 0) throw DomainError("discriminant: formal degree must be at least 1");
  if (p.degree_in(var) > formal_degree)
    throw DomainError("discriminant: actual degree exceeds formal degree");
  if (formal_degree == 1) return Polynomial::constant(p, 1);
  auto cp = coefficients_in(p, var);
  cp.resize(formal_degree + 1, Polynomial(p.ring()));
  const Polynomial& lead = cp[formal_degree];
  if (lead.is_zero()) throw DomainError("discriminant: leading coefficient vanishes identically");
  const unsigned d = formal_degree;
  Polynomial res = resultant(p, partial_derivative(p, var), var, d, d - 1);
  if ((d * (d - 1) / 2) % 2 == 1) res = -res;
  auto q = divide_exact(res, lead);
  if (!q) throw InternalError("discriminant: resultant not divisible by leading coefficient");
  return *q;
}

}  // namespace kwb

#include "kwb/fibers.hpp"

#include <algorithm>
#include <random>

#include "kwb/keller.hpp"

namespace kwb {

std::shared_ptr<const VarList> target_ring(std::size_t n) { return standard_ring(n, "Y"); }

std::shared_ptr<const VarList> line_ring(std::size_t n) {
  VarList vars;
  for (std::size_t i = 1; i <= n; ++i) vars.push_back("U" + std::to_string(i));
  for (std::size_t i = 1; i <= n; ++i) vars.push_back("V" + std::to_string(i));
  return make_ring(std::move(vars));
}

Line::Line(RatVector u, RatVector v) : u_(std::move(u)), v_(std::move(v)) {
  if (u_.size() != v_.size()) throw DomainError("line: u and v differ in dimension");
  if (std::all_of(v_.begin(), v_.end(), [](const Rational& c) { return c == 0; }))
    throw DomainError("line: direction v is zero");
}

bool BifurcationData::off_cone(std::span<const Rational> v) const {
  return !cone_form || cone_form->evaluate(v) != 0;
}

namespace {

std::optional<unsigned> sample_fiber_degree(const PolyMap& f, const Polynomial& h,
                                            const BifurcationOptions& options) {
  std::mt19937 rng(options.seed);
  std::uniform_int_distribution<int> coord(-7, 7);
  for (int attempt = 0; attempt < 16; ++attempt) {
    RatVector y(f.size());
    for (auto& c : y) c = coord(rng);
    if (h.evaluate(y) == 0) continue;
    try {
      return generic_fiber_degree(f, y, options.budget);
    } catch (const DomainError&) {
      // fiber of positive dimension at this sample: draw another
    } catch (const BudgetExceeded&) {
      return std::nullopt;
    }
  }
  return std::nullopt;
}

// p(U + tV) over (U1..Un, V1..Vn, t); returns the polynomial and index of t.
Polynomial along_line(const Polynomial& p, const std::shared_ptr<const VarList>& ring,
                      std::size_t n) {
  std::vector<Polynomial> images;
  const Polynomial t = Polynomial::variable(ring, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    images.push_back(Polynomial::variable(ring, i) + Polynomial::variable(ring, n + i) * t);
  return substitute(p, images);
}

std::shared_ptr<const VarList> line_ring_with_t(std::size_t n) {
  VarList vars = *line_ring(n);
  vars.push_back("t");
  return make_ring(std::move(vars));
}

}  // namespace

BifurcationData bifurcation_data(const PolyMap& f, const BifurcationOptions& options) {
  if (!f.is_square()) throw DomainError("bifurcation_data: map is not square");
  if (jacobian_det(f).is_zero()) throw DomainError("bifurcation_data: map is not dominant");
  const std::size_t n = f.size();
  const auto yring = target_ring(n);

  BifurcationData out;
  Polynomial product = Polynomial::constant(Polynomial(yring), 1);
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial h = minimal_poly_of_coordinate(f, i, options.budget);
    const auto coeffs = coefficients_in(h, n);  // T is the last variable
    Polynomial a = coeffs.back().with_variables(yring);
    product *= a;
    out.h.push_back(std::move(h));
    out.a.push_back(std::move(a));
  }
  if (product.is_constant()) {
    out.H = Polynomial::constant(Polynomial(yring), 1);
  } else {
    out.H = squarefree_part(product);
    out.cone_form = leading_form(out.H);
  }
  if (options.fiber_degree) out.fiber_degree = sample_fiber_degree(f, out.H, options);
  return out;
}

Polynomial poly_D(const Polynomial& h) {
  if (h.is_constant()) throw DomainError("poly_D: H is constant");
  const std::size_t n = h.nvars();
  const auto uvt = line_ring_with_t(n);
  const unsigned d = static_cast<unsigned>(h.total_degree());
  const Polynomial on_line = along_line(h, uvt, n);
  const Polynomial cone = coefficients_in(on_line, 2 * n)[d];  // cone_form(V)
  Polynomial out = cone;
  if (d > 1) out *= discriminant(on_line, 2 * n, d);
  return out.with_variables(line_ring(n));
}

Polynomial poly_R(std::span<const ComponentData> components, std::size_t n) {
  const auto uvt = line_ring_with_t(n);
  Polynomial out = Polynomial::constant(Polynomial(uvt), 1);
  for (const auto& c : components) {
    if (c.h_w.nvars() != n) throw DomainError("poly_R: component over the wrong ring");
    const int dh = c.h_w.total_degree();
    const Polynomial hl = along_line(c.h_w, uvt, n);
    for (const auto& g : c.g_list) {
      const int dg = g.total_degree();
      if (dh <= 0 && dg <= 0) throw DomainError("poly_R: h_W and g_VW both constant");
      if (g.nvars() != n) throw DomainError("poly_R: g_VW over the wrong ring");
      out *= resultant(hl, along_line(g, uvt, n), 2 * n, static_cast<unsigned>(std::max(dh, 0)),
                       static_cast<unsigned>(std::max(dg, 0)));
    }
  }
  return out.with_variables(line_ring(n));
}

Polynomial sigma(const BifurcationData& data, std::span<const ComponentData> components) {
  const std::size_t n = data.H.nvars();
  if (data.empty()) return Polynomial::constant(Polynomial(line_ring(n)), 1);
  for (const auto& c : components) {
    if (c.h_w.nvars() != n || !divide_exact(data.H, c.h_w.with_variables(data.H.ring())))
      throw DomainError("sigma: component polynomial does not divide H");
  }
  return poly_D(data.H) * poly_R(components, n);
}

Polynomial sigma(const PolyMap& f, std::span<const ComponentData> components) {
  BifurcationOptions options;
  options.fiber_degree = false;
  return sigma(bifurcation_data(f, options), components);
}

C2Result assert_c2(const BifurcationData& data, std::span<const Rational> u,
                   std::span<const Rational> v, std::span<const ComponentData> components) {
  const std::size_t n = data.H.nvars();
  if (u.size() != n || v.size() != n) throw DomainError("assert_c2: vectors have wrong size");
  const Polynomial s = sigma(data, components);
  C2Result out{};
  if (data.H.evaluate(u) == 0) {
    out.in_v = C2Status::precondition_violated;
  } else {
    std::map<std::size_t, Rational> at_u;
    for (std::size_t i = 0; i < n; ++i) at_u[i] = u[i];
    out.in_v = partial_evaluate(s, at_u).is_zero() ? C2Status::fails : C2Status::holds;
  }
  if (!data.off_cone(v)) {
    out.in_u = C2Status::precondition_violated;
  } else {
    std::map<std::size_t, Rational> at_v;
    for (std::size_t i = 0; i < n; ++i) at_v[n + i] = v[i];
    out.in_u = partial_evaluate(s, at_v).is_zero() ? C2Status::fails : C2Status::holds;
  }
  return out;
}

C2Result assert_c2(const PolyMap& f, std::span<const Rational> u, std::span<const Rational> v) {
  BifurcationOptions options;
  options.fiber_degree = false;
  return assert_c2(bifurcation_data(f, options), u, v);
}

std::string to_string(C2Status s) {
  switch (s) {
    case C2Status::holds: return "holds";
    case C2Status::fails: return "fails";
    case C2Status::precondition_violated: return "precondition violated";
  }
  return "?";
}

Rational hurwitz_genus(long d, std::span<const long> local_degrees) {
  if (d < 1) throw DomainError("hurwitz_genus: d must be at least 1");
  if (local_degrees.empty()) throw DomainError("hurwitz_genus: no branches at infinity");
  long ramification = 0;
  for (long e : local_degrees) {
    if (e < 1 || e > d) throw DomainError("hurwitz_genus: local degree outside [1, d]");
    ramification += e - 1;
  }
  Rational g(2 - 2 * d + ramification, 2);
  g.canonicalize();
  return g;
}

Feasibility branch_data_feasible(long d, std::span<const long> local_degrees, const Rational& g) {
  const Rational genus = hurwitz_genus(d, local_degrees);
  const std::size_t branches = local_degrees.size();
  if (branches == 1 && (d != 1 || g != 0)) return {false, "n_F=1 forces d=1, g=0"};
  if (branches == 2 && g != 0) return {false, "n_F=2 forces g=0"};
  if (!is_integer(genus)) return {false, "Hurwitz genus " + to_string(genus) + " is not an integer"};
  if (genus < 0) return {false, "Hurwitz genus " + to_string(genus) + " is negative"};
  if (genus != g)
    return {false, "supplied genus " + to_string(g) + " disagrees with Hurwitz genus " +
                       to_string(genus)};
  return {};
}

}  // namespace kwb

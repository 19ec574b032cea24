#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kwb/elim.hpp"
#include "kwb/polynomial.hpp"

namespace kwb {

/// Ring Y1..Yn of target coordinates.
std::shared_ptr<const VarList> target_ring(std::size_t n);
/// Ring U1..Un, V1..Vn of line parameters: the line through u with direction v.
std::shared_ptr<const VarList> line_ring(std::size_t n);

/// The line {u + t v : t}; v != 0.
class Line {
 public:
  Line(RatVector u, RatVector v);

  const RatVector& u() const noexcept { return u_; }
  const RatVector& v() const noexcept { return v_; }
  std::size_t dimension() const noexcept { return u_.size(); }

 private:
  RatVector u_;
  RatVector v_;
};

struct BifurcationData {
  std::vector<Polynomial> h;  // h_i over (Y1..Yn, T)
  std::vector<Polynomial> a;  // coefficient of T^(deg_T h_i), over Y1..Yn
  Polynomial H;               // squarefree part of prod a_i, or 1
  std::optional<Polynomial> cone_form;  // leading form of H; absent when H = 1
  std::optional<unsigned> fiber_degree;  // generic fiber cardinality

  /// True when H is constant: no bifurcation values.
  bool empty() const { return H.is_constant(); }
  /// cone_form(v) != 0; vacuously true when the cone is empty.
  bool off_cone(std::span<const Rational> v) const;
};

struct BifurcationOptions {
  GroebnerBudget budget;
  bool fiber_degree = true;
  unsigned seed = 1;  // sample points for the fiber degree
};

/// Minimal polynomials of the coordinates over Q[F], their leading
/// coefficients and the reduced hypersurface H they cut out. Throws
/// DomainError for a non-dominant map, BudgetExceeded when elimination does.
BifurcationData bifurcation_data(const PolyMap& f, const BifurcationOptions& options = {});

/// An irreducible factor h_W of H and the polynomials g_VW cutting out the
/// bad points on {h_W = 0}. Both over Y1..Yn; supplied by the caller.
struct ComponentData {
  Polynomial h_w;
  std::vector<Polynomial> g_list;
};

/// cone_form(V) * Disc_t(H(U + tV)) at formal t-degree deg H, over line_ring.
/// Reduces to cone_form(V) when deg H = 1.
Polynomial poly_D(const Polynomial& h);

/// prod_W prod_VW Res_t(h_W(U + tV), g_VW(U + tV)) at formal degrees; 1 for
/// an empty list. `n` is the dimension of the target space.
Polynomial poly_R(std::span<const ComponentData> components, std::size_t n);

/// D * R, or 1 when H = 1. Each h_W must divide H.
Polynomial sigma(const BifurcationData& data, std::span<const ComponentData> components = {});
Polynomial sigma(const PolyMap& f, std::span<const ComponentData> components = {});

enum class C2Status { holds, fails, precondition_violated };

/// Whether sigma(u, V) and sigma(U, v) are nonzero polynomials. The first
/// check requires H(u) != 0, the second cone_form(v) != 0.
struct C2Result {
  C2Status in_v;  // sigma(u, V) != 0
  C2Status in_u;  // sigma(U, v) != 0
};
C2Result assert_c2(const BifurcationData& data, std::span<const Rational> u,
                   std::span<const Rational> v, std::span<const ComponentData> components = {});
C2Result assert_c2(const PolyMap& f, std::span<const Rational> u, std::span<const Rational> v);

std::string to_string(C2Status s);

/// g from 2 - 2g = 2d - sum(deg_a - 1), for a degree-d cover of the
/// projective line with the given local degrees over infinity. May come out
/// negative or non-integral. Throws DomainError for d < 1, an empty list or a
/// local degree outside [1, d].
Rational hurwitz_genus(long d, std::span<const long> local_degrees);

struct Feasibility {
  bool feasible = true;
  std::string reason;  // empty when feasible
};

/// Branch-data consistency for a generic fiber curve with n_F = number of
/// local degrees: n_F = 1 forces d = 1 and g = 0, n_F = 2 forces g = 0, and
/// the genus from the Hurwitz relation must be a nonnegative integer equal to g.
Feasibility branch_data_feasible(long d, std::span<const long> local_degrees, const Rational& g);

}  // namespace kwb

#include <set>

#include "doctest.h"
#include "kwb/diophantine.hpp"
#include "kwb/keller.hpp"
#include "kwb/transforms.hpp"
#include "support.hpp"

using namespace kwb;
using kwb::test::M;
using kwb::test::P;
using kwb::test::Q;

namespace {

const VarList xy{"x", "y"};
const VarList xyz{"x", "y", "z"};

// Every grid point of the box, tested one by one.
std::vector<IntVector> naive_grid(const EquationSystem& sys, long radius) {
  const std::size_t n = sys.nvars();
  std::vector<IntVector> out;
  IntVector p(n, BigInt(-radius));
  for (;;) {
    if (sys.satisfied_by(p)) out.push_back(p);
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (p[k] < radius) {
        p[k] += 1;
        break;
      }
      p[k] = -radius;
      if (k == 0) return out;
    }
    if (n == 0) return out;
  }
}

SearchReport search(const EquationSystem& sys, long radius, unsigned threads = 1) {
  SearchOptions o;
  o.radius = radius;
  o.threads = threads;
  return search_box(sys, o);
}

EquationSystem random_system(std::mt19937& rng, std::size_t n) {
  VarList vars;
  for (std::size_t i = 1; i <= n; ++i) vars.push_back("x" + std::to_string(i));
  auto ring = make_ring(vars);
  std::vector<Polynomial> eqs;
  const std::size_t count = 1 + rng() % n;
  for (std::size_t k = 0; k < count; ++k) {
    Polynomial e = test::random_poly(rng, ring, 4, 4);
    // plant a zero at a random small point so the system is rarely empty
    RatVector at(n);
    for (auto& c : at) c = static_cast<long>(rng() % 5) - 2;
    e -= Polynomial::constant(e, e.evaluate(at));
    if (e.is_zero()) e = Polynomial::variable(ring, 0);
    eqs.push_back(e);
  }
  return EquationSystem(std::move(eqs));
}

}  // namespace

TEST_CASE("curve systems: worked examples") {
  CHECK(curve_CF(PolyMap::identity(xy)).equations() == std::vector{P("x - y", xy)});
  CHECK(curve_CF(M({"x+y^3", "y"}, xy)).equations() == std::vector{P("x + y^3 - y", xy)});
  CHECK(curve_CF(PolyMap::identity(xyz)).equations() ==
        std::vector{P("x - y", xyz), P("y - z", xyz)});
  CHECK_THROWS_AS(curve_CF(PolyMap::identity(VarList{"x"})), DomainError);

  const PolyMap f = M({"x + y^3", "y + z", "z"}, xyz);
  CHECK(curve_CFm(f, 0).equations() == curve_CF(f).equations());
  CHECK(curve_CFm(f, 2).equations() == std::vector{f[0], f[1]});
  CHECK(curve_CFm(PolyMap::identity(xyz), 1).equations() ==
        std::vector{P("x", xyz), P("y - z", xyz)});
  CHECK_THROWS_AS(curve_CFm(f, 3), DomainError);
}

TEST_CASE("line_preimage: worked examples") {
  CHECK(line_preimage(PolyMap::identity(xy), Line(Q({0, 0}), Q({1, 1}))).equations() ==
        std::vector{P("y - x", xy)});
  CHECK(line_preimage(M({"x+y^3", "y"}, xy), Line(Q({0, 0}), Q({0, 1}))).equations() ==
        std::vector{P("x + y^3", xy)});
  CHECK_THROWS_AS(Line(Q({0, 0}), Q({0, 0})), DomainError);

  // the diagonal line through 0 cuts out C_F
  const PolyMap f = M({"x + (y - z)^3", "y + z^2", "z"}, xyz);
  const auto via_line = search(line_preimage(f, Line(Q({0, 0, 0}), Q({1, 1, 1}))), 4);
  CHECK(via_line.points == search(curve_CF(f), 4).points);
}

TEST_CASE("line_preimage: points map onto the line") {
  const PolyMap f = M({"x + y^2", "y"}, xy);
  const Line l(Q({1, 2}), Q({3, -1}));
  for (const auto& p : search(line_preimage(f, l), 6).points) {
    const RatVector y = f.evaluate(RatVector(p.begin(), p.end()));
    // (y - u) parallel to v
    CHECK((y[0] - 1) * -1 == (y[1] - 2) * 3);
  }
}

TEST_CASE("sum_of_squares: worked examples") {
  CHECK(sum_of_squares(PolyMap::identity(xy)) == P("x^2", xy));
  CHECK(sum_of_squares(M({"x+y^3", "y"}, xy)) == P("(x+y^3)^2", xy));
}

TEST_CASE("search_box: worked examples") {
  const auto diag = search(curve_CF(PolyMap::identity(xy)), 3);
  CHECK(diag.exhausted);
  REQUIRE(diag.points.size() == 7);
  for (long k = -3; k <= 3; ++k) CHECK(diag.points[static_cast<std::size_t>(k + 3)] == IntVector{k, k});

  const auto tri = search(curve_CF(M({"x+y^3", "y"}, xy)), 10);
  CHECK(tri.exhausted);
  CHECK(tri.points == std::vector<IntVector>{{-6, 2}, {0, -1}, {0, 0}, {0, 1}, {6, -2}});
  CHECK(tri.points == naive_grid(curve_CF(M({"x+y^3", "y"}, xy)), 10));

  const EquationSystem shifted({P("x + y - 1", xy)});
  CHECK(search(shifted, 0).points.empty());
  CHECK(search(curve_CF(PolyMap::identity(xy)), 0).points == std::vector<IntVector>{{0, 0}});
}

TEST_CASE("search_box: naive grid oracle on random systems") {
  auto rng = test::seeded(61);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const long radius = static_cast<long>(rng() % 9);
    const EquationSystem sys = random_system(rng, n);
    CAPTURE(trial);
    CHECK(search(sys, radius).points == naive_grid(sys, radius));
  }
}

TEST_CASE("search_box: rational coefficients are cleared") {
  const EquationSystem sys({P("1/2*x - 1/3*y", xy)});
  CHECK(search(sys, 6).points == naive_grid(sys, 6));
  CHECK(search(sys, 6).points.size() == 5);
}

TEST_CASE("search_box: thread partition does not change the result") {
  auto rng = test::seeded(62);
  for (int trial = 0; trial < 10; ++trial) {
    const EquationSystem sys = random_system(rng, 3);
    const auto one = search(sys, 6, 1);
    const auto four = search(sys, 6, 4);
    CHECK(one.points == four.points);
    CHECK(one.nodes_visited == four.nodes_visited);
  }
}

TEST_CASE("search_box: monotone in the radius") {
  auto rng = test::seeded(63);
  for (int trial = 0; trial < 20; ++trial) {
    const EquationSystem sys = random_system(rng, 2);
    const auto small = search(sys, 3).points;
    const auto large = search(sys, 7).points;
    CHECK(std::includes(large.begin(), large.end(), small.begin(), small.end()));
  }
}

TEST_CASE("search_box: budget exhaustion is reported") {
  SearchOptions o;
  o.radius = 20;
  o.node_budget = 50;
  const auto r = search_box(EquationSystem({P("x*y*z - 7", xyz)}), o);
  CHECK_FALSE(r.exhausted);
  CHECK(r.nodes_visited == 50);
}

TEST_CASE("search_box: pruning on structured systems") {
  const long radius = 10;
  const auto tri = search(curve_CF(M({"x+y^3", "y"}, xy)), radius);
  CHECK(tri.nodes_visited * 5 <= 21 * 21);
  const PolyMap f3 = CubicLinearForm(IntMatrix{{0, 0, 0}, {1, 0, 0}, {2, -1, 0}}).to_map();
  const auto r3 = search(curve_CF(f3), radius);
  CHECK(r3.nodes_visited * 5 <= 21 * 21 * 21);
  CHECK(r3.points == naive_grid(curve_CF(f3), radius));
}

TEST_CASE("report serialization") {
  const auto tri = search(curve_CF(M({"x+y^3", "y"}, xy)), 1);
  const std::string text = write_report(tri);
  CHECK(text == "0 -1\n0 0\n0 1\nexhausted: yes\nnodes: " + std::to_string(tri.nodes_visited) +
                    "\n");
  const SearchReport back = parse_report(text);
  CHECK(back.points == tri.points);
  CHECK(back.exhausted);
  CHECK(back.nodes_visited == tri.nodes_visited);
  CHECK_THROWS_AS(parse_report("0 1\n"), ParseError);
}

TEST_CASE("nonzero_point_exists: worked examples") {
  SearchOptions o;
  o.radius = 1;
  const auto id = nonzero_point_exists(curve_CF(PolyMap::identity(xy)), o);
  CHECK(id.kind == PointVerdict::Kind::found);
  CHECK(*id.point == IntVector{1, 1});

  o.radius = 100;
  const auto none = nonzero_point_exists(EquationSystem({P("x^2 + y^2 + 1", xy)}), o);
  CHECK(none.kind == PointVerdict::Kind::none_in_box);
  CHECK(none.describe() == "no nonzero integer point with max-norm ≤ 100");

  o.radius = 1;
  const auto tri = nonzero_point_exists(curve_CF(M({"x+y^3", "y"}, xy)), o);
  CHECK(tri.kind == PointVerdict::Kind::found);
  CHECK(*tri.point == IntVector{0, 1});
  CHECK(tri.describe() == "found: 0 1");

  o.radius = 30;
  o.node_budget = 5;
  CHECK(nonzero_point_exists(EquationSystem({P("x*y - 1000003", xy)}), o).kind ==
        PointVerdict::Kind::budget_exceeded);
}

TEST_CASE("sum of squares has the same integer zeros as F_1, ..., F_{n-1}") {
  auto rng = test::seeded(64);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + trial % 2;
    const PolyMap f = CubicLinearForm(test::random_permuted(rng, test::random_strict_lower(rng, n, 2)))
                          .to_map();
    std::vector<Polynomial> first(f.components().begin(), f.components().end() - 1);
    const auto squares = search(EquationSystem({sum_of_squares(f)}), 4).points;
    CHECK(squares == search(EquationSystem(first), 4).points);
    CHECK(squares == naive_grid(EquationSystem(first), 4));
  }
}

TEST_CASE("scaling: solutions of the scaled line preimage are the rZ^n solutions divided by r") {
  const PolyMap g = M({"x + (x - 2*y)^3", "y + (x - 2*y)^3"}, xy);
  const Line l(Q({0, 0}), Q({1, 1}));
  const long radius = 12;
  const auto s = search(line_preimage(g, l), radius).points;
  const BigInt clearing = choose_clearing_scale(s);
  for (long r : {2L, 3L, clearing.get_si()}) {
    const auto scaled = search(line_preimage(scale_conjugate(g, r), l), radius / r).points;
    std::vector<IntVector> expected;
    for (const auto& p : s) {
      if (p[0] % r != 0 || p[1] % r != 0) continue;
      const IntVector q{p[0] / r, p[1] / r};
      if (abs(q[0]) <= radius / r && abs(q[1]) <= radius / r) expected.push_back(q);
    }
    CHECK(scaled == expected);
  }
  // with the clearing scale only the origin survives
  const auto cleared =
      search(line_preimage(scale_conjugate(g, clearing.get_si()), l), radius).points;
  for (const auto& p : cleared)
    if (abs(p[0]) <= radius / clearing && abs(p[1]) <= radius / clearing)
      CHECK(p == IntVector{0, 0});
}

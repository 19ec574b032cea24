#include <algorithm>
#include <set>

#include "doctest.h"
#include "kwb/elim.hpp"
#include "support.hpp"

using namespace kwb;
using kwb::test::M;
using kwb::test::P;

namespace {

const VarList xy{"x", "y"};

std::set<std::string> as_strings(const Ideal& ideal) {
  std::set<std::string> out;
  for (const auto& g : ideal.generators()) out.insert(print_polynomial(g));
  return out;
}

bool contains(const Ideal& ideal, const Polynomial& p) {
  return std::any_of(ideal.generators().begin(), ideal.generators().end(),
                     [&](const Polynomial& g) { return equal_up_to_scalar(g, p); });
}

/// h(F(X), X_i) evaluated as a polynomial in X.
Polynomial defining_identity(const Polynomial& h, const PolyMap& f, std::size_t i) {
  std::vector<Polynomial> images = f.components();
  images.push_back(Polynomial::variable(f.ring(), i));
  return substitute(h, images);
}

void check_groebner_correct(const Ideal& ideal, const TermOrder& order) {
  const Ideal gb = groebner(ideal, order);
  for (const auto& g : ideal.generators()) CHECK(reduces_to_zero(g, gb, order));
  const auto& gens = gb.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      CHECK(reduces_to_zero(s_polynomial(gens[i], gens[j], order), gb, order));
}

}  // namespace

TEST_CASE("groebner: worked examples") {
  const TermOrder lex = TermOrder::lex();
  CHECK(as_strings(groebner(Ideal({P("x-1", xy), P("y-x", xy)}), lex)) ==
        std::set<std::string>{"-1 + x", "-1 + y"});
  CHECK(as_strings(groebner(Ideal({P("x^2", xy), P("x*y", xy)}), lex)) ==
        std::set<std::string>{"x^2", "x*y"});
  const Ideal gb = groebner(Ideal({P("x^2-y", xy), P("y^2-x", xy)}), lex);
  CHECK(contains(gb, P("y^4-y", xy)));
  CHECK(as_strings(gb) == std::set<std::string>{"x - y^2", "-y + y^4"});
}

TEST_CASE("groebner: budget and order validation") {
  GroebnerBudget tiny;
  tiny.max_degree = 3;
  CHECK_THROWS_AS(groebner(Ideal({P("x^2-y", xy), P("y^2-x", xy)}), TermOrder::lex(), tiny),
                  BudgetExceeded);
  CHECK_THROWS_AS(groebner(Ideal({P("x", xy)}), TermOrder::block({0, 1}, 3)), DomainError);
  CHECK_THROWS_AS(groebner(Ideal({P("x", xy)}), TermOrder::lex({0, 0})), DomainError);
}

TEST_CASE("term orders") {
  const Monomial x2({2, 0}), xy3({1, 3}), y({0, 1});
  CHECK(TermOrder::lex().compare(x2, xy3) > 0);
  CHECK(TermOrder::graded_lex().compare(x2, xy3) < 0);
  CHECK(TermOrder::lex({1, 0}).compare(x2, y) < 0);
  // block (x | y): any x-power beats any pure y-power
  CHECK(TermOrder::block({0, 1}, 1).compare(Monomial({1, 0}), Monomial({0, 9})) > 0);
}

TEST_CASE("eliminate: worked examples") {
  const VarList vars{"x", "y1", "y2", "y"};
  const Ideal e = eliminate(Ideal({P("x-y1", vars), P("x*y-y2", vars)}), {"y1", "y2", "y"});
  CHECK(contains(e, P("y1*y-y2", vars)));
  const VarList xv{"x", "y1"};
  CHECK(eliminate(Ideal({P("x-y1", xv)}), {"y1"}).is_zero());
  CHECK(eliminate(Ideal({P("x^2-y1", xv)}), {"y1"}).is_zero());
  CHECK_THROWS_AS(eliminate(Ideal({P("x", xv)}), {"w"}), DomainError);
}

TEST_CASE("minimal_poly_of_coordinate: worked examples") {
  const PolyMap f = M({"x", "x*y"}, xy);
  const Polynomial h2 = minimal_poly_of_coordinate(f, 1);
  CHECK(print_polynomial(h2) == "-Y2 + Y1*T");
  CHECK(defining_identity(h2, f, 1).is_zero());

  const Polynomial h1 = minimal_poly_of_coordinate(PolyMap::identity(xy), 0);
  CHECK(print_polynomial(h1) == "-Y1 + T");

  const PolyMap tri = M({"x+y^3", "y"}, xy);
  CHECK(print_polynomial(minimal_poly_of_coordinate(tri, 1)) == "-Y2 + T");
  const Polynomial t1 = minimal_poly_of_coordinate(tri, 0);
  CHECK(print_polynomial(t1) == "-Y1 + T + Y2^3");
  CHECK(defining_identity(t1, tri, 0).is_zero());
}

TEST_CASE("minimal_poly_of_coordinate: cross-check against an independent lex elimination") {
  // Oracle: full lex Groebner basis with X_j (j != i) largest; the basis element
  // free of those variables generates the same principal ideal.
  const PolyMap f = M({"x", "x*(x-1)*y"}, xy);
  const VarList graph{"x", "y", "Y1", "Y2"};
  const Ideal ideal({P("x - Y1", graph), P("x*(x-1)*y - Y2", graph)});
  const Ideal gb = groebner(ideal, TermOrder::lex({0, 1, 2, 3}));
  std::optional<Polynomial> free_of_x;
  for (const auto& g : gb.generators())
    if (!g.involves(0)) free_of_x = g;
  REQUIRE(free_of_x);
  const Polynomial h = minimal_poly_of_coordinate(f, 1);
  // relabel oracle into (Y1, Y2, T) with y -> T
  auto ring = coordinate_ring(2);
  std::vector<Polynomial> relabel{Polynomial(ring), Polynomial::variable(ring, 2),
                                  Polynomial::variable(ring, 0), Polynomial::variable(ring, 1)};
  CHECK(equal_up_to_scalar(substitute(*free_of_x, relabel), h));
  CHECK(print_polynomial(h) == "-Y2 - Y1*T + Y1^2*T");
}

TEST_CASE("minimal_poly_of_coordinate: non-dominant map is reported") {
  CHECK_THROWS_AS(minimal_poly_of_coordinate(M({"x+y", "x+y"}, xy), 0), DomainError);
  CHECK_THROWS_AS(minimal_poly_of_coordinate(M({"x"}, xy), 0), DomainError);
}

TEST_CASE("property: minimal polynomial defining identity") {
  const std::vector<PolyMap> maps{
      M({"x", "x*y"}, xy),
      M({"x", "x*(x-1)*y"}, xy),
      M({"x^2", "y"}, xy),
      M({"x+y^3", "y+x^3"}, xy),
      M({"x + (x+2*y)^3", "y"}, xy),
      M({"x*y", "x+y"}, xy),
  };
  for (const auto& f : maps)
    for (std::size_t i = 0; i < 2; ++i) {
      const Polynomial h = minimal_poly_of_coordinate(f, i);
      CHECK(defining_identity(h, f, i).is_zero());
      CHECK(h.is_integral());
    }
}

TEST_CASE("generic_fiber_degree: worked examples") {
  CHECK(generic_fiber_degree(M({"x^2", "y"}, xy), test::Q({4, 1})) == 2);
  CHECK(generic_fiber_degree(PolyMap::identity(xy), test::Q({3, -7})) == 1);
  CHECK(generic_fiber_degree(M({"x", "x*y"}, xy), test::Q({1, 1})) == 1);
  CHECK(generic_fiber_degree(M({"x^2", "y^3"}, xy), test::Q({1, 1})) == 6);
  // x*y = 0 fiber over 0 is not zero-dimensional
  CHECK_THROWS_AS(generic_fiber_degree(M({"x", "x*y"}, xy), test::Q({0, 0})), DomainError);
  // x*y = 1, x = 0 has no solutions
  CHECK(generic_fiber_degree(M({"x", "x*y"}, xy), test::Q({0, 1})) == 0);
}

TEST_CASE("resultant: worked examples") {
  const VarList t{"t"};
  CHECK(resultant(P("t-2", t), P("t-3", t), 0) == Polynomial::constant(t, -1));
  CHECK(resultant(P("t^2-1", t), P("t-1", t), 0).is_zero());
  const VarList tab{"t", "a", "b"};
  CHECK(resultant(P("t-a", tab), P("t-b", tab), 0) == P("a-b", tab));
  CHECK_THROWS_AS(resultant(P("2", t), P("3", t), 0, 0, 0), DomainError);
  // a constant against degree 3 at formal degrees (0, 3) gives c^3
  CHECK(resultant(P("2", t), P("t^3+1", t), 0, 0, 3) == Polynomial::constant(t, 8));
}

TEST_CASE("discriminant: worked examples") {
  const VarList tbc{"t", "a", "b", "c"};
  CHECK(discriminant(P("t^2+b*t+c", tbc), 0, 2) == P("b^2-4*c", tbc));
  CHECK(discriminant(P("a*t^2+b*t+c", tbc), 0, 2) == P("b^2-4*a*c", tbc));
  CHECK(discriminant(P("t-5", tbc), 0, 1) == Polynomial::constant(tbc, 1));
  // cubic: t^3 + b t + c -> -4 b^3 - 27 c^2
  CHECK(discriminant(P("t^3+b*t+c", tbc), 0, 3) == P("-4*b^3-27*c^2", tbc));
  CHECK_THROWS_AS(discriminant(P("t", tbc), 0, 0), DomainError);
}

TEST_CASE("property: Groebner correctness on random ideals") {
  auto rng = test::seeded(31);
  auto ring = make_ring({"x", "y", "z"});
  int done = 0;
  for (int trial = 0; trial < 25; ++trial) {
    const Ideal ideal({test::random_poly(rng, ring, 2, 3), test::random_poly(rng, ring, 2, 3),
                       test::random_poly(rng, ring, 2, 2)});
    for (const TermOrder& order : {TermOrder::lex(), TermOrder::graded_lex(),
                                   TermOrder::block({2, 0, 1}, 1)}) {
      try {
        check_groebner_correct(ideal, order);
        ++done;
      } catch (const BudgetExceeded&) {
      }
    }
  }
  CHECK(done > 60);
}

TEST_CASE("property: elimination soundness") {
  auto rng = test::seeded(32);
  auto ring = make_ring({"x", "y", "z"});
  for (int trial = 0; trial < 20; ++trial) {
    const Ideal ideal({test::random_poly(rng, ring, 2, 3), test::random_poly(rng, ring, 2, 3)});
    const Ideal e = eliminate(ideal, {"y", "z"});
    const TermOrder order = TermOrder::graded_lex();
    const Ideal gb = groebner(ideal, order);
    for (const auto& g : e.generators()) {
      CHECK_FALSE(g.involves(0));
      CHECK(reduces_to_zero(g, gb, order));
    }
  }
}

TEST_CASE("property: resultant multiplicativity") {
  auto rng = test::seeded(33);
  auto ring = make_ring({"t"});
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = test::random_poly(rng, ring, 3, 4, true);
    const auto q = test::random_poly(rng, ring, 3, 4, true);
    const auto r = test::random_poly(rng, ring, 3, 4, true);
    if (p.degree_in(0) + q.degree_in(0) == 0 || r.degree_in(0) == 0) continue;
    if (p.degree_in(0) == 0 && r.degree_in(0) == 0) continue;
    if (q.degree_in(0) == 0 && r.degree_in(0) == 0) continue;
    CHECK(resultant(p * q, r, 0) == resultant(p, r, 0) * resultant(q, r, 0));
  }
}

TEST_CASE("property: resultant vanishes exactly on a shared root") {
  auto rng = test::seeded(34);
  std::uniform_int_distribution<int> root(-6, 6);
  const VarList t{"t"};
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<int> ra{root(rng), root(rng)}, rb{root(rng), root(rng), root(rng)};
    Polynomial a = Polynomial::constant(t, 1), b = Polynomial::constant(t, 2);
    for (int x : ra) a = a * P("t - (" + std::to_string(x) + ")", t);
    for (int x : rb) b = b * P("t - (" + std::to_string(x) + ")", t);
    bool shared = false;
    for (int x : ra)
      for (int y : rb) shared = shared || x == y;
    CHECK(resultant(a, b, 0).is_zero() == shared);
  }
}

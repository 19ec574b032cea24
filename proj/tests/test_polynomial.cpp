#include <map>

#include "doctest.h"
#include "kwb/polynomial.hpp"
#include "support.hpp"

using namespace kwb;
using kwb::test::P;

namespace {

const VarList xy{"x", "y"};

// Dense bivariate product by distribution over exponent pairs. Independent of
// the sparse multiplication under test.
using Dense = std::map<std::pair<unsigned, unsigned>, long>;

Dense dense_mul(const Dense& a, const Dense& b) {
  Dense out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) out[{ea.first + eb.first, ea.second + eb.second}] += ca * cb;
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

Dense to_dense(const Polynomial& p) {
  Dense d;
  for (const auto& [m, c] : p.terms()) d[{m[0], m[1]}] = c.get_num().get_si();
  return d;
}

}  // namespace

TEST_CASE("arith: worked examples") {
  CHECK(P("x+y", xy) * P("x-y", xy) == P("x^2-y^2", xy));
  CHECK(arith(P("x+y^3", xy), Polynomial(make_ring(xy)), ArithOp::add) == P("x+y^3", xy));

  const Polynomial f = P("x+y^3", xy);
  const Polynomial cube = arith(arith(f, f, ArithOp::mul), f, ArithOp::mul);
  const Dense base{{{1, 0}, 1}, {{0, 3}, 1}};
  const Dense oracle = dense_mul(dense_mul(base, base), base);
  CHECK(cube.size() == 4);
  CHECK(to_dense(cube) == oracle);
  CHECK(oracle == Dense{{{3, 0}, 1}, {{2, 3}, 3}, {{1, 6}, 3}, {{0, 9}, 1}});
}

TEST_CASE("arith: variable-list mismatch is rejected") {
  CHECK_THROWS_AS(P("x", xy) + P("x", {"x", "z"}), DomainError);
  CHECK_THROWS_AS(P("x", xy) * P("x", {"y", "x"}), DomainError);
}

TEST_CASE("substitute: worked examples") {
  const Polynomial f = P("x+y^3", xy);
  std::map<std::string, Polynomial> vals{{"x", Polynomial::constant(xy, 2)},
                                         {"y", Polynomial::constant(xy, 1)}};
  CHECK(substitute(f, vals) == Polynomial::constant(xy, 3));

  const VarList xtv{"x", "t", "v1"};
  std::map<std::string, Polynomial> lin{{"x", P("x + t*v1", xtv)}};
  CHECK(substitute(P("x", {"x"}), lin) == P("x+t*v1", xtv));

  const VarList utv{"u1", "v1", "t"};
  std::map<std::string, Polynomial> line{{"y1", P("u1 + t*v1", utv)}};
  const Polynomial h = substitute(P("y1*(y1-1)", {"y1"}), line);
  auto coeffs = coefficients_in(h, 2);
  REQUIRE(coeffs.size() == 3);
  CHECK(coeffs[2] == P("v1^2", utv));
  CHECK(coeffs[1] == P("2*u1*v1 - v1", utv));
  CHECK(coeffs[0] == P("u1^2 - u1", utv));
}

TEST_CASE("substitute: unbound variable") {
  std::map<std::string, Polynomial> only_x{{"x", Polynomial::constant(xy, 1)}};
  CHECK_THROWS_AS(substitute(P("x+y", xy), only_x), DomainError);
  // unused variables need no binding
  CHECK(substitute(P("x", xy), only_x) == Polynomial::constant(xy, 1));
}

TEST_CASE("partial_derivative: worked examples") {
  CHECK(partial_derivative(P("x+y^3", xy), "y") == P("3*y^2", xy));
  CHECK(partial_derivative(P("7", xy), "x").is_zero());
  CHECK(partial_derivative(P("x^2*y^3", xy), "x") == P("2*x*y^3", xy));
  CHECK_THROWS_AS(partial_derivative(P("x", xy), "z"), DomainError);
}

TEST_CASE("homogeneous_components and leading_form") {
  auto hc = homogeneous_components(P("x+y^3", xy));
  REQUIRE(hc.size() == 2);
  CHECK(hc[0].first == 1);
  CHECK(hc[0].second == P("x", xy));
  CHECK(hc[1].first == 3);
  CHECK(hc[1].second == P("y^3", xy));
  CHECK(homogeneous_components(Polynomial(make_ring(xy))).empty());
  auto hc2 = homogeneous_components(P("x^2+x*y+y^2+x", xy));
  REQUIRE(hc2.size() == 2);
  CHECK(hc2[0] == std::pair<unsigned, Polynomial>{1, P("x", xy)});
  CHECK(hc2[1] == std::pair<unsigned, Polynomial>{2, P("x^2+x*y+y^2", xy)});

  const VarList yy{"y1", "y2"};
  CHECK(leading_form(P("y1*y2-1", yy)) == P("y1*y2", yy));
  CHECK(leading_form(P("y1", yy)) == P("y1", yy));
  CHECK(leading_form(P("x^3+x^2*y+y", xy)) == P("x^3+x^2*y", xy));
  CHECK_THROWS_AS(leading_form(Polynomial(make_ring(xy))), DomainError);
}

TEST_CASE("squarefree_part: worked examples") {
  const VarList y1{"y1"};
  CHECK(squarefree_part(P("y1^2", y1)) == P("y1", y1));
  CHECK(squarefree_part(P("y1*(y1-1)", y1)) == P("y1^2-y1", y1));
  const Polynomial p = P("(x+y)^2*(x-y)", xy);
  const Polynomial s = squarefree_part(p);
  CHECK(s == P("x^2-y^2", xy));
  // oracle: s divides p, p divides s^2, and s is not divisible by a square of a factor
  CHECK(divide_exact(p, s).has_value());
  CHECK(divide_exact(s * s, p).has_value());
  CHECK(squarefree_part(P("-4*x^2", xy)) == P("x", xy));
  CHECK(squarefree_part(P("3", xy)) == P("1", xy));
  CHECK_THROWS_AS(squarefree_part(Polynomial(make_ring(xy))), DomainError);
}

TEST_CASE("gcd and exact division") {
  CHECK(gcd(P("x^2-y^2", xy), P("x^2+2*x*y+y^2", xy)) == P("x+y", xy));
  CHECK(gcd(P("2*x", xy), P("4*y", xy)) == P("1", xy));
  CHECK(gcd(P("x*y^2 + x", xy), P("x^2", xy)) == P("x", xy));
  CHECK_FALSE(divide_exact(P("x^2+1", xy), P("x+1", xy)).has_value());
  CHECK(*divide_exact(P("x^3-y^3", xy), P("x-y", xy)) == P("x^2+x*y+y^2", xy));
  const VarList xyz{"x", "y", "z"};
  const Polynomial a = P("(x*y - z + 1)*(x + z^2)", xyz);
  const Polynomial b = P("(x*y - z + 1)*(y - 2*z)", xyz);
  CHECK(gcd(a, b) == normalize(P("x*y - z + 1", xyz)));
}

TEST_CASE("normalize: integer content 1, positive lex-leading coefficient") {
  CHECK(normalize(P("-1/2*x + 3/4*y", xy)) == P("2*x - 3*y", xy));
  CHECK(normalize(P("-6*y", xy)) == P("y", xy));
  CHECK(equal_up_to_scalar(P("x - y", xy), P("-3*y + 3*x", xy)));
}

TEST_CASE("determinant of polynomial matrices: cofactor and Bareiss agree") {
  auto rng = test::seeded(7);
  auto ring = make_ring(xy);
  for (std::size_t n : {2u, 3u, 4u}) {
    PolyMatrix m(n, n, Polynomial(ring));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = test::random_poly(rng, ring, 2, 3);
    const Polynomial cof = determinant(m, Polynomial(ring));
    const Polynomial bar = bareiss_determinant(m, Polynomial(ring), Polynomial::constant(xy, 1));
    CHECK(cof == bar);
  }
}

TEST_CASE("property: distributivity and canonical term maps") {
  auto rng = test::seeded(11);
  auto ring = make_ring({"x", "y", "z"});
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = test::random_poly(rng, ring, 3, 4, true);
    const auto q = test::random_poly(rng, ring, 3, 4, true);
    const auto r = test::random_poly(rng, ring, 3, 4, true);
    const auto lhs = (p + q) * r;
    CHECK(lhs == p * r + q * r);
    for (const auto& [m, c] : lhs.terms()) CHECK(c != 0);
    CHECK((p - p).terms().empty());
  }
}

TEST_CASE("property: Leibniz rule") {
  auto rng = test::seeded(12);
  auto ring = make_ring({"x", "y", "z"});
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = test::random_poly(rng, ring, 4, 4, true);
    const auto q = test::random_poly(rng, ring, 4, 4, true);
    for (std::size_t v = 0; v < 3; ++v)
      CHECK(partial_derivative(p * q, v) ==
            partial_derivative(p, v) * q + p * partial_derivative(q, v));
  }
}

TEST_CASE("property: substitution is functorial for linear maps") {
  auto rng = test::seeded(13);
  auto ring = make_ring(xy);
  std::uniform_int_distribution<int> c(-3, 3);
  auto random_linear = [&] {
    std::vector<Polynomial> imgs;
    for (int i = 0; i < 2; ++i) {
      Polynomial l = Polynomial::constant(Polynomial(ring), c(rng));
      l += Polynomial::variable(ring, 0) * Rational(c(rng));
      l += Polynomial::variable(ring, 1) * Rational(c(rng));
      imgs.push_back(l);
    }
    return imgs;
  };
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = test::random_poly(rng, ring, 4, 5);
    const auto sigma = random_linear();
    const auto tau = random_linear();
    std::vector<Polynomial> composed;
    for (const auto& s : sigma) composed.push_back(substitute(s, tau));
    CHECK(substitute(substitute(p, sigma), tau) == substitute(p, composed));
  }
}

TEST_CASE("property: homogeneous components sum to the input") {
  auto rng = test::seeded(14);
  auto ring = make_ring({"x", "y", "z"});
  for (int trial = 0; trial < 1000; ++trial) {
    const auto p = test::random_poly(rng, ring, 6, 6, true);
    Polynomial sum(ring);
    int last = -1;
    for (const auto& [d, comp] : homogeneous_components(p)) {
      CHECK(static_cast<int>(d) > last);
      last = static_cast<int>(d);
      CHECK(comp.is_homogeneous());
      CHECK(comp.total_degree() == static_cast<int>(d));
      sum += comp;
    }
    CHECK(sum == p);
  }
}

TEST_CASE("property: squarefree_part(p^2 q) = squarefree_part(p q) for coprime p, q") {
  auto rng = test::seeded(15);
  auto ring = make_ring(xy);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto p = test::random_poly(rng, ring, 2, 3);
    const auto q = test::random_poly(rng, ring, 2, 3);
    if (p.is_constant() || q.is_constant()) continue;
    if (!gcd(p, q).is_constant()) continue;
    CHECK(squarefree_part(p * p * q) == squarefree_part(p * q));
    ++checked;
  }
  CHECK(checked > 20);
}

TEST_CASE("truncated multiplication drops high-degree terms only") {
  const auto p = P("1 + x + y^2", xy);
  const auto q = P("1 - x + x*y^3", xy);
  CHECK(mul_truncated(p, q, 2) == truncate(p * q, 2));
}

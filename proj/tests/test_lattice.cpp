#include <algorithm>
#include <chrono>
#include <numeric>

#include "doctest.h"
#include "kwb/lattice.hpp"
#include "support.hpp"

using namespace kwb;

namespace {

// Leibniz expansion: independent of the Bareiss determinant in the library.
BigInt leibniz_det(const IntMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  BigInt total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    BigInt term = inversions % 2 == 0 ? 1 : -1;
    for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

IntVector random_primitive(std::mt19937& rng, std::size_t n, int range = 50) {
  std::uniform_int_distribution<int> d(-range, range);
  for (;;) {
    IntVector v(n);
    for (auto& c : v) c = d(rng);
    if (gcd_of(v) == 1) return v;
  }
}

}  // namespace

TEST_CASE("is_primitive: worked examples") {
  CHECK(is_primitive(IntVector{2, 3}));
  CHECK_FALSE(is_primitive(IntVector{2, 4}));
  CHECK(is_primitive(IntVector{0, 0, 1}));
  CHECK(is_primitive(IntVector{-1}));
  CHECK_THROWS_AS(is_primitive(IntVector{0, 0}), DomainError);
  CHECK_THROWS_AS(PrimitiveVector(IntVector{4, 6}), DomainError);
}

TEST_CASE("sl_complete: worked examples") {
  CHECK(sl_complete(PrimitiveVector({1, 0, 0, 0})).matrix() == IntMatrix::identity(4));
  for (const IntVector& v : {IntVector{2, 3}, IntVector{2, 3, 5}, IntVector{0, 0, 1},
                             IntVector{-1, 0, 0}, IntVector{0, -1, 0, 0}, IntVector{1}}) {
    const IntMatrix a = sl_complete(PrimitiveVector(v)).matrix();
    CHECK(leibniz_det(a) == 1);
    CHECK(a.col(0) == v);
  }
  CHECK_THROWS_AS(sl_complete(PrimitiveVector({-1})), DomainError);
}

TEST_CASE("sl_complete: 100 random primitive vectors per dimension") {
  auto rng = test::seeded(41);
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t n = 2; n <= 6; ++n)
    for (int trial = 0; trial < 100; ++trial) {
      const IntVector v = random_primitive(rng, n);
      const IntMatrix a = sl_complete(PrimitiveVector(v)).matrix();
      CHECK(a.col(0) == v);
      if (n <= 5) CHECK(leibniz_det(a) == 1);
      else CHECK(determinant(a) == 1);
    }
  CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(2));
}

TEST_CASE("sl_complete: sparse vectors exercise the zero-entry branches") {
  auto rng = test::seeded(42);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + trial % 4;
    IntVector v(n);
    for (auto& c : v) c = (rng() % 2) ? BigInt(d(rng)) : BigInt(0);
    if (gcd_of(v) != 1) continue;
    const IntMatrix a = sl_complete(PrimitiveVector(v)).matrix();
    CHECK(a.col(0) == v);
    CHECK(leibniz_det(a) == 1);
  }
}

TEST_CASE("map_primitive_pair: worked examples and random pairs") {
  const auto a = map_primitive_pair(PrimitiveVector({1, 0}), PrimitiveVector({0, 1}));
  CHECK(a * IntVector{1, 0} == IntVector{0, 1});
  const auto b = map_primitive_pair(PrimitiveVector({2, 3, 5}), PrimitiveVector({0, 1, 1}));
  CHECK(b * IntVector{2, 3, 5} == IntVector{0, 1, 1});
  CHECK(leibniz_det(b.matrix()) == 1);
  const auto c = map_primitive_pair(PrimitiveVector({2, 3, 5}), PrimitiveVector({2, 3, 5}));
  CHECK(c * IntVector{2, 3, 5} == IntVector{2, 3, 5});
  CHECK_THROWS_AS(map_primitive_pair(PrimitiveVector({1, 0}), PrimitiveVector({1, 0, 0})),
                  DomainError);

  auto rng = test::seeded(43);
  for (std::size_t n = 2; n <= 6; ++n)
    for (int trial = 0; trial < 20; ++trial) {
      const IntVector v = random_primitive(rng, n);
      const IntVector w = random_primitive(rng, n);
      const auto m = map_primitive_pair(PrimitiveVector(v), PrimitiveVector(w));
      CHECK(m * v == w);
      CHECK(determinant(m.matrix()) == 1);
    }
}

TEST_CASE("sl_inverse: worked examples") {
  CHECK(sl_inverse(IntMatrix::identity(3)).matrix() == IntMatrix::identity(3));
  CHECK(sl_inverse(IntMatrix{{2, 1}, {3, 2}}).matrix() == IntMatrix{{2, -1}, {-3, 2}});
  CHECK_THROWS_AS(sl_inverse(IntMatrix{{2, 0}, {0, 1}}), DomainError);
  CHECK_THROWS_AS(sl_inverse(IntMatrix{{0, 1}, {1, 0}}), DomainError);
}

TEST_CASE("sl_inverse: products of elementary matrices round-trip") {
  auto rng = test::seeded(44);
  std::uniform_int_distribution<int> d(-4, 4);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial % 4;
    IntMatrix a = IntMatrix::identity(n);
    for (int step = 0; step < 8; ++step) {
      const std::size_t i = rng() % n, j = (i + 1 + rng() % (n - 1)) % n;
      IntMatrix e = IntMatrix::identity(n);
      e(i, j) = d(rng);
      a = a * e;
    }
    const auto inv = sl_inverse(a);
    CHECK(a * inv.matrix() == IntMatrix::identity(n));
    CHECK(inv.matrix() * a == IntMatrix::identity(n));
  }
}

#include "doctest.h"

#include "sumprod/affine.hpp"
#include "sumprod/errors.hpp"
#include "sumprod/random.hpp"
#include "sumprod/sweeps.hpp"

using namespace sumprod;

TEST_CASE("application") {
  const auto f7 = FiniteField::prime(7);
  CHECK(AffineMap(f7, 2, 3)(1) == 5);
  for (Index x = 0; x < 7; ++x) CHECK(AffineMap::identity(f7)(x) == x);
  CHECK(AffineMap::dilation(FiniteField::prime(5), 3)(4) == 2);
  CHECK(apply(AffineMap(f7, 2, 3), f7.element(1)) == f7.element(5));
  CHECK_THROWS_AS(AffineMap(f7, 0, 1), DivisionByZero);
}

TEST_CASE("composition applies the right map first") {
  const auto f7 = FiniteField::prime(7);
  CHECK(compose(AffineMap(f7, 2, 0), AffineMap(f7, 1, 3)) == AffineMap(f7, 2, 6));
  const AffineMap g(f7, 3, 4);
  CHECK(compose(g, AffineMap::identity(f7)) == g);
  CHECK(compose(AffineMap::identity(f7), g) == g);
  CHECK_THROWS_AS(compose(g, AffineMap::identity(FiniteField::prime(5))), FieldMismatch);
}

TEST_CASE("inverse") {
  const auto f7 = FiniteField::prime(7);
  CHECK(inverse(AffineMap(f7, 2, 3)) == AffineMap(f7, 4, 2));
  CHECK(inverse(AffineMap::identity(f7)) == AffineMap::identity(f7));
}

TEST_CASE("twisted map x -> u x - u^2") {
  CHECK(twisted_map(FiniteField::prime(5), 2) == AffineMap(FiniteField::prime(5), 2, 1));
  const auto f7 = FiniteField::prime(7);
  CHECK(twisted_map(f7, 1) == AffineMap(f7, 1, 6));
  CHECK_THROWS_AS(twisted_map(f7, 0), DivisionByZero);
  for (Index u = 1; u < 7; ++u) {
    const AffineMap t = twisted_map(f7, u);
    CHECK(t == compose(AffineMap::dilation(f7, u), AffineMap::translation(f7, f7.neg(u))));
    for (Index y = 0; y < 7; ++y) CHECK(t(f7.add(y, u)) == f7.mul(u, y));
  }
}

TEST_CASE("group laws, exhaustively for q <= 16") {
  for (std::uint32_t q : prime_powers(2, 16)) {
    const auto f = FiniteField::of_order(q);
    const auto group = affine_group(f);
    REQUIRE(group.size() == std::size_t{q} * (q - 1));
    const auto id = AffineMap::identity(f);
    for (const auto& g : group) {
      REQUIRE(compose(g, inverse(g)) == id);
      REQUIRE(compose(inverse(g), g) == id);
      REQUIRE(compose(g, id) == g);
      // The shift subgroup is normal: conjugates of translations are translations.
      for (Index v = 0; v < q; ++v) {
        const auto conj = compose(g, compose(AffineMap::translation(f, v), inverse(g)));
        REQUIRE(conj.scale() == 1);
      }
    }
    // M_u A_v = A_{uv} M_u
    for (Index u = 1; u < q; ++u) {
      for (Index v = 0; v < q; ++v) {
        REQUIRE(compose(AffineMap::dilation(f, u), AffineMap::translation(f, v)) ==
                compose(AffineMap::translation(f, f.mul(u, v)), AffineMap::dilation(f, u)));
      }
    }
  }
}

TEST_CASE("composition agrees with pointwise application and is associative") {
  Rng rng(11);
  for (std::uint32_t q : {5u, 8u, 9u, 49u, 64u, 101u}) {
    const auto f = FiniteField::of_order(q);
    auto random_map = [&] {
      return AffineMap(f, static_cast<Index>(1 + rng.below(q - 1)), static_cast<Index>(rng.below(q)));
    };
    for (int i = 0; i < 1000; ++i) {
      const auto a = random_map(), b = random_map(), c = random_map();
      REQUIRE(compose(compose(a, b), c) == compose(a, compose(b, c)));
      const auto x = static_cast<Index>(rng.below(q));
      REQUIRE(compose(a, b)(x) == a(b(x)));
    }
  }
}

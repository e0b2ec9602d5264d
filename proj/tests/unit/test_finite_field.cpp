#include "doctest.h"

#include "sumprod/errors.hpp"
#include "sumprod/finite_field.hpp"
#include "sumprod/polynomial.hpp"
#include "sumprod/random.hpp"
#include "sumprod/sweeps.hpp"

using namespace sumprod;

TEST_CASE("prime fields are built from primes only") {
  CHECK(FiniteField::prime(7).order() == 7);
  CHECK(FiniteField::prime(2).order() == 2);
  CHECK_THROWS_AS(FiniteField::prime(6), CompositeCharacteristic);
  CHECK_THROWS_AS(FiniteField::prime(1), CompositeCharacteristic);
  CHECK_THROWS_AS(FiniteField::of_order(12), CompositeCharacteristic);
}

TEST_CASE("extension fields and their moduli") {
  const auto f4 = FiniteField::extension(2, 2, Poly{1, 1, 1});
  CHECK(f4.order() == 4);
  CHECK_THROWS_AS(FiniteField::extension(2, 2, Poly{1, 0, 1}), ReducibleModulus);

  SUBCASE("GF(9) picks x^2 + 1, the first irreducible monic quadratic") {
    const auto f9 = FiniteField::extension(3, 2);
    CHECK(f9.modulus() == Poly{1, 0, 1});
    // x^2 + 1 has no root in GF(3).
    for (std::uint32_t x = 0; x < 3; ++x) CHECK((x * x + 1) % 3 != 0);
  }

  SUBCASE("too large") {
    CHECK_THROWS_AS(FiniteField::of_order(1u << 21), FieldTooLarge);
    CHECK_THROWS_AS(FiniteField::prime(101, 50), FieldTooLarge);
  }
}

TEST_CASE("small arithmetic facts") {
  const auto f7 = FiniteField::prime(7);
  CHECK(f7.add(3, 5) == 1);
  CHECK(f7.inv(3) == 5);
  CHECK(FiniteField::prime(5).mul(4, 4) == 1);

  // omega is index 2 (coefficients (0, 1)), omega + 1 is index 3.
  const auto f4 = FiniteField::of_order(4);
  CHECK(f4.mul(2, 2) == 3);
  CHECK(f4.inv(2) == 3);
  CHECK_THROWS_AS(f4.inv(0), DivisionByZero);
  CHECK_THROWS_AS(f7.div(1, 0), DivisionByZero);
}

TEST_CASE("element enumeration") {
  const auto f3 = FiniteField::prime(3);
  const auto els = f3.elements();
  REQUIRE(els.size() == 3);
  for (Index i = 0; i < 3; ++i) CHECK(els[i].index() == i);
  const auto f4 = FiniteField::of_order(4);
  CHECK(f4.coefficients(2) == std::vector<std::uint32_t>{0, 1});
  CHECK(f4.coefficients(3) == std::vector<std::uint32_t>{1, 1});
  for (std::uint32_t q : prime_powers(2, 128)) CHECK(FiniteField::of_order(q).elements().size() == q);
}

TEST_CASE("irreducibility") {
  CHECK(poly::is_irreducible(Poly{1, 1, 1}, 2));
  CHECK_FALSE(poly::is_irreducible(Poly{1, 0, 1}, 2));
  CHECK(poly::is_irreducible(Poly{1, 0, 1}, 3));

  SUBCASE("trial factoring and the Frobenius test agree") {
    for (std::uint32_t p : {2u, 3u, 5u}) {
      for (std::uint32_t n = 1; n <= 4; ++n) {
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < n; ++i) count *= p;
        for (std::uint64_t m = 0; m < count; ++m) {
          Poly f(n + 1, 0);
          std::uint64_t rest = m;
          for (std::uint32_t i = 0; i < n; ++i) {
            f[i] = static_cast<std::uint32_t>(rest % p);
            rest /= p;
          }
          f[n] = 1;
          CHECK(poly::is_irreducible_by_trial(f, p) == poly::is_irreducible_by_frobenius(f, p));
        }
      }
    }
  }

  SUBCASE("number of monic irreducibles of degree 2 over GF(p) is (p^2 - p)/2") {
    for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
      std::uint32_t found = 0;
      for (std::uint32_t c0 = 0; c0 < p; ++c0)
        for (std::uint32_t c1 = 0; c1 < p; ++c1) found += poly::is_irreducible(Poly{c0, c1, 1}, p);
      CHECK(found == (p * p - p) / 2);
    }
  }
}

TEST_CASE("descriptor round trip") {
  for (std::uint32_t q : prime_powers(2, 256)) {
    const auto f = FiniteField::of_order(q);
    const auto g = FiniteField::parse(f.descriptor());
    CHECK(f == g);
  }
  CHECK(FiniteField::parse("GF(7)").order() == 7);
  CHECK(FiniteField::parse("GF(3^2)").modulus() == Poly{1, 0, 1});
  CHECK(FiniteField::parse("GF(2^2)[modulus=1,1,1]").order() == 4);
  CHECK_THROWS_AS(FiniteField::parse("GF(2^2)[modulus=1,0,1]"), ReducibleModulus);
  CHECK_THROWS_AS(FiniteField::parse("GF(x)"), ParseError);
  CHECK(FiniteField::parse("GF(9)") == FiniteField::parse("GF(3^2)"));
  CHECK_THROWS_AS(FiniteField::parse("GF(6)"), CompositeCharacteristic);
}

TEST_CASE("mixing fields is rejected") {
  const auto a = FiniteField::prime(5);
  const auto b = FiniteField::prime(7);
  CHECK_THROWS_AS(a.element(1) + b.element(1), FieldMismatch);
  CHECK_THROWS_AS(require_same_field(a, b), FieldMismatch);
  CHECK_NOTHROW(require_same_field(a, FiniteField::prime(5)));
}

TEST_CASE("field axioms on random triples") {
  Rng rng(7);
  for (std::uint32_t q : {2u, 4u, 8u, 9u, 25u, 27u, 49u, 64u, 101u, 128u, 243u, 256u, 343u, 625u, 1024u, 2187u, 4096u}) {
    const auto f = FiniteField::of_order(q);
    for (int i = 0; i < 1000; ++i) {
      const auto a = static_cast<Index>(rng.below(q));
      const auto b = static_cast<Index>(rng.below(q));
      const auto c = static_cast<Index>(rng.below(q));
      REQUIRE(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
      REQUIRE(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
      REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      REQUIRE(f.add(a, b) == f.add(b, a));
      REQUIRE(f.mul(a, b) == f.mul(b, a));
      REQUIRE(f.add(a, f.neg(a)) == 0);
      REQUIRE(f.sub(f.add(a, b), b) == a);
    }
  }
}

TEST_CASE("inverses and the group order, exhaustively for q <= 512") {
  for (std::uint32_t q : prime_powers(2, 512)) {
    const auto f = FiniteField::of_order(q);
    for (Index a = 1; a < q; ++a) {
      const Index i = f.inv(a);
      REQUIRE(f.mul(a, i) == 1);
      REQUIRE(f.mul(i, a) == 1);
      REQUIRE(f.inv_fermat(a) == i);
      REQUIRE(f.pow(a, q - 1) == 1);
    }
    CHECK(f.inv(1) == 1);
  }
}

TEST_CASE("coefficient encoding round trips") {
  for (std::uint32_t q : prime_powers(2, 729)) {
    const auto f = FiniteField::of_order(q);
    for (Index a = 0; a < q; ++a) REQUIRE(f.from_coefficients(f.coefficients(a)) == a);
  }
}

TEST_CASE("Frobenius is additive and multiplicative") {
  for (std::uint32_t q : {4u, 8u, 9u, 16u, 27u, 32u, 49u, 81u, 125u}) {
    const auto f = FiniteField::of_order(q);
    for (Index a = 0; a < q; ++a)
      for (Index b = 0; b < q; b += 3) {
        REQUIRE(f.frobenius(f.add(a, b)) == f.add(f.frobenius(a), f.frobenius(b)));
        REQUIRE(f.frobenius(f.mul(a, b)) == f.mul(f.frobenius(a), f.frobenius(b)));
      }
  }
}

TEST_CASE("quadratic residues") {
  CHECK(FiniteField::prime(7).quadratic_residues() == std::vector<Index>{1, 2, 4});
  for (std::uint32_t q : prime_powers(3, 81)) {
    const auto f = FiniteField::of_order(q);
    if (f.characteristic() == 2) continue;
    CHECK(f.quadratic_residues().size() == (q - 1) / 2);
  }
}

TEST_CASE("large fields without tables") {
  const auto f = FiniteField::prime(1048573);
  CHECK(f.mul(f.inv(12345), 12345) == 1);
  const auto g = FiniteField::of_order(1u << 20);
  CHECK(g.mul(g.inv(777), 777) == 1);
  CHECK(g.pow(777, (1u << 20) - 1) == 1);
}

TEST_CASE("index sets") {
  IndexSet s(10);
  s.insert(3);
  s.insert(3);
  s.insert(7);
  CHECK(s.size() == 2);
  s.erase(3);
  CHECK(s.indices() == std::vector<Index>{7});
  CHECK(IndexSet::full(5).size() == 5);
  CHECK_THROWS(s.insert(10));
}

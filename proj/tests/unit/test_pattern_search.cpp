#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "sumprod/errors.hpp"
#include "sumprod/pattern_search.hpp"
#include "sumprod/random.hpp"
#include "sumprod/sweeps.hpp"

using namespace sumprod;

namespace {

Subset set_of(const FiniteField& f, std::initializer_list<Index> xs) {
  const std::vector<Index> v(xs);
  return Subset::of(f, v);
}

Subset random_subset(const FiniteField& f, Rng& rng) {
  const auto k = static_cast<std::uint32_t>(rng.between(0, f.order()));
  const auto idx = rng.sample(f.order(), k);
  return Subset::of(f, idx);
}

}  // namespace

TEST_CASE("witnesses") {
  const auto f7 = FiniteField::prime(7);
  const auto all = Subset::all(f7);
  const auto ws = sumprod_witnesses(all, all);
  CHECK(std::find(ws.begin(), ws.end(), Witness{1, 1}) != ws.end());
  CHECK(ws.size() == 7 * 6);
  CHECK(sumprod_witnesses(Subset(f7), all).empty());

  SUBCASE("GF(5), E1 = {1,2,3}, E2 = {2,4}") {
    const auto f5 = FiniteField::prime(5);
    const auto got = sumprod_witnesses(set_of(f5, {1, 2, 3}), set_of(f5, {2, 4}));
    std::vector<Witness> brute;
    for (Index u = 0; u < 5; ++u)
      for (Index y = 1; y < 5; ++y) {
        const Index s = (u + y) % 5, p = (u * y) % 5;
        if ((s == 1 || s == 2 || s == 3) && (p == 2 || p == 4)) brute.push_back({u, y});
      }
    CHECK(got == brute);
    // u = 0 would need 0 in E2.
    CHECK(std::none_of(got.begin(), got.end(), [](const Witness& w) { return w.u == 0; }));
  }

  SUBCASE("every witness re-checks with Fermat inverses") {
    Rng rng(1);
    for (std::uint32_t q : {8u, 9u, 11u, 16u, 25u}) {
      const auto f = FiniteField::of_order(q);
      for (int i = 0; i < 20; ++i) {
        const auto e1 = random_subset(f, rng), e2 = random_subset(f, rng);
        for (const auto& w : sumprod_witnesses(e1, e2)) {
          // y = (u*y) / u when u != 0, using the Fermat inverse.
          REQUIRE(e1.contains(f.add(w.u, w.y)));
          REQUIRE(e2.contains(f.mul(w.u, w.y)));
          if (w.u != 0) REQUIRE(f.mul(f.mul(w.u, w.y), f.inv_fermat(w.u)) == w.y);
        }
      }
    }
  }

  SUBCASE("degenerate pairs can be dropped") {
    for (const auto& w : sumprod_witnesses(all, all, true)) CHECK(f7.add(w.u, w.y) != f7.mul(w.u, w.y));
  }

  SUBCASE("thread count does not change the output") {
    const auto f = FiniteField::of_order(49);
    Rng rng(4);
    const auto e1 = random_subset(f, rng), e2 = random_subset(f, rng);
    CHECK(sumprod_witnesses(e1, e2, false, 1) == sumprod_witnesses(e1, e2, false, 4));
  }

  SUBCASE("subsets of different fields") {
    CHECK_THROWS_AS(sumprod_witnesses(all, Subset::all(FiniteField::prime(5))), FieldMismatch);
  }
}

TEST_CASE("threshold set") {
  const auto f7 = FiniteField::prime(7);
  const auto all = Subset::all(f7);
  CHECK(witness_threshold_set(all, all, 0).size() == 6);
  CHECK_THROWS_AS(witness_threshold_set(Subset(f7), Subset(f7), 0), InvalidThreshold);
  CHECK_THROWS_AS(witness_threshold_set(set_of(f7, {1}), all, 1), InvalidThreshold);

  const auto e1 = set_of(f7, {1, 2, 4}), e2 = set_of(f7, {3, 5, 6});
  const auto d = witness_threshold_set(e1, e2, 0);
  std::vector<Index> brute;
  for (Index u = 1; u < 7; ++u) {
    int count = 0;
    for (Index y = 0; y < 7; ++y) count += e1.contains((u + y) % 7) && e2.contains((u * y) % 7);
    if (count > 0) brute.push_back(u);
  }
  CHECK(d.indices() == brute);
}

TEST_CASE("cardinality bound") {
  SUBCASE("E1 = E2 = F, s = 0 gives D = F*") {
    for (std::uint32_t q : prime_powers(2, 32)) {
      const auto f = FiniteField::of_order(q);
      const auto rep = verify_cardinality_bound(Subset::all(f), Subset::all(f), 0);
      CHECK(rep.d_set.size() == q - 1);
      CHECK(rep.bound.required <= q - 1);
      CHECK(rep.holds);
    }
  }

  SUBCASE("two-element sets in GF(7) clamp to zero") {
    const auto b = cardinality_bound(7, 2, 2, 0);
    CHECK(b.vacuous);
    CHECK(b.required == 0);
    CHECK(b.approx == doctest::Approx((4.0 * 6 / 7 - std::sqrt(144.0)) / 2).epsilon(1e-12));
  }

  SUBCASE("the exact decision matches a high-precision evaluation away from the boundary") {
    for (std::size_t q : {11u, 64u, 101u}) {
      for (std::size_t e1 = 1; e1 <= q; e1 += 3) {
        for (std::size_t e2 = 1; e2 <= q; e2 += 5) {
          for (std::size_t s = 0; s < std::min(e1, e2) && s < 3; ++s) {
            const auto b = cardinality_bound(q, e1, e2, s);
            const long double prod = static_cast<long double>(e1) * e2;
            const long double v = (prod * (q - 1) / q - std::sqrt(6.0L * prod * (q - 1)) - static_cast<long double>(s) * (q - 1)) /
                                  (std::min(e1, e2) - s);
            if (std::fabs(v) < 1e-9L) continue;
            REQUIRE(b.vacuous == (v <= 0));
            if (!b.vacuous) REQUIRE(b.required == BigInt(static_cast<long long>(std::ceil(v))));
          }
        }
      }
    }
  }

  SUBCASE("exhaustive over all pairs of GF(4) and GF(5), s in {0, 1}") {
    for (std::uint32_t q : {4u, 5u}) {
      const auto f = FiniteField::of_order(q);
      for (std::uint32_t m1 = 0; m1 < (1u << q); ++m1) {
        for (std::uint32_t m2 = 0; m2 < (1u << q); ++m2) {
          Subset e1(f), e2(f);
          for (Index i = 0; i < q; ++i) {
            if ((m1 >> i) & 1u) e1.insert(i);
            if ((m2 >> i) & 1u) e2.insert(i);
          }
          for (std::size_t s = 0; s < 2 && s < std::min(e1.size(), e2.size()); ++s) {
            REQUIRE(verify_cardinality_bound(e1, e2, s).holds);
          }
        }
      }
    }
  }
}

TEST_CASE("colorings and monochromatic triples") {
  const auto f5 = FiniteField::prime(5);
  CHECK_THROWS(Coloring(f5, {0, 1, 2}, 3));
  CHECK_THROWS(Coloring(f5, {0, 1, 2, 0, 0}, 2));

  SUBCASE("a constant coloring lists every admissible pair") {
    const Coloring c(f5, std::vector<std::uint32_t>(5, 0), 1);
    const auto found = monochromatic_triple_search(c, true);
    std::size_t admissible = 0;
    for (Index u = 0; u < 5; ++u)
      for (Index y = 0; y < 5; ++y) admissible += admissible_triple(f5, u, y);
    CHECK(found.size() == admissible);
    CHECK(admissible > 0);
  }

  SUBCASE("the quadratic-residue coloring of GF(13)") {
    const auto f = FiniteField::prime(13);
    const auto c = Coloring::quadratic_residue(f);
    const auto found = monochromatic_triple_search(c, true);
    REQUIRE_FALSE(found.empty());
    for (const auto& t : found) {
      CHECK(admissible_triple(f, t.u, t.y));
      CHECK(c[t.u] == t.color);
      CHECK(c[f.add(t.y, t.u)] == t.color);
      CHECK(c[f.mul(t.y, t.u)] == t.color);
    }
  }

  SUBCASE("dropping the u requirement only adds triples") {
    Rng rng(2);
    const auto f = FiniteField::prime(11);
    for (int i = 0; i < 20; ++i) {
      std::vector<std::uint32_t> colors(11);
      for (auto& x : colors) x = static_cast<std::uint32_t>(rng.below(3));
      const Coloring c(f, colors, 3);
      CHECK(monochromatic_triple_search(c, false).size() >= monochromatic_triple_search(c, true).size());
    }
  }
}

TEST_CASE("coloring audit") {
  SUBCASE("one color contains the pattern once q >= 3") {
    for (std::uint32_t q : {3u, 4u, 5u, 7u, 8u, 9u}) {
      const auto r = exhaustive_coloring_audit(FiniteField::of_order(q), 1, true);
      CHECK(r.verdict == AuditVerdict::all_colorings_contain_pattern);
    }
  }

  SUBCASE("GF(2) with two colors has an avoiding coloring") {
    const auto r = exhaustive_coloring_audit(FiniteField::prime(2), 2, false);
    CHECK(r.verdict == AuditVerdict::avoiding_coloring_found);
    REQUIRE(r.witness);
    CHECK(monochromatic_triple_search(*r.witness, true).empty());
  }

  SUBCASE("smallest q where every 2-coloring contains the pattern is 7") {
    std::optional<std::uint32_t> minimal;
    for (std::uint32_t q : prime_powers(2, 13)) {
      const auto r = exhaustive_coloring_audit(FiniteField::of_order(q), 2, true);
      if (r.verdict == AuditVerdict::avoiding_coloring_found) {
        REQUIRE(r.witness);
        CHECK(monochromatic_triple_search(*r.witness, true).empty());
      }
      if (r.verdict == AuditVerdict::all_colorings_contain_pattern && !minimal) minimal = q;
    }
    CHECK(minimal == 7u);
  }

  SUBCASE("pruning does not change the verdict") {
    for (std::uint32_t q : prime_powers(2, 9)) {
      for (std::uint32_t r : {1u, 2u}) {
        const auto f = FiniteField::of_order(q);
        const auto a = exhaustive_coloring_audit(f, r, true);
        const auto b = exhaustive_coloring_audit(f, r, false);
        CHECK(a.verdict == b.verdict);
        CHECK(a.candidates_checked <= b.candidates_checked);
      }
    }
  }

  SUBCASE("budget") {
    const auto r = exhaustive_coloring_audit(FiniteField::prime(11), 3, false, 100);
    CHECK(r.verdict == AuditVerdict::budget_exceeded);
    CHECK(r.candidates_checked == 100);
  }
}

TEST_CASE("iterated towers") {
  const auto f7 = FiniteField::prime(7);
  const auto all = Subset::all(f7);
  const auto r = iterated_tower_search(all, 2);
  CHECK(r.status == SearchStatus::found);
  CHECK(r.tuple == std::vector<Index>{1, 1, 1});
  CHECK(tower_values(f7, r.tuple).size() == 4);

  SUBCASE("k = 1 agrees with the witness search") {
    Rng rng(6);
    for (std::uint32_t q : {5u, 7u, 8u, 9u, 11u}) {
      const auto f = FiniteField::of_order(q);
      for (int i = 0; i < 30; ++i) {
        const auto e = random_subset(f, rng);
        const auto t = iterated_tower_search(e, 1);
        bool any = false;
        for (const auto& w : sumprod_witnesses(e, e)) any = any || w.u != 0;
        CHECK((t.status == SearchStatus::found) == any);
      }
    }
  }

  SUBCASE("GF(11), quadratic residues, k = 2 against a triple loop") {
    const auto f = FiniteField::prime(11);
    const auto e = Subset::of(f, f.quadratic_residues());
    const auto t = iterated_tower_search(e, 2);
    std::optional<std::vector<Index>> first;
    for (Index a = 1; a < 11 && !first; ++a)
      for (Index b = 1; b < 11 && !first; ++b)
        for (Index c = 1; c < 11 && !first; ++c) {
          const std::vector<Index> tuple = {a, b, c};
          const auto vals = tower_values(f, tuple);
          if (std::all_of(vals.begin(), vals.end(), [&](Index v) { return e.contains(v); })) first = tuple;
        }
    CHECK((t.status == SearchStatus::found) == first.has_value());
    if (first) CHECK(t.tuple == *first);
  }

  SUBCASE("budget") {
    const auto f = FiniteField::prime(101);
    const auto r2 = iterated_tower_search(Subset::of(f, std::vector<Index>{3}), 3, 50);
    CHECK(r2.status == SearchStatus::budget_exceeded);
  }
}

TEST_CASE("degenerate pairs") {
  const auto f5 = FiniteField::prime(5);
  const auto pairs = degenerate_pairs(f5);
  CHECK(std::find(pairs.begin(), pairs.end(), DegeneratePair{2, 2}) != pairs.end());
  CHECK(std::find(pairs.begin(), pairs.end(), DegeneratePair{0, 0}) != pairs.end());
  CHECK(pairs.size() == 4);
}

TEST_CASE("interval counterexample") {
  CHECK(character_counterexample(7).indices() == std::vector<Index>{3, 4});
  CHECK(character_counterexample(3).indices() == std::vector<Index>{1});
  const auto e = character_counterexample(101);
  CHECK(e.size() == 34);
  CHECK_FALSE(find_additive_triple(e));
  // A set closed under addition is caught.
  CHECK(find_additive_triple(Subset::all(FiniteField::prime(5))));
}

TEST_CASE("vector-space search") {
  const auto f5 = FiniteField::prime(5);
  const std::vector<Index> ones = {1, 1};
  const auto hit = vector_space_pattern_search(f5, 2, ones, IndexSet::full(25));
  REQUIRE(hit);
  CHECK(hit->u == 1);
  CHECK(hit->y == std::vector<Index>{0, 0});
  CHECK_THROWS_AS(vector_space_pattern_search(f5, 2, std::vector<Index>{1, 0}, IndexSet::full(25)), InvalidAlpha);
  CHECK_THROWS_AS(vector_space_pattern_search(f5, 2, std::vector<Index>{1}, IndexSet::full(25)), InvalidAlpha);

  SUBCASE("d = 1 agrees with the witness search") {
    // {(a, b) : a + b in B, ab in B} is symmetric, so "some pair with a != 0"
    // and "some pair with b != 0" are the same condition.
    Rng rng(8);
    for (std::uint32_t q : {5u, 7u, 9u}) {
      const auto f = FiniteField::of_order(q);
      for (int i = 0; i < 40; ++i) {
        const auto b = random_subset(f, rng);
        const auto h = vector_space_pattern_search(f, 1, std::vector<Index>{1}, b.mask());
        CHECK(h.has_value() == !sumprod_witnesses(b, b).empty());
      }
    }
  }

  SUBCASE("the size hypothesis") {
    // In GF(5)^2 the hypothesis needs |B| >= 28 > 25 points, so it never applies.
    for (std::size_t k = 0; k <= 25; ++k) CHECK_FALSE(vector_search_guaranteed(5, 2, k));
    CHECK(vector_search_guaranteed(5, 2, 28));
    CHECK_FALSE(vector_search_guaranteed(5, 2, 27));
    // GF(7)^2 needs |B|^2 > 6 * 7^3, i.e. |B| >= 46 of 49 points.
    CHECK(vector_search_guaranteed(7, 2, 46));
    CHECK_FALSE(vector_search_guaranteed(7, 2, 45));
    Rng rng(12);
    const auto f7 = FiniteField::prime(7);
    const std::vector<Index> alpha = {1, 2};
    for (int i = 0; i < 200; ++i) {
      const auto idx = rng.sample(49, static_cast<std::uint32_t>(rng.between(46, 49)));
      REQUIRE(vector_space_pattern_search(f7, 2, alpha, IndexSet::from_indices(49, idx)));
    }
  }

  SUBCASE("witnesses satisfy the pattern") {
    Rng rng(13);
    const auto f = FiniteField::of_order(9);
    const std::vector<Index> alpha = {2, 5};
    for (int i = 0; i < 50; ++i) {
      const auto idx = rng.sample(81, static_cast<std::uint32_t>(rng.between(5, 40)));
      const auto b = IndexSet::from_indices(81, idx);
      const auto h = vector_space_pattern_search(f, 2, alpha, b);
      if (!h) continue;
      std::vector<Index> shifted(2), scaled(2);
      for (int j = 0; j < 2; ++j) {
        shifted[j] = f.add(h->y[j], f.mul(h->u, alpha[j]));
        scaled[j] = f.mul(h->y[j], h->u);
      }
      CHECK(b.contains(static_cast<Index>(vector_index(9, shifted))));
      CHECK(b.contains(static_cast<Index>(vector_index(9, scaled))));
      CHECK(vector_coords(9, 2, vector_index(9, h->y)) == h->y);
    }
  }
}

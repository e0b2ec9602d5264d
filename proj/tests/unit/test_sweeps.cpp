#include "doctest.h"

#include "sumprod/errors.hpp"
#include "sumprod/sweeps.hpp"

using namespace sumprod;

TEST_CASE("registry") {
  CHECK(sweep_names().size() == 9);
  CHECK(sweep_names().front() == "finitefield-existence");
  CHECK_THROWS_AS(run_sweep("unknown-name"), Error);
}

TEST_CASE("prime powers") {
  CHECK(prime_powers(2, 16) == std::vector<std::uint32_t>{2, 3, 4, 5, 7, 8, 9, 11, 13, 16});
  CHECK(prime_powers(8, 64).size() == 22);
}

TEST_CASE("derived seeds separate suites and fields") {
  CHECK(derived_seed(0, "a", 8) == derived_seed(0, "a", 8));
  CHECK(derived_seed(0, "a", 8) != derived_seed(0, "b", 8));
  CHECK(derived_seed(0, "a", 8) != derived_seed(0, "a", 9));
  CHECK(derived_seed(0, "a", 8) != derived_seed(1, "a", 8));
}

TEST_CASE("reports do not depend on the thread count") {
  for (const char* name : {"counterexample", "degenerate-pairs", "density-bound", "finitefield-existence"}) {
    const auto one = to_json(run_sweep(name, {0, 1})).dump();
    const auto many = to_json(run_sweep(name, {0, 4})).dump();
    CHECK(one == many);
  }
}

TEST_CASE("the seed changes random instances but not the verdict") {
  const auto a = run_sweep("density-bound", {0, 1});
  const auto b = run_sweep("density-bound", {17, 1});
  CHECK(a.passed);
  CHECK(b.passed);
  CHECK(to_json(a).dump() != to_json(b).dump());
}

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace sumprod {

struct SweepOptions {
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

/// Outcome of one named verification suite. Reports contain no timings, so
/// the same options always produce identical results.
struct SweepResult {
  std::string name;
  std::string description;
  /// All gating checks passed.
  bool passed = true;
  std::uint64_t instances = 0;
  std::uint64_t failures = 0;
  /// Instances whose bound was <= 0 (counted as passes).
  std::uint64_t vacuous = 0;
  /// Per-field or per-parameter summaries and any non-gating findings.
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
  /// The first few failing instances, in sweep order.
  std::vector<nlohmann::ordered_json> counterexamples;
};

/// Fixed order: finitefield-existence, cardinality-bound, twisted-average,
/// norm-inequality, projection-commutation, density-bound, counterexample,
/// degenerate-pairs, folner-diagnostics.
const std::vector<std::string>& sweep_names();

/// Throws Error for an unknown name.
SweepResult run_sweep(std::string_view name, const SweepOptions& options = {});

/// Per-field RNG seed: a fixed mix of the user seed, the suite and q.
std::uint64_t derived_seed(std::uint64_t seed, std::string_view suite, std::uint64_t q);

/// Prime powers in [lo, hi], ascending.
std::vector<std::uint32_t> prime_powers(std::uint32_t lo, std::uint32_t hi);

nlohmann::ordered_json to_json(const SweepResult& result);

}  // namespace sumprod

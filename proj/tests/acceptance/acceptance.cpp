// Acceptance driver: one PASS/FAIL line per criterion. Exits nonzero when a
// gating criterion fails. Criterion 9 is split: 9a (exact identities) gates,
// 9b (empirical invariance target) is reported with its finding.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "../oracles/equivalence.hpp"
#include "sumprod/sweeps.hpp"

namespace {

using namespace sumprod;
using Clock = std::chrono::steady_clock;

// Pinned limits. All mathematical comparisons are exact; these are the only
// numeric tolerances in the acceptance run.
constexpr double kExistenceSeconds = 300.0;
constexpr double kCounterexampleSeconds = 60.0;
constexpr std::uint64_t kAllowedFailures = 0;
constexpr const char* kInvarianceTarget = "9/10";

struct Outcome {
  bool pass;
  std::string detail;
};

int gating_failures = 0;

void report(const std::string& id, const std::string& title, bool gating, const Outcome& o) {
  std::printf("%-4s %s  %s  (%s)%s\n", id.c_str(), o.pass ? "PASS" : "FAIL", title.c_str(), o.detail.c_str(),
              gating ? "" : " [reported, not gating]");
  std::fflush(stdout);
  if (gating && !o.pass) ++gating_failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string counts(const SweepResult& r) {
  return "instances=" + std::to_string(r.instances) + " failures=" + std::to_string(r.failures) +
         " vacuous=" + std::to_string(r.vacuous);
}

Outcome sweep_outcome(const std::string& name, double time_limit = 0.0) {
  const auto t0 = Clock::now();
  const auto r = run_sweep(name);
  const double secs = seconds_since(t0);
  bool pass = r.passed && r.failures == kAllowedFailures;
  std::string detail = counts(r);
  if (time_limit > 0.0) {
    pass = pass && secs < time_limit;
    char buf[64];
    std::snprintf(buf, sizeof buf, " time=%.1fs limit=%.0fs", secs, time_limit);
    detail += buf;
  }
  if (name == "twisted-average") {
    detail += " two_sided_misses=" + r.details["two_sided_concentration_misses"].dump();
  }
  if (name == "density-bound") {
    std::uint64_t nonvacuous = 0;
    for (const auto& f : r.details["fields"]) nonvacuous += f["nonvacuous"].get<std::uint64_t>();
    detail += " nonvacuous=" + std::to_string(nonvacuous);
  }
  return {pass, detail};
}

}  // namespace

int main() {
  report("1", "finite-field existence: witnesses nonempty when |E1||E2| > 6|F|", true,
         sweep_outcome("finitefield-existence", kExistenceSeconds));
  report("2", "cardinality bound |D| >= bound, s in {0, 1}", true, sweep_outcome("cardinality-bound"));
  report("3", "twisted average >= <1_B, P 1_C> - sqrt(6 mu(B) mu(C)/|F*|) and <1_B, P 1_B> >= mu(B)^2", true,
         sweep_outcome("twisted-average"));
  report("4", "norm inequality ||sum_u M_u A_{-u} f||^2 <= 3|F*| ||f||^2", true, sweep_outcome("norm-inequality"));
  report("5", "projection commutation deviation exactly 0", true, sweep_outcome("projection-commutation"));
  report("6", "density bound on |D_delta|/|F*|", true, sweep_outcome("density-bound"));
  report("7", "interval sets contain no u, y, u + y for primes p <= 1000", true,
         sweep_outcome("counterexample", kCounterexampleSeconds));
  report("8", "degenerate-pair formula equals brute force for q <= 64", true, sweep_outcome("degenerate-pairs"));

  const auto folner = run_sweep("folner-diagnostics");
  report("9a", "scaling and inversion identities hold exactly", true,
         {folner.passed && folner.failures == kAllowedFailures, counts(folner)});
  const bool trend = folner.details["trend_nondecreasing"].get<bool>();
  const bool target = folner.details["target_met"].get<bool>();
  std::string finding = std::string("nondecreasing=") + (trend ? "yes" : "no") + " N=3 above " + kInvarianceTarget +
                        "=" + (target ? "yes" : "no");
  for (const auto& row : folner.details["rows"]) {
    if (row["n"].get<int>() != 3) continue;
    for (const auto& p : row["probes"]) {
      char buf[96];
      std::snprintf(buf, sizeof buf, " %s(%s)=%.4f", p["mode"].get<std::string>().substr(0, 3).c_str(),
                    p["x"].get<std::string>().c_str(), p["approx"].get<double>());
      finding += buf;
    }
  }
  report("9b", "invariance ratios nondecreasing in N and above 0.9 at N = 3", false, {trend && target, finding});
  if (folner.details.contains("parameterization_finding")) {
    std::printf("     finding: %s\n", folner.details["parameterization_finding"].get<std::string>().c_str());
  }

  const auto w = oracle::check_witnesses();
  const auto t = oracle::check_threshold_sets();
  const auto a = oracle::check_twisted_average();
  const std::uint64_t mismatches = w.mismatches + t.mismatches + a.mismatches;
  report("10", "library agrees with brute-force oracles for q <= 11", true,
         {mismatches == kAllowedFailures,
          "witnesses=" + std::to_string(w.instances) + " threshold=" + std::to_string(t.instances) +
              " twisted=" + std::to_string(a.instances) + " mismatches=" + std::to_string(mismatches)});

  std::printf("gating failures: %d\n", gating_failures);
  return gating_failures == 0 ? 0 : 1;
}

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "sumprod/predicate.hpp"
#include "sumprod/rational.hpp"

namespace sumprod {

enum class InvarianceMode { additive, multiplicative };

/// Parameters of F = {a/P + k/D : a in U, 1 <= k <= add_count} with
/// U = {prod p_i^{e_i} : |e_i| <= exp_bound} over the first prime_count primes
/// and D = (prod p_i)^den_exp.
struct FolnerSpec {
  std::uint32_t prime_count = 1;
  std::uint32_t exp_bound = 1;
  std::uint32_t den_exp = 1;
  std::uint64_t add_count = 1;
  /// P; when absent, safe_base_prime() is used.
  std::optional<std::uint64_t> base_prime;
  /// add_count was lowered to respect an element budget.
  bool cap_limited = false;

  /// "folner(primes=2,e=2,m=1,k=40000,P=...)".
  std::string descriptor() const;
};

/// 2, 3, 5, ... (n of them).
std::vector<std::uint64_t> first_primes(std::uint32_t n);

/// Smallest prime above max(p_N, (prod p_i)^(2e)). Any a != a' in U differ by
/// a fraction whose numerator is below (prod p_i)^(2e), so such a P never
/// divides it and every a/P + k/D is distinct.
std::uint64_t safe_base_prime(std::uint32_t prime_count, std::uint32_t exp_bound);

/// How the default family chooses its denominator exponent m.
enum class DenominatorRule {
  /// m = 1: D = prod p_i, so the probes 1 and 1/2 are multiples of 1/D.
  unit,
  /// m = 2N^2.
  quadratic,
};

struct FamilyParams {
  /// Upper limit on |F_N|; add_count is reduced to fit.
  std::uint64_t element_cap = 1'000'000;
  DenominatorRule den_rule = DenominatorRule::unit;
};

/// First N primes, e = N, add_count = min((prod p)^(3N), cap / (2N+1)^N).
FolnerSpec default_folner_spec(std::uint32_t n, const FamilyParams& params = {});

/// A finite set of distinct rationals with O(1) membership. Sets built from a
/// FolnerSpec also remember each element's (a, k) coordinates; element i has
/// a_index = i / add_count and k = i % add_count + 1.
class FolnerSet {
 public:
  /// Throws DegenerateSpec for invalid parameters, a base prime that is not a
  /// prime above every p_i, or any coincidence a/P + k/D = a'/P + k'/D.
  static FolnerSet build(const FolnerSpec& spec);
  /// Throws DegenerateSpec on duplicates.
  static FolnerSet from_elements(std::vector<Rational> elements, std::string label);

  const std::vector<Rational>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool contains(const Rational& x) const { return members_.count(x) != 0; }
  const std::optional<FolnerSpec>& spec() const { return spec_; }
  const std::string& label() const { return label_; }
  /// U in generation order (empty for derived sets).
  const std::vector<Rational>& multipliers() const { return multipliers_; }
  std::uint64_t base_prime() const { return base_prime_; }
  std::optional<FolnerCoords> coords(std::size_t i) const;

  /// bF. Throws ZeroDilation for b = 0.
  FolnerSet scaled(const Rational& b) const;
  /// F^{-1}. Throws ContainsZero when 0 is an element.
  FolnerSet inverted() const;

  /// Counts x in F with x + t in F (additive) or x*t in F (multiplicative).
  std::uint64_t count_hits(const Rational& t, InvarianceMode mode, unsigned threads = 1) const;

 private:
  void index_numerators();

  std::vector<Rational> elements_;
  std::unordered_set<Rational, RationalHash> members_;
  std::optional<FolnerSpec> spec_;
  std::vector<Rational> multipliers_;
  std::uint64_t base_prime_ = 0;
  std::string label_;
  // When every element is n/L for one L and all |n| fit in 62 bits, the
  // numerators n give an integer-keyed copy of the set.
  std::int64_t common_den_ = 0;
  std::vector<std::int64_t> numerators_;
  std::unordered_set<std::int64_t> numerator_set_;
};

std::string to_string(InvarianceMode mode);

/// |F ∩ (F + x)| / |F| or |F ∩ xF| / |F|. Throws ZeroDilation for a
/// multiplicative probe x = 0.
Rational invariance_ratio(const FolnerSet& f, const Rational& x, InvarianceMode mode, unsigned threads = 1);

struct IdentityCheck {
  Rational probe;
  InvarianceMode mode;
  /// The transformed family's ratio at probe.
  Rational transformed_ratio;
  /// The original family's ratio at the substituted probe.
  Rational substituted_probe;
  Rational original_ratio;
  bool equal = false;
};

struct FamilyCheckReport {
  std::string transform;
  std::vector<IdentityCheck> checks;
  bool all_equal = true;
};

/// For bF: multiplicative ratio at x equals F's at x; additive ratio at x
/// equals F's at x/b. Throws ZeroDilation for b = 0.
FamilyCheckReport scaled_family_check(const FolnerSet& f, const Rational& b, const std::vector<Rational>& additive_probes,
                                      const std::vector<Rational>& multiplicative_probes, unsigned threads = 1);

/// For F^{-1}: multiplicative ratio at x equals F's at 1/x. Throws
/// ContainsZero when 0 is in F and ZeroDilation for a probe x = 0.
FamilyCheckReport inverse_family_check(const FolnerSet& f, const std::vector<Rational>& probes, unsigned threads = 1);

struct DensityRow {
  std::uint32_t n = 0;
  FolnerSpec spec;
  std::uint64_t size = 0;
  std::uint64_t hits = 0;
  Rational ratio;
};

/// Exact |E ∩ F_N| / |F_N| along the default family. `upper` / `lower` are
/// the max / min over the computed rows: a truncated estimate of the
/// limsup / liminf, never the limit itself.
struct DensityReport {
  std::string predicate;
  std::vector<DensityRow> rows;
  Rational upper;
  Rational lower;
};

DensityReport density(const Predicate& e, std::uint32_t n_min, std::uint32_t n_max, const FamilyParams& params = {},
                      unsigned threads = 1);

struct DensityCandidate {
  Rational u;
  /// |{x in F_N : x + u in E and x*u in E}| / |F_N|.
  Rational density;
  bool qualifies = false;
};

struct DensityExperimentReport {
  std::string predicate;
  std::uint32_t n = 0;
  FolnerSpec spec;
  Rational eps;
  /// |E ∩ F_N| / |F_N|.
  Rational d_e;
  /// d_e^2 - eps.
  Rational threshold;
  /// threshold < 0, so every u qualifies trivially.
  bool vacuous = false;
  std::vector<DensityCandidate> candidates;
  std::uint64_t probed = 0;
  std::uint64_t qualifying = 0;
  Rational qualifying_fraction;
  /// eps / (eps + d_e - d_e^2).
  Rational d_lower_bound;
  Rational slack;
  /// qualifying_fraction >= d_lower_bound - slack (an empirical comparison).
  bool meets_bound_with_slack = false;
  /// Fewer than |F_N| values of u were probed.
  bool budget_exceeded = false;
};

/// Probes the first min(|F_N|, probe_budget) elements u of F_N. The
/// predicate must be value-only since it is evaluated at x + u and x*u.
/// Throws InvalidThreshold unless eps > 0.
DensityExperimentReport sumprod_density_experiment(const Predicate& e, std::uint32_t n, const Rational& eps,
                                                   std::uint64_t probe_budget, const Rational& slack = Rational(1, 10),
                                                   const FamilyParams& params = {}, unsigned threads = 1);

}  // namespace sumprod

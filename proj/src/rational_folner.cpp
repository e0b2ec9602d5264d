#include "sumprod/rational_folner.hpp"

#include <algorithm>
#include <limits>

#include "sumprod/errors.hpp"
#include "sumprod/parallel.hpp"
#include "sumprod/polynomial.hpp"

namespace sumprod {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();
// Hard ceiling on any set this module materializes.
constexpr std::uint64_t kMaxElements = 50'000'000;

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp; ++i) out = saturating_mul(out, base);
  return out;
}

std::uint64_t primorial(std::uint32_t n) {
  std::uint64_t out = 1;
  for (auto p : first_primes(n)) out = saturating_mul(out, p);
  return out;
}

// Splits [0, n) into contiguous chunks and sums a per-index count.
template <class Fn>
std::uint64_t parallel_count(std::size_t n, unsigned threads, Fn&& fn) {
  const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(n, std::max(1u, threads) * 4));
  const auto parts = ordered_map<std::uint64_t>(chunks, threads, [&](std::size_t c) {
    const std::size_t lo = n * c / chunks;
    const std::size_t hi = n * (c + 1) / chunks;
    std::uint64_t count = 0;
    for (std::size_t i = lo; i < hi; ++i) count += fn(i) ? 1 : 0;
    return count;
  });
  std::uint64_t total = 0;
  for (auto x : parts) total += x;
  return total;
}

}  // namespace

std::string FolnerSpec::descriptor() const {
  std::string out = "folner(primes=" + std::to_string(prime_count) + ",e=" + std::to_string(exp_bound) +
                    ",m=" + std::to_string(den_exp) + ",k=" + std::to_string(add_count);
  if (base_prime) out += ",P=" + std::to_string(*base_prime);
  return out + ")";
}

std::vector<std::uint64_t> first_primes(std::uint32_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t c = 2; out.size() < n; ++c) {
    if (poly::is_prime_u64(c)) out.push_back(c);
  }
  return out;
}

std::uint64_t safe_base_prime(std::uint32_t prime_count, std::uint32_t exp_bound) {
  const auto primes = first_primes(prime_count);
  const std::uint64_t spread = saturating_pow(primorial(prime_count), 2ull * exp_bound);
  if (spread >= kSaturated / 2) throw DegenerateSpec("no 64-bit base prime is large enough for these parameters");
  std::uint64_t candidate = std::max(primes.back(), spread) + 1;
  while (!poly::is_prime_u64(candidate)) ++candidate;
  return candidate;
}

FolnerSpec default_folner_spec(std::uint32_t n, const FamilyParams& params) {
  if (n < 1) throw DegenerateSpec("family index N must be >= 1");
  FolnerSpec spec;
  spec.prime_count = n;
  spec.exp_bound = n;
  spec.den_exp = params.den_rule == DenominatorRule::unit ? 1 : 2 * n * n;
  const std::uint64_t u_size = saturating_pow(2 * n + 1, n);
  const std::uint64_t natural = saturating_pow(primorial(n), 3ull * n);
  const std::uint64_t allowed = std::max<std::uint64_t>(1, params.element_cap / u_size);
  spec.add_count = std::min(natural, allowed);
  spec.cap_limited = allowed < natural;
  spec.base_prime = safe_base_prime(n, n);
  return spec;
}

FolnerSet FolnerSet::build(const FolnerSpec& spec) {
  if (spec.prime_count < 1 || spec.exp_bound < 1 || spec.den_exp < 1 || spec.add_count < 1) {
    throw DegenerateSpec("prime_count, exp_bound, den_exp and add_count must all be >= 1");
  }
  const auto primes = first_primes(spec.prime_count);
  const std::uint64_t big_p = spec.base_prime ? *spec.base_prime : safe_base_prime(spec.prime_count, spec.exp_bound);
  if (!poly::is_prime_u64(big_p)) throw DegenerateSpec("base prime P = " + std::to_string(big_p) + " is not prime");
  if (big_p <= primes.back()) {
    throw DegenerateSpec("base prime P = " + std::to_string(big_p) + " must exceed every prime in P_N (largest " +
                         std::to_string(primes.back()) + ")");
  }
  const std::uint64_t u_size = saturating_pow(2ull * spec.exp_bound + 1, spec.prime_count);
  if (saturating_mul(u_size, spec.add_count) > kMaxElements) {
    throw BudgetExceeded("Følner set would exceed " + std::to_string(kMaxElements) + " elements");
  }

  FolnerSet set;
  set.spec_ = spec;
  set.spec_->base_prime = big_p;
  set.base_prime_ = big_p;
  set.label_ = set.spec_->descriptor();

  // U in odometer order over (e_1, .., e_N), e_1 varying fastest, each from -e to e.
  const int e = static_cast<int>(spec.exp_bound);
  std::vector<int> exps(spec.prime_count, -e);
  while (true) {
    Rational a = 1;
    for (std::size_t i = 0; i < primes.size(); ++i) {
      const BigInt power = boost::multiprecision::pow(BigInt(primes[i]), static_cast<unsigned>(std::abs(exps[i])));
      a *= exps[i] >= 0 ? Rational(power) : Rational(BigInt(1), power);
    }
    set.multipliers_.push_back(a);
    std::size_t i = 0;
    while (i < exps.size() && ++exps[i] > e) exps[i++] = -e;
    if (i == exps.size()) break;
  }

  BigInt den = 1;
  for (auto p : primes) den *= p;
  den = boost::multiprecision::pow(den, spec.den_exp);

  const std::size_t total = set.multipliers_.size() * spec.add_count;
  set.elements_.reserve(total);
  set.members_.reserve(total);
  for (const Rational& a : set.multipliers_) {
    const Rational base = a / Rational(BigInt(big_p));
    for (std::uint64_t k = 1; k <= spec.add_count; ++k) {
      Rational x = base + Rational(BigInt(k), den);
      if (!set.members_.insert(x).second) {
        throw DegenerateSpec("elements coincide (" + to_string(x) + " appears twice); base prime P = " +
                             std::to_string(big_p) + " is too small for these parameters");
      }
      set.elements_.push_back(std::move(x));
    }
  }
  set.index_numerators();
  return set;
}

FolnerSet FolnerSet::from_elements(std::vector<Rational> elements, std::string label) {
  FolnerSet set;
  set.label_ = std::move(label);
  set.members_.reserve(elements.size());
  for (const auto& x : elements) {
    if (!set.members_.insert(x).second) throw DegenerateSpec("duplicate element " + to_string(x));
  }
  set.elements_ = std::move(elements);
  set.index_numerators();
  return set;
}

void FolnerSet::index_numerators() {
  const BigInt limit = BigInt(1) << 62;
  BigInt den = 1;
  for (const auto& x : elements_) {
    den = boost::multiprecision::lcm(den, denominator_of(x));
    if (den >= limit) return;
  }
  std::vector<std::int64_t> nums;
  nums.reserve(elements_.size());
  for (const auto& x : elements_) {
    const BigInt n = numerator_of(x) * (den / denominator_of(x));
    if (abs(n) >= limit) return;
    nums.push_back(static_cast<std::int64_t>(n));
  }
  common_den_ = static_cast<std::int64_t>(den);
  numerators_ = std::move(nums);
  numerator_set_ = std::unordered_set<std::int64_t>(numerators_.begin(), numerators_.end());
}

std::uint64_t FolnerSet::count_hits(const Rational& t, InvarianceMode mode, unsigned threads) const {
  if (common_den_ == 0) {
    return parallel_count(elements_.size(), threads, [&](std::size_t i) {
      return contains(mode == InvarianceMode::additive ? Rational(elements_[i] + t) : Rational(elements_[i] * t));
    });
  }
  __extension__ using Wide = __int128;
  const Wide limit = Wide(1) << 62;
  const BigInt r = numerator_of(t);
  const BigInt s = denominator_of(t);
  if (abs(r) >= BigInt(limit) || s >= BigInt(limit)) {
    return parallel_count(elements_.size(), threads, [&](std::size_t i) {
      return contains(mode == InvarianceMode::additive ? Rational(elements_[i] + t) : Rational(elements_[i] * t));
    });
  }
  const auto num = static_cast<std::int64_t>(r);
  const auto den = static_cast<std::int64_t>(s);
  auto member = [&](Wide n) { return n > -limit && n < limit && numerator_set_.count(static_cast<std::int64_t>(n)) != 0; };
  if (mode == InvarianceMode::additive) {
    // n/L + r/s has the form n'/L only when s divides L.
    if (common_den_ % den != 0) return 0;
    const Wide step = Wide(num) * (common_den_ / den);
    return parallel_count(numerators_.size(), threads, [&](std::size_t i) { return member(numerators_[i] + step); });
  }
  // (n/L)(r/s) = (n r / s)/L, an element only when s divides n.
  return parallel_count(numerators_.size(), threads, [&](std::size_t i) {
    const std::int64_t n = numerators_[i];
    return n % den == 0 && member(Wide(n / den) * num);
  });
}

std::optional<FolnerCoords> FolnerSet::coords(std::size_t i) const {
  if (!spec_ || i >= elements_.size()) return std::nullopt;
  return FolnerCoords{static_cast<std::uint32_t>(i / spec_->add_count), i % spec_->add_count + 1};
}

FolnerSet FolnerSet::scaled(const Rational& b) const {
  if (b == 0) throw ZeroDilation();
  std::vector<Rational> out;
  out.reserve(elements_.size());
  for (const auto& x : elements_) out.push_back(b * x);
  return from_elements(std::move(out), sumprod::to_string(b) + "*" + label_);
}

FolnerSet FolnerSet::inverted() const {
  if (contains(Rational(0))) throw ContainsZero();
  std::vector<Rational> out;
  out.reserve(elements_.size());
  for (const auto& x : elements_) out.push_back(1 / x);
  return from_elements(std::move(out), "inverse(" + label_ + ")");
}

std::string to_string(InvarianceMode mode) { return mode == InvarianceMode::additive ? "additive" : "multiplicative"; }

Rational invariance_ratio(const FolnerSet& f, const Rational& x, InvarianceMode mode, unsigned threads) {
  if (mode == InvarianceMode::multiplicative && x == 0) throw ZeroDilation();
  if (f.size() == 0) return Rational(0);
  const std::uint64_t hits = f.count_hits(x, mode, threads);
  return Rational(BigInt(hits), BigInt(f.size()));
}

FamilyCheckReport scaled_family_check(const FolnerSet& f, const Rational& b, const std::vector<Rational>& additive_probes,
                                      const std::vector<Rational>& multiplicative_probes, unsigned threads) {
  const FolnerSet bf = f.scaled(b);
  FamilyCheckReport report{"scale by " + to_string(b), {}, true};
  for (const auto& x : additive_probes) {
    IdentityCheck c{x, InvarianceMode::additive, invariance_ratio(bf, x, InvarianceMode::additive, threads), x / b, 0};
    c.original_ratio = invariance_ratio(f, c.substituted_probe, InvarianceMode::additive, threads);
    c.equal = c.transformed_ratio == c.original_ratio;
    report.all_equal = report.all_equal && c.equal;
    report.checks.push_back(std::move(c));
  }
  for (const auto& x : multiplicative_probes) {
    IdentityCheck c{x, InvarianceMode::multiplicative, invariance_ratio(bf, x, InvarianceMode::multiplicative, threads),
                    x, 0};
    c.original_ratio = invariance_ratio(f, x, InvarianceMode::multiplicative, threads);
    c.equal = c.transformed_ratio == c.original_ratio;
    report.all_equal = report.all_equal && c.equal;
    report.checks.push_back(std::move(c));
  }
  return report;
}

FamilyCheckReport inverse_family_check(const FolnerSet& f, const std::vector<Rational>& probes, unsigned threads) {
  const FolnerSet inv = f.inverted();
  FamilyCheckReport report{"inverse", {}, true};
  for (const auto& x : probes) {
    if (x == 0) throw ZeroDilation();
    IdentityCheck c{x, InvarianceMode::multiplicative, invariance_ratio(inv, x, InvarianceMode::multiplicative, threads),
                    1 / x, 0};
    c.original_ratio = invariance_ratio(f, c.substituted_probe, InvarianceMode::multiplicative, threads);
    c.equal = c.transformed_ratio == c.original_ratio;
    report.all_equal = report.all_equal && c.equal;
    report.checks.push_back(std::move(c));
  }
  return report;
}

DensityReport density(const Predicate& e, std::uint32_t n_min, std::uint32_t n_max, const FamilyParams& params,
                      unsigned threads) {
  if (n_min < 1 || n_max < n_min) throw DegenerateSpec("density needs 1 <= N_min <= N_max");
  DensityReport report{e.to_string(), {}, 0, 0};
  for (std::uint32_t n = n_min; n <= n_max; ++n) {
    DensityRow row;
    row.n = n;
    row.spec = default_folner_spec(n, params);
    const FolnerSet f = FolnerSet::build(row.spec);
    row.spec = *f.spec();
    row.size = f.size();
    row.hits = parallel_count(f.size(), threads, [&](std::size_t i) { return e(f.elements()[i], f.coords(i)); });
    row.ratio = Rational(BigInt(row.hits), BigInt(row.size));
    if (report.rows.empty()) {
      report.upper = report.lower = row.ratio;
    } else {
      report.upper = std::max(report.upper, row.ratio);
      report.lower = std::min(report.lower, row.ratio);
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

DensityExperimentReport sumprod_density_experiment(const Predicate& e, std::uint32_t n, const Rational& eps,
                                                   std::uint64_t probe_budget, const Rational& slack,
                                                   const FamilyParams& params, unsigned threads) {
  if (eps <= 0) throw InvalidThreshold("eps must be positive");
  if (!e.value_only()) throw Error("the density experiment evaluates E at x + u and x*u, so vpart terms are not allowed");
  DensityExperimentReport r;
  r.predicate = e.to_string();
  r.n = n;
  const FolnerSet f = FolnerSet::build(default_folner_spec(n, params));
  r.spec = *f.spec();
  r.eps = eps;
  r.slack = slack;
  const auto& elems = f.elements();
  const std::uint64_t in_e = parallel_count(elems.size(), threads, [&](std::size_t i) { return e(elems[i]); });
  const BigInt size(f.size());
  r.d_e = Rational(BigInt(in_e), size);
  r.threshold = r.d_e * r.d_e - eps;
  r.vacuous = r.threshold < 0;
  r.d_lower_bound = eps / (eps + r.d_e - r.d_e * r.d_e);

  r.probed = std::min<std::uint64_t>(f.size(), probe_budget);
  r.budget_exceeded = r.probed < f.size();
  // E membership of every x is reused; only x + u and x*u vary with u.
  const auto densities = ordered_map<Rational>(r.probed, threads, [&](std::size_t j) {
    const Rational& u = elems[j];
    std::uint64_t hits = 0;
    for (const auto& x : elems) {
      if (e(x + u) && e(x * u)) ++hits;
    }
    return Rational(BigInt(hits), size);
  });
  for (std::size_t j = 0; j < r.probed; ++j) {
    DensityCandidate c{elems[j], densities[j], densities[j] > r.threshold};
    if (c.qualifies) ++r.qualifying;
    r.candidates.push_back(std::move(c));
  }
  r.qualifying_fraction = r.probed == 0 ? Rational(0) : Rational(BigInt(r.qualifying), BigInt(r.probed));
  r.meets_bound_with_slack = r.qualifying_fraction >= r.d_lower_bound - slack;
  return r;
}

}  // namespace sumprod

#include "sumprod/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sumprod/errors.hpp"
#include "sumprod/parallel.hpp"
#include "sumprod/pattern_search.hpp"

namespace sumprod {

namespace {

Permutation identity_permutation(std::uint32_t m) {
  Permutation p(m);
  std::iota(p.begin(), p.end(), 0u);
  return p;
}

Permutation then(const Permutation& first, const Permutation& second) {
  Permutation out(first.size());
  for (std::size_t x = 0; x < first.size(); ++x) out[x] = second[first[x]];
  return out;
}

bool is_bijection(const Permutation& p, std::uint32_t m) {
  if (p.size() != m) return false;
  std::vector<bool> seen(m, false);
  for (auto y : p) {
    if (y >= m || seen[y]) return false;
    seen[y] = true;
  }
  return true;
}

std::uint32_t find_root(std::vector<std::uint32_t>& parent, std::uint32_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

FiniteAction FiniteAction::regular(const FiniteField& field) {
  FiniteAction a;
  a.field_ = field;
  a.m_ = field.order();
  a.label_ = "regular";
  const Index q = field.order();
  a.shifts_.assign(q, Permutation(q));
  a.dilations_.assign(q, Permutation());
  for (Index u = 0; u < q; ++u) {
    for (Index x = 0; x < q; ++x) a.shifts_[u][x] = field.add(x, u);
    if (u == 0) continue;
    a.dilations_[u].resize(q);
    for (Index x = 0; x < q; ++x) a.dilations_[u][x] = field.mul(u, x);
  }
  a.measure_.assign(q, Rational(1, q));
  a.ergodic_ = a.single_orbit();
  return a;
}

FiniteAction FiniteAction::vector_space(const FiniteField& field, std::uint32_t d, std::span<const Index> alpha) {
  if (d < 1) throw InvalidAction("dimension d must be >= 1");
  if (alpha.size() != d) throw InvalidAlpha("alpha must have exactly d = " + std::to_string(d) + " entries");
  for (Index x : alpha) {
    if (x == 0 || x >= field.order()) throw InvalidAlpha("every alpha_i must be a nonzero field element");
  }
  const Index q = field.order();
  std::uint64_t points = 1;
  for (std::uint32_t i = 0; i < d; ++i) {
    points *= q;
    if (points > kDefaultMaxOrder) throw FieldTooLarge("q^d exceeds the supported table size");
  }
  FiniteAction a;
  a.field_ = field;
  a.m_ = static_cast<std::uint32_t>(points);
  a.label_ = "vector_space(d=" + std::to_string(d) + ")";
  a.shifts_.assign(q, Permutation(a.m_));
  a.dilations_.assign(q, Permutation());
  std::vector<Index> image(d);
  for (Index u = 0; u < q; ++u) {
    if (u != 0) a.dilations_[u].resize(a.m_);
    for (std::uint32_t y = 0; y < a.m_; ++y) {
      const auto coords = vector_coords(q, d, y);
      for (std::uint32_t i = 0; i < d; ++i) image[i] = field.add(coords[i], field.mul(u, alpha[i]));
      a.shifts_[u][y] = static_cast<std::uint32_t>(vector_index(q, image));
      if (u == 0) continue;
      for (std::uint32_t i = 0; i < d; ++i) image[i] = field.mul(u, coords[i]);
      a.dilations_[u][y] = static_cast<std::uint32_t>(vector_index(q, image));
    }
  }
  a.measure_.assign(a.m_, Rational(1, a.m_));
  a.ergodic_ = a.single_orbit();
  return a;
}

FiniteAction FiniteAction::custom(const FiniteField& field, std::vector<Permutation> shifts,
                                  std::vector<Permutation> dilations, std::vector<Rational> measure,
                                  std::string label) {
  FiniteAction a;
  a.field_ = field;
  a.m_ = static_cast<std::uint32_t>(measure.size());
  a.label_ = std::move(label);
  a.shifts_ = std::move(shifts);
  a.dilations_ = std::move(dilations);
  a.measure_ = std::move(measure);
  a.uniform_ = std::all_of(a.measure_.begin(), a.measure_.end(),
                           [&](const Rational& r) { return r == a.measure_.front(); });
  a.validate();
  a.ergodic_ = a.single_orbit();
  return a;
}

void FiniteAction::validate() const {
  const Index q = field_.order();
  if (m_ == 0) throw InvalidAction("the space must be nonempty");
  if (shifts_.size() != q || dilations_.size() != q) {
    throw InvalidAction("expected " + std::to_string(q) + " shift and dilation tables");
  }
  if (!generators_are_bijections()) throw InvalidAction("a generator table is not a bijection of the space");
  Rational total = 0;
  for (const auto& w : measure_) {
    if (w < 0) throw InvalidAction("measure weights must be nonnegative");
    total += w;
  }
  if (total != 1) throw InvalidAction("measure must sum to 1, got " + to_string(total));
  if (!measure_preserved()) throw InvalidAction("measure is not preserved by every generator");
  if (!homomorphism_holds()) throw InvalidAction("generator tables violate the affine group relations");
}

std::uint32_t FiniteAction::apply(const AffineMap& g, std::uint32_t x) const {
  require_same_field(field_, g.field());
  return shifts_[g.shift()][dilations_[g.scale()][x]];
}

Permutation FiniteAction::permutation(const AffineMap& g) const {
  require_same_field(field_, g.field());
  return then(dilations_[g.scale()], shifts_[g.shift()]);
}

Permutation FiniteAction::twisted(Index u) const {
  if (u == 0) throw DivisionByZero("the twisted map M_u A_{-u} needs u != 0");
  return then(shifts_[field_.neg(u)], dilations_[u]);
}

bool FiniteAction::generators_are_bijections() const {
  for (Index u = 0; u < field_.order(); ++u) {
    if (!is_bijection(shifts_[u], m_)) return false;
    if (u != 0 && !is_bijection(dilations_[u], m_)) return false;
  }
  return true;
}

bool FiniteAction::homomorphism_holds() const {
  const Index q = field_.order();
  const Permutation id = identity_permutation(m_);
  if (shifts_[0] != id || dilations_[1] != id) return false;
  for (Index u = 0; u < q; ++u) {
    for (Index v = 0; v < q; ++v) {
      // A_v after A_u is A_{u+v}; M_v after M_u is M_{uv}.
      if (then(shifts_[u], shifts_[v]) != shifts_[field_.add(u, v)]) return false;
      if (u == 0 || v == 0) continue;
      if (then(dilations_[u], dilations_[v]) != dilations_[field_.mul(u, v)]) return false;
    }
  }
  for (Index u = 1; u < q; ++u) {
    for (Index v = 0; v < q; ++v) {
      // M_u A_v = A_{uv} M_u.
      if (then(shifts_[v], dilations_[u]) != then(dilations_[u], shifts_[field_.mul(u, v)])) return false;
    }
  }
  return true;
}

bool FiniteAction::measure_preserved() const {
  for (Index u = 0; u < field_.order(); ++u) {
    for (std::uint32_t x = 0; x < m_; ++x) {
      if (measure_[shifts_[u][x]] != measure_[x]) return false;
      if (u != 0 && measure_[dilations_[u][x]] != measure_[x]) return false;
    }
  }
  return true;
}

bool FiniteAction::single_orbit() const {
  std::vector<std::uint32_t> parent(m_);
  std::iota(parent.begin(), parent.end(), 0u);
  std::uint32_t components = m_;
  auto unite = [&](std::uint32_t a, std::uint32_t b) {
    a = find_root(parent, a);
    b = find_root(parent, b);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  };
  for (Index u = 0; u < field_.order(); ++u) {
    for (std::uint32_t x = 0; x < m_; ++x) {
      unite(x, shifts_[u][x]);
      if (u != 0) unite(x, dilations_[u][x]);
    }
  }
  return components == 1;
}

FunctionOnSpace::FunctionOnSpace(std::vector<BigInt> numerators, BigInt denominator)
    : num_(std::move(numerators)), den_(std::move(denominator)) {
  if (den_ == 0) throw DivisionByZero("function denominator is zero");
  if (den_ < 0) {
    den_ = -den_;
    for (auto& n : num_) n = -n;
  }
  reduce();
}

FunctionOnSpace FunctionOnSpace::from_rationals(std::span<const Rational> values) {
  BigInt den = 1;
  for (const auto& v : values) den = boost::multiprecision::lcm(den, denominator_of(v));
  std::vector<BigInt> num;
  num.reserve(values.size());
  for (const auto& v : values) num.push_back(numerator_of(v) * (den / denominator_of(v)));
  return FunctionOnSpace(std::move(num), std::move(den));
}

FunctionOnSpace FunctionOnSpace::indicator(const IndexSet& set) {
  std::vector<BigInt> num(set.universe());
  for (Index i : set.indices()) num[i] = 1;
  return FunctionOnSpace(std::move(num), 1);
}

FunctionOnSpace FunctionOnSpace::constant(std::size_t m, const Rational& c) {
  return FunctionOnSpace(std::vector<BigInt>(m, numerator_of(c)), denominator_of(c));
}

std::vector<Rational> FunctionOnSpace::values() const {
  std::vector<Rational> out;
  out.reserve(num_.size());
  for (const auto& n : num_) out.emplace_back(n, den_);
  return out;
}

void FunctionOnSpace::reduce() {
  BigInt g = den_;
  for (const auto& n : num_) {
    if (g == 1) break;
    if (n != 0) g = boost::multiprecision::gcd(g, n);
  }
  if (g > 1) {
    den_ /= g;
    for (auto& n : num_) n /= g;
  }
}

namespace {

FunctionOnSpace combine(const FunctionOnSpace& a, const FunctionOnSpace& b, int sign) {
  if (a.size() != b.size()) throw Error("functions live on spaces of different sizes");
  const BigInt den = boost::multiprecision::lcm(a.denominator(), b.denominator());
  const BigInt fa = den / a.denominator();
  const BigInt fb = den / b.denominator();
  std::vector<BigInt> num(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    num[i] = a.numerators()[i] * fa + sign * (b.numerators()[i] * fb);
  }
  return FunctionOnSpace(std::move(num), den);
}

void require_size(const FiniteAction& action, std::size_t m) {
  if (m != action.size()) throw Error("function or set size does not match the action's space");
}

}  // namespace

FunctionOnSpace operator+(const FunctionOnSpace& a, const FunctionOnSpace& b) { return combine(a, b, 1); }
FunctionOnSpace operator-(const FunctionOnSpace& a, const FunctionOnSpace& b) { return combine(a, b, -1); }

FunctionOnSpace koopman(const FiniteAction& action, const AffineMap& g, const FunctionOnSpace& f) {
  require_size(action, f.size());
  const Permutation perm = action.permutation(g);
  std::vector<BigInt> num(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) num[perm[x]] = f.numerators()[x];
  return FunctionOnSpace(std::move(num), f.denominator());
}

FunctionOnSpace proj_additive(const FiniteAction& action, const FunctionOnSpace& f) {
  require_size(action, f.size());
  const Index q = action.field().order();
  std::vector<BigInt> num(f.size());
  for (Index u = 0; u < q; ++u) {
    const auto& perm = action.shift(u);
    for (std::size_t x = 0; x < f.size(); ++x) num[x] += f.numerators()[perm[x]];
  }
  return FunctionOnSpace(std::move(num), f.denominator() * q);
}

FunctionOnSpace proj_multiplicative(const FiniteAction& action, const FunctionOnSpace& f) {
  require_size(action, f.size());
  const Index q = action.field().order();
  std::vector<BigInt> num(f.size());
  for (Index u = 1; u < q; ++u) {
    const auto& perm = action.dilation(u);
    for (std::size_t x = 0; x < f.size(); ++x) num[x] += f.numerators()[perm[x]];
  }
  return FunctionOnSpace(std::move(num), f.denominator() * (q - 1));
}

Rational inner_product(const FiniteAction& action, const FunctionOnSpace& f, const FunctionOnSpace& g) {
  require_size(action, f.size());
  require_size(action, g.size());
  if (action.uniform()) {
    BigInt total = 0;
    for (std::size_t x = 0; x < f.size(); ++x) total += f.numerators()[x] * g.numerators()[x];
    return Rational(total, f.denominator() * g.denominator() * action.size());
  }
  Rational total = 0;
  for (std::size_t x = 0; x < f.size(); ++x) {
    total += Rational(f.numerators()[x] * g.numerators()[x]) * action.measure()[x];
  }
  return total / Rational(f.denominator() * g.denominator());
}

Rational norm_squared(const FiniteAction& action, const FunctionOnSpace& f) { return inner_product(action, f, f); }

Rational measure_of(const FiniteAction& action, const IndexSet& set) {
  require_size(action, set.universe());
  if (action.uniform()) return Rational(set.size(), action.size());
  Rational total = 0;
  for (Index x : set.indices()) total += action.measure()[x];
  return total;
}

Rational check_projection_commutation(const FiniteAction& action, const FunctionOnSpace& f) {
  const FunctionOnSpace am = proj_additive(action, proj_multiplicative(action, f));
  const FunctionOnSpace ma = proj_multiplicative(action, proj_additive(action, f));
  const FunctionOnSpace diff = am - ma;
  BigInt worst = 0;
  for (const auto& n : diff.numerators()) worst = std::max(worst, BigInt(abs(n)));
  return Rational(worst, diff.denominator());
}

namespace {

// Number of c in C with g_u(c) in B, for each u in F* (uniform measures).
std::vector<std::uint64_t> twisted_counts(const FiniteAction& action, const IndexSet& b, const IndexSet& c,
                                          unsigned threads) {
  const auto members = c.indices();
  const Index q = action.field().order();
  return ordered_map<std::uint64_t>(q - 1, threads, [&](std::size_t i) {
    const Index u = static_cast<Index>(i + 1);
    const auto& shift = action.shift(action.field().neg(u));
    const auto& dil = action.dilation(u);
    std::uint64_t count = 0;
    for (Index x : members) count += b.contains(dil[shift[x]]) ? 1 : 0;
    return count;
  });
}

// <1_B, P_M P_A 1_C> as an integer count over the uniform measure:
// sum_{x in B} sum_{v in F*} sum_{u in F} 1_C(A_u M_v x), to be divided by m q (q-1).
std::uint64_t projected_count(const FiniteAction& action, const IndexSet& b, const IndexSet& c) {
  const Index q = action.field().order();
  const std::uint32_t m = action.size();
  std::vector<std::uint64_t> additive(m, 0);
  for (Index u = 0; u < q; ++u) {
    const auto& perm = action.shift(u);
    for (std::uint32_t y = 0; y < m; ++y) additive[y] += c.contains(perm[y]) ? 1 : 0;
  }
  std::uint64_t total = 0;
  for (Index x : b.indices()) {
    for (Index v = 1; v < q; ++v) total += additive[action.dilation(v)[x]];
  }
  return total;
}

Rational projected_inner(const FiniteAction& action, const IndexSet& b, const IndexSet& c) {
  const Index q = action.field().order();
  if (action.uniform()) {
    return Rational(BigInt(projected_count(action, b, c)), BigInt(action.size()) * q * (q - 1));
  }
  const FunctionOnSpace pc = proj_multiplicative(action, proj_additive(action, FunctionOnSpace::indicator(c)));
  return inner_product(action, FunctionOnSpace::indicator(b), pc);
}

}  // namespace

std::vector<Rational> twisted_intersections(const FiniteAction& action, const IndexSet& b, const IndexSet& c,
                                            unsigned threads) {
  require_size(action, b.universe());
  require_size(action, c.universe());
  const Index q = action.field().order();
  std::vector<Rational> out;
  out.reserve(q - 1);
  if (action.uniform()) {
    for (auto count : twisted_counts(action, b, c, threads)) out.emplace_back(count, action.size());
    return out;
  }
  const auto members = c.indices();
  for (Index u = 1; u < q; ++u) {
    const Permutation g = action.twisted(u);
    Rational total = 0;
    for (Index x : members) {
      if (b.contains(g[x])) total += action.measure()[x];
    }
    out.push_back(total);
  }
  return out;
}

TwistedAverageReport twisted_average(const FiniteAction& action, const IndexSet& b, const IndexSet& c,
                                     Arithmetic mode, unsigned threads) {
  require_size(action, b.universe());
  require_size(action, c.universe());
  const Index q = action.field().order();
  const Rational units(q - 1);
  TwistedAverageReport r;
  r.mu_b = measure_of(action, b);
  r.mu_c = measure_of(action, c);
  if (action.uniform()) {
    const auto counts = twisted_counts(action, b, c, threads);
    std::uint64_t total = 0;
    for (auto x : counts) total += x;
    r.average = Rational(BigInt(total), BigInt(action.size()) * (q - 1));
    r.positive_intersection = std::any_of(counts.begin(), counts.end(), [](auto x) { return x > 0; });
  } else {
    const auto parts = twisted_intersections(action, b, c, threads);
    Rational total = 0;
    for (const auto& x : parts) total += x;
    r.average = total / units;
    r.positive_intersection = std::any_of(parts.begin(), parts.end(), [](const Rational& x) { return x > 0; });
  }
  r.inner = projected_inner(action, b, c);
  r.self_inner = b == c ? r.inner : projected_inner(action, b, b);
  r.radicand = 6 * r.mu_b * r.mu_c / units;
  r.lower_bound_approx = to_double(r.inner) - std::sqrt(to_double(r.radicand));
  r.ergodic = action.is_ergodic();

  bool exact = true;
  const Rational gap = r.average - r.inner;
  auto settle = [&](const Rational& a, const Rational& coeff, const Rational& rad) {
    if (mode == Arithmetic::fast) {
      const double approx = to_double(a) + to_double(coeff) * std::sqrt(to_double(rad));
      if (std::abs(approx) > kFastTolerance) {
        exact = false;
        return approx > 0 ? 1 : -1;
      }
    }
    return sign_with_root(a, coeff, rad);
  };
  r.holds = settle(gap, 1, r.radicand) >= 0;
  r.two_sided_holds = settle(-abs(gap), 1, r.radicand) >= 0;
  const Rational square = r.mu_b * r.mu_b;
  r.self_inner_at_least_square = r.self_inner >= square;
  if (b == c) r.diagonal_bound_holds = settle(r.average - square, r.mu_b, Rational(6) / units) >= 0;
  r.statement_threshold_met = square > Rational(6, q);
  r.proof_threshold_met = square > Rational(6) / units;
  r.decided_exactly = exact;
  return r;
}

VdcReport vdc_norm_check(const FiniteAction& action, const FunctionOnSpace& f) {
  require_size(action, f.size());
  const FunctionOnSpace centered = f - proj_additive(action, f);
  const Index q = action.field().order();
  std::vector<BigInt> sum(f.size());
  for (Index u = 1; u < q; ++u) {
    // (U_g h)(g x) = h(x).
    const Permutation g = action.twisted(u);
    for (std::size_t x = 0; x < f.size(); ++x) sum[g[x]] += centered.numerators()[x];
  }
  const FunctionOnSpace total(std::move(sum), centered.denominator());
  VdcReport r;
  r.lhs = norm_squared(action, total);
  r.rhs = Rational(3 * (q - 1)) * norm_squared(action, centered);
  r.holds = r.lhs <= r.rhs;
  return r;
}

VdcIndicatorReport vdc_indicator_check(const FiniteAction& action, const IndexSet& c) {
  const FunctionOnSpace indicator = FunctionOnSpace::indicator(c);
  VdcIndicatorReport r;
  r.core = vdc_norm_check(action, indicator);
  const Rational mu_c = measure_of(action, c);
  const FunctionOnSpace centered = indicator - proj_additive(action, indicator);
  r.norm_bound_holds = norm_squared(action, centered) <= 2 * mu_c;
  r.rhs_measure = Rational(6 * (action.field().order() - 1)) * mu_c;
  r.chain_holds = r.core.lhs <= r.rhs_measure;
  return r;
}

DensityBoundReport density_bound_check(const FiniteAction& action, const IndexSet& b,
                                       const std::optional<IndexSet>& c, const Rational& delta, unsigned threads) {
  const Index q = action.field().order();
  const Rational units(q - 1);
  const Rational mu_b = measure_of(action, b);
  DensityBoundReport r;
  r.delta = delta;
  if (!c) {
    if (delta >= mu_b) throw InvalidThreshold("delta must be below mu(B)");
    const Rational slack = mu_b - delta;
    r.offset = (mu_b * mu_b - delta) / slack;
    r.root_coeff = -mu_b / slack;
    r.radicand = Rational(6) / units;
  } else {
    if (!action.is_ergodic()) throw InvalidAction("the two-set density bound needs an ergodic action");
    const Rational mu_c = measure_of(action, *c);
    const Rational lo = std::min(mu_b, mu_c);
    if (delta >= lo) throw InvalidThreshold("delta must be below min(mu(B), mu(C))");
    r.offset = (mu_b * mu_c - delta) / (lo - delta);
    r.root_coeff = Rational(-1) / (lo - delta);
    r.radicand = 6 * mu_b * mu_c / units;
  }
  const auto parts = twisted_intersections(action, b, c ? *c : b, threads);
  r.d_size = static_cast<std::size_t>(std::count_if(parts.begin(), parts.end(), [&](const Rational& x) { return x > delta; }));
  r.bound_approx = to_double(r.offset) + to_double(r.root_coeff) * std::sqrt(to_double(r.radicand));
  r.holds = sign_with_root(Rational(r.d_size) / units - r.offset, -r.root_coeff, r.radicand) >= 0;
  return r;
}

}  // namespace sumprod

#include "sumprod/pattern_search.hpp"

#include <algorithm>
#include <limits>

#include "sumprod/errors.hpp"
#include "sumprod/parallel.hpp"
#include "sumprod/polynomial.hpp"

namespace sumprod {

std::vector<Witness> sumprod_witnesses(const Subset& e1, const Subset& e2, bool exclude_degenerate,
                                       unsigned threads) {
  require_same_field(e1.field(), e2.field());
  const FiniteField& f = e1.field();
  const Index q = f.order();
  if (e1.empty() || e2.empty()) return {};
  auto per_u = ordered_map<std::vector<Witness>>(q, threads, [&](std::size_t ui) {
    const auto u = static_cast<Index>(ui);
    std::vector<Witness> found;
    for (Index y = 1; y < q; ++y) {
      const Index s = f.add(u, y);
      if (!e1.contains(s)) continue;
      const Index p = f.mul(u, y);
      if (!e2.contains(p)) continue;
      if (exclude_degenerate && s == p) continue;
      found.push_back({u, y});
    }
    return found;
  });
  std::vector<Witness> out;
  for (auto& part : per_u) out.insert(out.end(), part.begin(), part.end());
  return out;
}

std::vector<std::uint32_t> witness_counts(const Subset& e1, const Subset& e2, unsigned threads) {
  require_same_field(e1.field(), e2.field());
  const FiniteField& f = e1.field();
  const Index q = f.order();
  return ordered_map<std::uint32_t>(q, threads, [&](std::size_t ui) {
    const auto u = static_cast<Index>(ui);
    std::uint32_t count = 0;
    // y = 0 is allowed here: it corresponds to the point u = u + 0 with 0 = u*0.
    for (Index y = 0; y < q; ++y) {
      if (e1.contains(f.add(u, y)) && e2.contains(f.mul(u, y))) ++count;
    }
    return count;
  });
}

namespace {

void require_threshold(const Subset& e1, const Subset& e2, std::size_t s) {
  if (s >= std::min(e1.size(), e2.size())) {
    throw InvalidThreshold("threshold s = " + std::to_string(s) + " must be below min(|E1|, |E2|) = " +
                           std::to_string(std::min(e1.size(), e2.size())));
  }
}

}  // namespace

Subset witness_threshold_set(const Subset& e1, const Subset& e2, std::size_t s, unsigned threads) {
  require_threshold(e1, e2, s);
  const auto counts = witness_counts(e1, e2, threads);
  Subset d(e1.field());
  for (Index u = 1; u < e1.field().order(); ++u) {
    if (counts[u] > s) d.insert(u);
  }
  return d;
}

CardinalityBound cardinality_bound(std::size_t q, std::size_t e1, std::size_t e2, std::size_t s) {
  const std::size_t lo = std::min(e1, e2);
  if (s >= lo) throw InvalidThreshold("threshold must be below min(|E1|, |E2|)");
  const BigInt product = BigInt(e1) * e2;
  const BigInt units = q - 1;
  const Rational denom(lo - s);
  CardinalityBound b;
  b.offset = (Rational(product * units, BigInt(q)) - Rational(BigInt(s) * units)) / denom;
  b.root_coeff = Rational(-1) / denom;
  b.radicand = Rational(6 * product * units);
  b.vacuous = sign_with_root(b.offset, b.root_coeff, b.radicand) <= 0;
  b.required = b.vacuous ? BigInt(0) : ceil_with_root(b.offset, b.root_coeff, b.radicand);
  b.approx = to_double(b.offset) + to_double(b.root_coeff) * std::sqrt(to_double(b.radicand));
  return b;
}

WitnessReport verify_cardinality_bound(const Subset& e1, const Subset& e2, std::size_t s, unsigned threads) {
  require_same_field(e1.field(), e2.field());
  require_threshold(e1, e2, s);
  const FiniteField& f = e1.field();
  WitnessReport report{s, {}, witness_threshold_set(e1, e2, s, threads),
                       cardinality_bound(f.order(), e1.size(), e2.size(), s), false};
  const Rational d_size(report.d_set.size());
  report.holds = sign_with_root(d_size - report.bound.offset, -report.bound.root_coeff, report.bound.radicand) >= 0;
  for (const Witness& w : sumprod_witnesses(e1, e2, false, threads)) {
    if (report.d_set.contains(w.u)) report.witnesses.push_back(w);
  }
  return report;
}

Coloring::Coloring(FiniteField field, std::vector<std::uint32_t> colors, std::uint32_t r)
    : field_(std::move(field)), colors_(std::move(colors)), r_(r) {
  if (r_ < 1) throw Error("a coloring needs at least one color");
  if (colors_.size() != field_.order()) throw Error("coloring length must equal the field order");
  for (auto c : colors_) {
    if (c >= r_) throw Error("color " + std::to_string(c) + " outside [0, " + std::to_string(r_) + ")");
  }
}

Coloring Coloring::quadratic_residue(const FiniteField& field) {
  std::vector<std::uint32_t> colors(field.order(), 1);
  colors[0] = 0;
  for (Index r : field.quadratic_residues()) colors[r] = 0;
  return Coloring(field, std::move(colors), 2);
}

bool admissible_triple(const FiniteField& field, Index u, Index y) {
  if (u == 0 || y == 0 || y == 1) return false;
  return field.add(y, u) != field.mul(y, u);
}

std::vector<TripleWitness> monochromatic_triple_search(const Coloring& coloring, bool require_u_in_class) {
  const FiniteField& f = coloring.field();
  std::vector<TripleWitness> out;
  for (Index u = 1; u < f.order(); ++u) {
    for (Index y = 2; y < f.order(); ++y) {
      if (!admissible_triple(f, u, y)) continue;
      const std::uint32_t c = coloring[f.add(y, u)];
      if (coloring[f.mul(y, u)] != c) continue;
      if (require_u_in_class && coloring[u] != c) continue;
      out.push_back({u, y, c});
    }
  }
  return out;
}

namespace {

struct Triple {
  Index u, sum, product;
};

std::vector<Triple> admissible_triples(const FiniteField& f) {
  std::vector<Triple> out;
  for (Index u = 1; u < f.order(); ++u) {
    for (Index y = 2; y < f.order(); ++y) {
      if (admissible_triple(f, u, y)) out.push_back({u, f.add(y, u), f.mul(y, u)});
    }
  }
  return out;
}

bool contains_pattern(const std::vector<std::uint32_t>& colors, const std::vector<Triple>& triples) {
  for (const Triple& t : triples) {
    const auto c = colors[t.u];
    if (colors[t.sum] == c && colors[t.product] == c) return true;
  }
  return false;
}

// Relabels colors in order of first appearance scanning from the most
// significant digit (highest index) down: the smallest coloring, read as a
// base-r integer, among all color permutations.
std::vector<std::uint32_t> normalize_colors(const std::vector<std::uint32_t>& colors, std::uint32_t r) {
  std::vector<std::uint32_t> relabel(r, UINT32_MAX);
  std::uint32_t next = 0;
  std::vector<std::uint32_t> out(colors.size());
  for (std::size_t i = colors.size(); i-- > 0;) {
    auto& target = relabel[colors[i]];
    if (target == UINT32_MAX) target = next++;
    out[i] = target;
  }
  return out;
}

// Compares as base-r integers (index 0 least significant).
bool less_as_integer(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

}  // namespace

AuditResult exhaustive_coloring_audit(const FiniteField& field, std::uint32_t r, bool prune_by_symmetry,
                                      std::uint64_t budget) {
  if (r < 1) throw Error("number of colors must be >= 1");
  const std::uint32_t q = field.order();
  AuditResult result{AuditVerdict::all_colorings_contain_pattern, std::nullopt, 0, 0, prune_by_symmetry};

  // r^q must be enumerable at all.
  long double space = 1;
  for (std::uint32_t i = 0; i < q; ++i) space *= r;
  if (space > static_cast<long double>(std::numeric_limits<std::uint64_t>::max())) {
    result.verdict = AuditVerdict::budget_exceeded;
    return result;
  }

  const auto triples = admissible_triples(field);
  // Frobenius powers x -> x^(p^i), i = 1..n-1, as index permutations.
  std::vector<std::vector<Index>> automorphisms;
  if (prune_by_symmetry) {
    std::vector<Index> frob(q);
    for (Index x = 0; x < q; ++x) frob[x] = field.frobenius(x);
    std::vector<Index> power = frob;
    for (std::uint32_t i = 1; i < field.degree(); ++i) {
      automorphisms.push_back(power);
      std::vector<Index> next(q);
      for (Index x = 0; x < q; ++x) next[x] = frob[power[x]];
      power = std::move(next);
    }
  }

  std::vector<std::uint32_t> colors(q, 0);
  std::vector<std::uint32_t> image(q);
  while (true) {
    ++result.candidates_enumerated;
    bool canonical = true;
    if (prune_by_symmetry) {
      canonical = normalize_colors(colors, r) == colors;
      for (std::size_t a = 0; canonical && a < automorphisms.size(); ++a) {
        for (Index x = 0; x < q; ++x) image[x] = colors[automorphisms[a][x]];
        if (less_as_integer(normalize_colors(image, r), colors)) canonical = false;
      }
    }
    if (canonical) {
      if (result.candidates_checked >= budget) {
        result.verdict = AuditVerdict::budget_exceeded;
        return result;
      }
      ++result.candidates_checked;
      if (!contains_pattern(colors, triples)) {
        result.verdict = AuditVerdict::avoiding_coloring_found;
        result.witness = Coloring(field, colors, r);
        return result;
      }
    }
    // Base-r increment, index 0 least significant.
    std::uint32_t i = 0;
    while (i < q && ++colors[i] == r) colors[i++] = 0;
    if (i == q) break;
  }
  return result;
}

std::vector<Index> tower_values(const FiniteField& field, std::span<const Index> tuple) {
  std::vector<Index> values = {tuple[0]};
  for (std::size_t i = 1; i < tuple.size(); ++i) {
    std::vector<Index> next(values.size() * 2);
    for (std::size_t m = 0; m < values.size(); ++m) {
      next[m] = field.add(values[m], tuple[i]);
      next[m + values.size()] = field.mul(values[m], tuple[i]);
    }
    values = std::move(next);
  }
  return values;
}

namespace {

struct TowerSearch {
  const FiniteField& field;
  const Subset& e;
  std::uint32_t k;
  std::uint64_t budget;
  std::uint64_t checked = 0;
  bool out_of_budget = false;
  std::vector<Index> tuple;

  // values: all 2^depth evaluations of tuple[0..depth].
  bool descend(const std::vector<Index>& values) {
    const std::size_t depth = tuple.size() - 1;
    const Index q = field.order();
    if (depth + 1 == k) {
      for (Index x = 1; x < q; ++x) {
        if (checked >= budget) {
          out_of_budget = true;
          return false;
        }
        ++checked;
        bool ok = true;
        for (Index v : values) {
          if (!e.contains(field.add(v, x)) || !e.contains(field.mul(v, x))) {
            ok = false;
            break;
          }
        }
        if (ok) {
          tuple.push_back(x);
          return true;
        }
      }
      return false;
    }
    std::vector<Index> next(values.size() * 2);
    for (Index x = 1; x < q; ++x) {
      for (std::size_t m = 0; m < values.size(); ++m) {
        next[m] = field.add(values[m], x);
        next[m + values.size()] = field.mul(values[m], x);
      }
      tuple.push_back(x);
      if (descend(next)) return true;
      tuple.pop_back();
      if (out_of_budget) return false;
    }
    return false;
  }
};

}  // namespace

TowerResult iterated_tower_search(const Subset& e, std::uint32_t k, std::uint64_t budget) {
  if (k < 1) throw Error("tower depth k must be >= 1");
  const FiniteField& f = e.field();
  TowerSearch search{f, e, k, budget, 0, false, {}};
  for (Index x0 = 1; x0 < f.order(); ++x0) {
    search.tuple = {x0};
    if (search.descend({x0})) return {SearchStatus::found, search.tuple, search.checked};
    if (search.out_of_budget) return {SearchStatus::budget_exceeded, {}, search.checked};
  }
  return {SearchStatus::not_found, {}, search.checked};
}

std::vector<DegeneratePair> degenerate_pairs(const FiniteField& field) {
  std::vector<DegeneratePair> out;
  for (Index x = 0; x < field.order(); ++x) {
    if (x == 1) continue;
    const Index y = field.div(x, field.sub(x, 1));
    if (field.add(x, y) != field.mul(x, y)) throw Error("degenerate pair failed its re-check");
    out.push_back({x, y});
  }
  return out;
}

Subset character_counterexample(std::uint32_t p, const Rational& lo, const Rational& hi) {
  const FiniteField f = FiniteField::prime(p);
  Subset e(f);
  for (Index x = 0; x < p; ++x) {
    const Rational angle(x, p);
    if (angle >= lo && angle < hi) e.insert(x);
  }
  return e;
}

std::optional<Witness> find_additive_triple(const Subset& e) {
  const FiniteField& f = e.field();
  const auto members = e.indices();
  for (Index u : members) {
    for (Index y : members) {
      if (e.contains(f.add(u, y))) return Witness{u, y};
    }
  }
  return std::nullopt;
}

std::vector<Index> vector_coords(std::uint32_t q, std::uint32_t d, std::uint64_t index) {
  std::vector<Index> out(d);
  for (std::uint32_t i = 0; i < d; ++i) {
    out[i] = static_cast<Index>(index % q);
    index /= q;
  }
  return out;
}

std::uint64_t vector_index(std::uint32_t q, std::span<const Index> coords) {
  std::uint64_t out = 0;
  for (std::size_t i = coords.size(); i-- > 0;) out = out * q + coords[i];
  return out;
}

std::optional<VectorWitness> vector_space_pattern_search(const FiniteField& field, std::uint32_t d,
                                                         std::span<const Index> alpha, const IndexSet& b) {
  if (alpha.size() != d) throw InvalidAlpha("alpha must have exactly d = " + std::to_string(d) + " entries");
  for (Index a : alpha) {
    if (a == 0 || a >= field.order()) throw InvalidAlpha("every alpha_i must be a nonzero field element");
  }
  const std::uint32_t q = field.order();
  std::uint64_t points = 1;
  for (std::uint32_t i = 0; i < d; ++i) points *= q;
  if (b.universe() != points) throw Error("B must be a mask over q^d points");

  std::vector<Index> shifted(d), scaled(d);
  for (Index u = 1; u < q; ++u) {
    for (std::uint64_t yi = 0; yi < points; ++yi) {
      const auto y = vector_coords(q, d, yi);
      for (std::uint32_t i = 0; i < d; ++i) {
        shifted[i] = field.add(y[i], field.mul(u, alpha[i]));
        scaled[i] = field.mul(y[i], u);
      }
      if (b.contains(static_cast<Index>(vector_index(q, shifted))) &&
          b.contains(static_cast<Index>(vector_index(q, scaled)))) {
        return VectorWitness{u, y};
      }
    }
  }
  return std::nullopt;
}

bool vector_search_guaranteed(std::uint32_t q, std::uint32_t d, std::size_t b_size) {
  if (d < 1) return false;
  BigInt rhs = 6;
  for (std::uint32_t i = 0; i + 1 < 2 * d; ++i) rhs *= q;
  return BigInt(b_size) * b_size > rhs;
}

}  // namespace sumprod

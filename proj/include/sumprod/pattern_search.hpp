#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sumprod/finite_field.hpp"
#include "sumprod/rational.hpp"

namespace sumprod {

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

/// A pair (u, y), y != 0, with u + y in E1 and u*y in E2.
struct Witness {
  Index u;
  Index y;
  friend bool operator==(const Witness&, const Witness&) = default;
  friend auto operator<=>(const Witness&, const Witness&) = default;
};

/// Every witness, ordered by (u, y) index. With exclude_degenerate, pairs
/// with u + y == u*y are dropped.
std::vector<Witness> sumprod_witnesses(const Subset& e1, const Subset& e2, bool exclude_degenerate = false,
                                       unsigned threads = 1);

/// counts[u] = #{y in F : u + y in E1 and u*y in E2}. counts[0] is included
/// for completeness; D only ever looks at u != 0.
std::vector<std::uint32_t> witness_counts(const Subset& e1, const Subset& e2, unsigned threads = 1);

/// D = {u in F* : counts[u] > s}. Requires s < min(|E1|, |E2|), otherwise
/// InvalidThreshold.
Subset witness_threshold_set(const Subset& e1, const Subset& e2, std::size_t s, unsigned threads = 1);

/// Lower bound for |D| of the form offset + root_coeff * sqrt(radicand):
///   (|E1||E2||F*|/|F| - sqrt(6|E1||E2||F*|) - s|F*|) / (min(|E1|,|E2|) - s)
struct CardinalityBound {
  Rational offset;
  Rational root_coeff;
  Rational radicand;
  /// Smallest admissible |D|: max(0, ceil(bound)).
  BigInt required;
  /// bound <= 0, so the inequality carries no content.
  bool vacuous = false;
  double approx = 0.0;
};

CardinalityBound cardinality_bound(std::size_t q, std::size_t e1, std::size_t e2, std::size_t s);

struct WitnessReport {
  std::size_t s = 0;
  /// Pairs (u, y) with u in D, ordered by index.
  std::vector<Witness> witnesses;
  Subset d_set;
  CardinalityBound bound;
  /// |D| >= bound, decided exactly.
  bool holds = false;
};

WitnessReport verify_cardinality_bound(const Subset& e1, const Subset& e2, std::size_t s, unsigned threads = 1);

/// An r-coloring of a field, one color per canonical index.
class Coloring {
 public:
  Coloring(FiniteField field, std::vector<std::uint32_t> colors, std::uint32_t r);
  /// Color 0 for zero and the nonzero squares, color 1 for the rest.
  static Coloring quadratic_residue(const FiniteField& field);

  const FiniteField& field() const { return field_; }
  std::uint32_t num_colors() const { return r_; }
  std::uint32_t operator[](Index x) const { return colors_[x]; }
  const std::vector<std::uint32_t>& colors() const { return colors_; }

 private:
  FiniteField field_;
  std::vector<std::uint32_t> colors_;
  std::uint32_t r_;
};

/// (u, y) is admissible for the {u, y+u, yu} pattern when u != 0, y is not
/// 0 or 1, and y + u != y*u; the three elements are then distinct.
bool admissible_triple(const FiniteField& field, Index u, Index y);

struct TripleWitness {
  Index u;
  Index y;
  std::uint32_t color;
  friend bool operator==(const TripleWitness&, const TripleWitness&) = default;
};

/// Admissible (u, y) with color(y+u) == color(yu), and also color(u) equal
/// to it when require_u_in_class. Ordered by (u, y).
std::vector<TripleWitness> monochromatic_triple_search(const Coloring& coloring, bool require_u_in_class);

enum class AuditVerdict { all_colorings_contain_pattern, avoiding_coloring_found, budget_exceeded };

struct AuditResult {
  AuditVerdict verdict;
  std::optional<Coloring> witness;
  /// Colorings tested against the pattern (charged to the budget).
  std::uint64_t candidates_checked = 0;
  /// Colorings visited, including those skipped as non-canonical.
  std::uint64_t candidates_enumerated = 0;
  bool pruned = false;
};

/// Tries every r-coloring of the field (as base-r integers over the canonical
/// element order) for one avoiding monochromatic {u, y+u, yu}. With pruning,
/// only the smallest representative of each orbit under color permutations
/// and field automorphisms is tested.
AuditResult exhaustive_coloring_audit(const FiniteField& field, std::uint32_t r, bool prune_by_symmetry,
                                      std::uint64_t budget = kDefaultBudget);

enum class SearchStatus { found, not_found, budget_exceeded };

struct TowerResult {
  SearchStatus status;
  std::vector<Index> tuple;  // x_0..x_k when found
  std::uint64_t tuples_checked = 0;
};

/// Lexicographically first x_0..x_k in F* such that every left-nested
/// evaluation (..((x_0 o1 x_1) o2 x_2)..) ok x_k, oi in {+, *}, lies in E.
TowerResult iterated_tower_search(const Subset& e, std::uint32_t k, std::uint64_t budget = kDefaultBudget);

/// All 2^k left-nested evaluations of a tuple, in operation-mask order
/// (bit i-1 set means the i-th operation is multiplication).
std::vector<Index> tower_values(const FiniteField& field, std::span<const Index> tuple);

struct DegeneratePair {
  Index x;
  Index y;
  friend bool operator==(const DegeneratePair&, const DegeneratePair&) = default;
  friend auto operator<=>(const DegeneratePair&, const DegeneratePair&) = default;
};

/// (x, x/(x-1)) for every x != 1; each satisfies x + y == x*y.
std::vector<DegeneratePair> degenerate_pairs(const FiniteField& field);

/// E = {x in GF(p) : lo <= x/p < hi}, compared exactly. Throws
/// CompositeCharacteristic for non-prime p.
Subset character_counterexample(std::uint32_t p, const Rational& lo = Rational(1, 3), const Rational& hi = Rational(2, 3));

/// First (u, y) with u, y, u+y all in E, if any.
std::optional<Witness> find_additive_triple(const Subset& e);

/// Points of F^d are indexed by sum y_i q^i (y_1 least significant).
std::vector<Index> vector_coords(std::uint32_t q, std::uint32_t d, std::uint64_t index);
std::uint64_t vector_index(std::uint32_t q, std::span<const Index> coords);

struct VectorWitness {
  Index u;
  std::vector<Index> y;
};

/// First (u, y), u in F*, y in F^d, with y + u*alpha in B and u*y in B.
/// B is a mask over q^d points. Throws InvalidAlpha if some alpha_i is 0.
std::optional<VectorWitness> vector_space_pattern_search(const FiniteField& field, std::uint32_t d,
                                                         std::span<const Index> alpha, const IndexSet& b);

/// |B| > sqrt(6) q^(d - 1/2), i.e. |B|^2 > 6 q^(2d-1): existence is guaranteed.
bool vector_search_guaranteed(std::uint32_t q, std::uint32_t d, std::size_t b_size);

}  // namespace sumprod

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sumprod/rational.hpp"

namespace sumprod {

/// Position of an element a*x_N + k/D inside a Følner set: which multiplier
/// a (by its index in U) and which additive step k.
struct FolnerCoords {
  std::uint32_t a_index = 0;
  std::uint64_t k = 0;
};

/// Membership predicates on Q built from a small closed language, so that
/// densities can be counted exactly:
///
///   all | none
///   num_mod(M,R)       numerator of x (lowest terms) is R mod M
///   den_mod(M,R)       denominator of x is R mod M
///   floor_mod(M,R)     floor(x) is R mod M
///   interval(lo,hi)    lo <= x < hi, bounds given as n or n/d
///   vpart_mod(M,R)     the step k of a Følner element is R mod M
///   and(p,q,..) | or(p,q,..) | not(p)
///
/// vpart_mod refers to how an element was generated, not to its value, so it
/// is only defined on Følner-set elements.
class Predicate {
 public:
  static Predicate parse(std::string_view text);
  static Predicate everything();

  /// Throws Error when a vpart term is evaluated without coordinates.
  bool operator()(const Rational& x, const std::optional<FolnerCoords>& coords = std::nullopt) const;

  /// No vpart terms: evaluable at arbitrary rationals.
  bool value_only() const;

  /// Canonical text form; parse(to_string()) reproduces the predicate.
  std::string to_string() const;

  struct Node;

 private:
  explicit Predicate(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

}  // namespace sumprod

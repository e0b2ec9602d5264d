#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sumprod/affine.hpp"
#include "sumprod/finite_field.hpp"
#include "sumprod/rational.hpp"

namespace sumprod {

/// A permutation of {0, .., m-1}, stored as its image table.
using Permutation = std::vector<std::uint32_t>;

/// The affine group of a field acting on a finite probability space
/// Omega = {0, .., m-1} by measure-preserving bijections. The action is given
/// on generators: shift(u) is the image of A_u (u in F) and dilation(u) the
/// image of M_u (u in F*). A general map x -> ux + v acts as A_v after M_u.
class FiniteAction {
 public:
  /// Omega = F, uniform measure, every map acting as itself.
  static FiniteAction regular(const FiniteField& field);

  /// Omega = F^d (points indexed by sum y_i q^i), A_u y = y + u*alpha and
  /// M_v y = v*y, uniform measure. Throws InvalidAlpha unless every alpha_i
  /// is nonzero.
  static FiniteAction vector_space(const FiniteField& field, std::uint32_t d, std::span<const Index> alpha);

  /// User-supplied generator tables: `shifts` holds q permutations (index u),
  /// `dilations` holds q permutations with entry 0 ignored. Throws
  /// InvalidAction unless every table is a bijection, the relations of the
  /// affine group hold, and the measure is a preserved probability vector.
  static FiniteAction custom(const FiniteField& field, std::vector<Permutation> shifts,
                             std::vector<Permutation> dilations, std::vector<Rational> measure,
                             std::string label = "custom");

  const FiniteField& field() const { return field_; }
  std::uint32_t size() const { return m_; }
  const std::string& label() const { return label_; }
  const Permutation& shift(Index u) const { return shifts_[u]; }
  const Permutation& dilation(Index u) const { return dilations_[u]; }
  const std::vector<Rational>& measure() const { return measure_; }
  bool uniform() const { return uniform_; }

  /// Image of x under x -> u*x + v, composed from generators.
  std::uint32_t apply(const AffineMap& g, std::uint32_t x) const;
  /// Table of g as a permutation of Omega.
  Permutation permutation(const AffineMap& g) const;
  /// Table of the twisted map M_u A_{-u}, u != 0.
  Permutation twisted(Index u) const;

  /// Every generator is a bijection.
  bool generators_are_bijections() const;
  /// A_u A_v = A_{u+v}, M_u M_v = M_{uv}, A_0 = M_1 = id and M_u A_v = A_{uv} M_u.
  bool homomorphism_holds() const;
  /// mu(sigma(x)) = mu(x) for every generator sigma.
  bool measure_preserved() const;
  /// A single orbit under the generators.
  bool is_ergodic() const { return ergodic_; }

 private:
  FiniteAction() = default;
  void validate() const;
  bool single_orbit() const;

  FiniteField field_ = FiniteField::prime(2);
  std::uint32_t m_ = 0;
  std::vector<Permutation> shifts_;
  std::vector<Permutation> dilations_;
  std::vector<Rational> measure_;
  bool uniform_ = true;
  bool ergodic_ = false;
  std::string label_;
};

/// A rational-valued function on Omega, held as integer numerators over one
/// shared positive denominator (kept in lowest terms).
class FunctionOnSpace {
 public:
  FunctionOnSpace() = default;
  explicit FunctionOnSpace(std::size_t m) : num_(m), den_(1) {}
  FunctionOnSpace(std::vector<BigInt> numerators, BigInt denominator);
  static FunctionOnSpace from_rationals(std::span<const Rational> values);
  static FunctionOnSpace indicator(const IndexSet& set);
  static FunctionOnSpace constant(std::size_t m, const Rational& c);

  std::size_t size() const { return num_.size(); }
  Rational operator[](std::size_t i) const { return Rational(num_[i], den_); }
  const std::vector<BigInt>& numerators() const { return num_; }
  const BigInt& denominator() const { return den_; }
  std::vector<Rational> values() const;

  friend FunctionOnSpace operator+(const FunctionOnSpace& a, const FunctionOnSpace& b);
  friend FunctionOnSpace operator-(const FunctionOnSpace& a, const FunctionOnSpace& b);
  friend bool operator==(const FunctionOnSpace& a, const FunctionOnSpace& b) {
    return a.den_ == b.den_ && a.num_ == b.num_;
  }

 private:
  void reduce();
  std::vector<BigInt> num_;
  BigInt den_ = 1;
};

/// (U_g f)(x) = f(g^{-1} x).
FunctionOnSpace koopman(const FiniteAction& action, const AffineMap& g, const FunctionOnSpace& f);

/// P_A f(x) = (1/|F|) sum_{u in F} f(A_u x).
FunctionOnSpace proj_additive(const FiniteAction& action, const FunctionOnSpace& f);
/// P_M f(x) = (1/|F*|) sum_{u in F*} f(M_u x).
FunctionOnSpace proj_multiplicative(const FiniteAction& action, const FunctionOnSpace& f);

/// <f, g> = sum f(x) g(x) mu(x).
Rational inner_product(const FiniteAction& action, const FunctionOnSpace& f, const FunctionOnSpace& g);
Rational norm_squared(const FiniteAction& action, const FunctionOnSpace& f);
Rational measure_of(const FiniteAction& action, const IndexSet& set);

/// max_x |P_A P_M f(x) - P_M P_A f(x)|.
Rational check_projection_commutation(const FiniteAction& action, const FunctionOnSpace& f);

/// mu(B ∩ M_u A_{-u} C) for u = 1, .., q-1 (entry u-1).
std::vector<Rational> twisted_intersections(const FiniteAction& action, const IndexSet& b, const IndexSet& c,
                                            unsigned threads = 1);

/// How bound comparisons are evaluated. Fast mode compares doubles and falls
/// back to exact arithmetic when the margin is within kFastTolerance.
enum class Arithmetic { exact, fast };
inline constexpr double kFastTolerance = 1e-9;

struct TwistedAverageReport {
  Rational mu_b;
  Rational mu_c;
  /// (1/|F*|) sum_u mu(B ∩ M_u A_{-u} C).
  Rational average;
  /// <1_B, P_M P_A 1_C>.
  Rational inner;
  /// Radius sqrt(radicand), radicand = 6 mu(B) mu(C) / |F*|.
  Rational radicand;
  double lower_bound_approx = 0.0;
  /// average >= inner - sqrt(radicand).
  bool holds = false;
  /// |average - inner| <= sqrt(radicand).
  bool two_sided_holds = false;
  /// <1_B, P_M P_A 1_B> and whether it is >= mu(B)^2.
  Rational self_inner;
  bool self_inner_at_least_square = false;
  /// For B = C only: average >= mu(B)^2 - mu(B) sqrt(6/|F*|).
  std::optional<bool> diagonal_bound_holds;
  /// mu(B)^2 > 6/|F| (statement reading) and mu(B)^2 > 6/|F*| (proof reading).
  bool statement_threshold_met = false;
  bool proof_threshold_met = false;
  /// Some u in F* has mu(B ∩ M_u A_{-u} C) > 0.
  bool positive_intersection = false;
  bool ergodic = false;
  /// Every comparison above was settled in exact arithmetic.
  bool decided_exactly = true;
};

TwistedAverageReport twisted_average(const FiniteAction& action, const IndexSet& b, const IndexSet& c,
                                     Arithmetic mode = Arithmetic::exact, unsigned threads = 1);

struct VdcReport {
  /// || sum_{u in F*} M_u A_{-u} f ||^2, f already made mean zero.
  Rational lhs;
  /// 3 |F*| ||f||^2.
  Rational rhs;
  bool holds = false;
};

/// Replaces f by f - P_A f, then compares both sides.
VdcReport vdc_norm_check(const FiniteAction& action, const FunctionOnSpace& f);

struct VdcIndicatorReport {
  VdcReport core;
  /// ||1_C - P_A 1_C||^2 <= 2 mu(C).
  bool norm_bound_holds = false;
  /// 6 |F*| mu(C) and lhs <= it.
  Rational rhs_measure;
  bool chain_holds = false;
};

VdcIndicatorReport vdc_indicator_check(const FiniteAction& action, const IndexSet& c);

struct DensityBoundReport {
  Rational delta;
  /// |D| with D = {u in F* : mu(B ∩ M_u A_{-u} C) > delta}.
  std::size_t d_size = 0;
  /// |D|/|F*| >= offset + root_coeff * sqrt(radicand).
  Rational offset;
  Rational root_coeff;
  Rational radicand;
  double bound_approx = 0.0;
  bool holds = false;
};

/// The lower bound on |D|/|F*|. With c absent (C = B) no ergodicity is needed
/// and delta < mu(B) is required; otherwise the action must be ergodic and
/// delta < min(mu(B), mu(C)). Throws InvalidThreshold / InvalidAction.
DensityBoundReport density_bound_check(const FiniteAction& action, const IndexSet& b,
                                       const std::optional<IndexSet>& c, const Rational& delta,
                                       unsigned threads = 1);

}  // namespace sumprod

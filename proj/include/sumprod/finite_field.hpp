#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sumprod/polynomial.hpp"

namespace sumprod {

/// Canonical element index in [0, q): base-p digits of the coefficient
/// vector, low coefficient least significant. 0 is zero, 1 is one.
using Index = std::uint32_t;

inline constexpr std::uint32_t kDefaultMaxOrder = 1u << 20;

class FieldElem;

/// GF(p^n) with exact arithmetic. Cheap to copy (shared immutable state);
/// two handles compare equal when they describe the same field (p, n and
/// modulus).
///
/// The index-level operations (add, mul, ...) are the hot path used by the
/// searches; FieldElem wraps them with field-identity checks.
class FiniteField {
 public:
  /// GF(p). Throws CompositeCharacteristic unless p is prime.
  static FiniteField prime(std::uint32_t p, std::uint32_t max_order = kDefaultMaxOrder);

  /// GF(p^n). Without a modulus, the lexicographically smallest monic
  /// irreducible of degree n is used. Throws ReducibleModulus when a supplied
  /// modulus is not irreducible, FieldTooLarge above max_order.
  static FiniteField extension(std::uint32_t p, std::uint32_t n, std::optional<Poly> modulus = std::nullopt,
                               std::uint32_t max_order = kDefaultMaxOrder);

  /// Field of order q (a prime power) with the default modulus.
  static FiniteField of_order(std::uint32_t q, std::uint32_t max_order = kDefaultMaxOrder);

  /// Parses "GF(7)", "GF(9)", "GF(3^2)" or "GF(3^2)[modulus=1,0,1]".
  static FiniteField parse(std::string_view descriptor, std::uint32_t max_order = kDefaultMaxOrder);

  std::uint32_t characteristic() const;
  std::uint32_t degree() const;
  std::uint32_t order() const;
  const Poly& modulus() const;

  /// "GF(p^n)[modulus=c0,...,cn]".
  std::string descriptor() const;

  Index add(Index a, Index b) const;
  Index sub(Index a, Index b) const;
  Index neg(Index a) const;
  Index mul(Index a, Index b) const;
  /// Extended Euclid (integers for n = 1, polynomials otherwise).
  Index inv(Index a) const;
  /// a^(q-2); independent route used to cross-check inv.
  Index inv_fermat(Index a) const;
  Index div(Index a, Index b) const { return mul(a, inv(b)); }
  Index pow(Index a, std::uint64_t e) const;
  /// x -> x^p.
  Index frobenius(Index a) const { return pow(a, characteristic()); }

  std::vector<std::uint32_t> coefficients(Index a) const;
  Index from_coefficients(std::span<const std::uint32_t> coeffs) const;

  FieldElem element(Index a) const;
  FieldElem zero() const;
  FieldElem one() const;
  /// All q elements in canonical index order.
  std::vector<FieldElem> elements() const;

  /// Nonzero squares.
  std::vector<Index> quadratic_residues() const;

  /// Formats an element as its index.
  std::string format(Index a) const { return std::to_string(a); }

  friend bool operator==(const FiniteField& a, const FiniteField& b);

  struct Impl;  // defined in finite_field.cpp

 private:
  explicit FiniteField(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// An element of a specific field. Mixed-field arithmetic throws FieldMismatch.
class FieldElem {
 public:
  FieldElem(FiniteField field, Index index);

  const FiniteField& field() const { return field_; }
  Index index() const { return index_; }
  std::vector<std::uint32_t> coefficients() const { return field_.coefficients(index_); }
  bool is_zero() const { return index_ == 0; }

  FieldElem inv() const;
  FieldElem pow(std::uint64_t e) const { return {field_, field_.pow(index_, e)}; }

  friend FieldElem operator+(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator-(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator/(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator-(const FieldElem& a) { return {a.field_, a.field_.neg(a.index_)}; }
  friend bool operator==(const FieldElem& a, const FieldElem& b) {
    return a.index_ == b.index_ && a.field_ == b.field_;
  }

 private:
  FiniteField field_;
  Index index_;
};

/// Membership mask over [0, n) with cached cardinality.
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::size_t universe) : bits_(universe, false) {}
  static IndexSet full(std::size_t universe);
  static IndexSet from_indices(std::size_t universe, std::span<const Index> indices);

  std::size_t universe() const { return bits_.size(); }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }
  bool contains(Index i) const { return i < bits_.size() && bits_[i]; }
  void insert(Index i);
  void erase(Index i);
  std::vector<Index> indices() const;

  friend bool operator==(const IndexSet& a, const IndexSet& b) { return a.bits_ == b.bits_; }

 private:
  std::vector<bool> bits_;
  std::size_t count_ = 0;
};

/// A subset of a finite field's elements.
class Subset {
 public:
  explicit Subset(FiniteField field) : field_(std::move(field)), mask_(field_.order()) {}
  Subset(FiniteField field, IndexSet mask);
  static Subset all(const FiniteField& field);
  static Subset of(const FiniteField& field, std::span<const Index> indices);

  const FiniteField& field() const { return field_; }
  const IndexSet& mask() const { return mask_; }
  std::size_t size() const { return mask_.size(); }
  bool empty() const { return mask_.empty(); }
  bool contains(Index i) const { return mask_.contains(i); }
  void insert(Index i) { mask_.insert(i); }
  std::vector<Index> indices() const { return mask_.indices(); }

  friend bool operator==(const Subset& a, const Subset& b) { return a.field_ == b.field_ && a.mask_ == b.mask_; }

 private:
  FiniteField field_;
  IndexSet mask_;
};

/// Throws FieldMismatch when the fields differ.
void require_same_field(const FiniteField& a, const FiniteField& b);

}  // namespace sumprod

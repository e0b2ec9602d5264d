#pragma once

#include <string>
#include <vector>

#include "sumprod/finite_field.hpp"

namespace sumprod {

/// x -> u*x + v on a finite field, u != 0. Stored as the pair (u, v);
/// permutation tables are only built by FiniteAction.
class AffineMap {
 public:
  /// Throws DivisionByZero when u is zero.
  AffineMap(FiniteField field, Index scale, Index shift);
  AffineMap(const FieldElem& scale, const FieldElem& shift);

  static AffineMap identity(const FiniteField& field) { return {field, 1, 0}; }
  /// A_v : x -> x + v.
  static AffineMap translation(const FiniteField& field, Index v) { return {field, 1, v}; }
  /// M_u : x -> u*x.
  static AffineMap dilation(const FiniteField& field, Index u) { return {field, u, 0}; }

  const FiniteField& field() const { return field_; }
  Index scale() const { return scale_; }
  Index shift() const { return shift_; }

  Index operator()(Index x) const { return field_.add(field_.mul(scale_, x), shift_); }

  /// "(u, v)" with canonical indices.
  std::string to_string() const;

  friend bool operator==(const AffineMap& a, const AffineMap& b) {
    return a.scale_ == b.scale_ && a.shift_ == b.shift_ && a.field_ == b.field_;
  }

 private:
  FiniteField field_;
  Index scale_;
  Index shift_;
};

FieldElem apply(const AffineMap& g, const FieldElem& x);

/// x -> g(h(x)), i.e. h is applied first: (u_g*u_h, u_g*v_h + v_g).
AffineMap compose(const AffineMap& g, const AffineMap& h);

/// (u^-1, -u^-1 * v).
AffineMap inverse(const AffineMap& g);

/// M_u A_{-u} : x -> u*x - u^2. It sends y + u to u*y, which is what ties
/// A_{-u}E and M_{1/u}E to {y+u, yu} configurations.
AffineMap twisted_map(const FiniteField& field, Index u);
AffineMap twisted_map(const FieldElem& u);

/// Every element of the affine group, ordered by (u, v) index.
std::vector<AffineMap> affine_group(const FiniteField& field);

}  // namespace sumprod

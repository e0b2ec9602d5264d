#include "sumprod/affine.hpp"

#include "sumprod/errors.hpp"

namespace sumprod {

AffineMap::AffineMap(FiniteField field, Index scale, Index shift)
    : field_(std::move(field)), scale_(scale), shift_(shift) {
  if (scale_ >= field_.order() || shift_ >= field_.order()) throw Error("affine map coefficient out of range");
  if (scale_ == 0) throw DivisionByZero("affine map needs a nonzero scale");
}

AffineMap::AffineMap(const FieldElem& scale, const FieldElem& shift)
    : AffineMap(scale.field(), scale.index(), shift.index()) {
  require_same_field(scale.field(), shift.field());
}

std::string AffineMap::to_string() const {
  return "(" + std::to_string(scale_) + ", " + std::to_string(shift_) + ")";
}

FieldElem apply(const AffineMap& g, const FieldElem& x) {
  require_same_field(g.field(), x.field());
  return g.field().element(g(x.index()));
}

AffineMap compose(const AffineMap& g, const AffineMap& h) {
  require_same_field(g.field(), h.field());
  const FiniteField& f = g.field();
  return {f, f.mul(g.scale(), h.scale()), f.add(f.mul(g.scale(), h.shift()), g.shift())};
}

AffineMap inverse(const AffineMap& g) {
  const FiniteField& f = g.field();
  const Index inv_u = f.inv(g.scale());
  return {f, inv_u, f.neg(f.mul(inv_u, g.shift()))};
}

AffineMap twisted_map(const FiniteField& field, Index u) {
  if (u == 0) throw DivisionByZero("twisted map needs u != 0");
  return {field, u, field.neg(field.mul(u, u))};
}

AffineMap twisted_map(const FieldElem& u) { return twisted_map(u.field(), u.index()); }

std::vector<AffineMap> affine_group(const FiniteField& field) {
  std::vector<AffineMap> out;
  out.reserve(static_cast<std::size_t>(field.order()) * (field.order() - 1));
  for (Index u = 1; u < field.order(); ++u) {
    for (Index v = 0; v < field.order(); ++v) out.emplace_back(field, u, v);
  }
  return out;
}

}  // namespace sumprod

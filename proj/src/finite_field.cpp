#include "sumprod/finite_field.hpp"

#include <charconv>

#include "sumprod/errors.hpp"

namespace sumprod {

struct FiniteField::Impl {
  std::uint32_t p = 0;
  std::uint32_t n = 0;
  std::uint32_t q = 0;
  Poly modulus;
  // Extension fields only: discrete log tables for multiplication and, for
  // small q, a full addition table.
  std::vector<Index> exp_table;          // exp_table[k] = g^k, k in [0, q-1)
  std::vector<std::uint32_t> log_table;  // log_table[a] for a != 0
  std::vector<Index> add_table;          // q*q when q <= kAddTableLimit

  static constexpr std::uint32_t kAddTableLimit = 1024;

  Index add_digits(Index a, Index b) const {
    if (p == 2) return a ^ b;
    Index out = 0, place = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
      out += ((a % p + b % p) % p) * place;
      a /= p;
      b /= p;
      place *= p;
    }
    return out;
  }

  Index neg_digits(Index a) const {
    if (p == 2) return a;
    Index out = 0, place = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
      out += ((p - a % p) % p) * place;
      a /= p;
      place *= p;
    }
    return out;
  }

  Poly to_poly(Index a) const {
    Poly out(n, 0);
    for (std::uint32_t i = 0; i < n; ++i) {
      out[i] = a % p;
      a /= p;
    }
    poly::trim(out);
    return out;
  }

  Index from_poly(const Poly& f) const {
    Index out = 0, place = 1;
    for (std::size_t i = 0; i < f.size() && i < n; ++i) {
      out += f[i] * place;
      place *= p;
    }
    return out;
  }
};

namespace {

std::uint64_t checked_power(std::uint32_t p, std::uint32_t n, std::uint32_t max_order) {
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    q *= p;
    if (q > max_order) {
      throw FieldTooLarge("field GF(" + std::to_string(p) + "^" + std::to_string(n) + ") exceeds the maximum order " +
                          std::to_string(max_order));
    }
  }
  return q;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t m) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      out.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) out.push_back(m);
  return out;
}

void build_tables(FiniteField::Impl& f) {
  const std::uint32_t q = f.q;
  const auto factors = prime_factors(q - 1);
  Poly generator;
  for (Index g = 2; g < q; ++g) {
    const Poly candidate = f.to_poly(g);
    bool primitive = true;
    for (std::uint64_t r : factors) {
      if (poly::pow_mod(candidate, (q - 1) / r, f.modulus, f.p) == Poly{1}) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      generator = candidate;
      break;
    }
  }
  if (generator.empty()) throw Error("no primitive element found");  // q >= 4 always has one
  f.exp_table.resize(q - 1);
  f.log_table.assign(q, 0);
  Poly power = {1};
  for (std::uint32_t k = 0; k + 1 < q; ++k) {
    const Index idx = f.from_poly(power);
    f.exp_table[k] = idx;
    f.log_table[idx] = k;
    power = poly::mod(poly::mul(power, generator, f.p), f.modulus, f.p);
  }
  if (q <= FiniteField::Impl::kAddTableLimit) {
    f.add_table.resize(static_cast<std::size_t>(q) * q);
    for (Index a = 0; a < q; ++a) {
      for (Index b = 0; b < q; ++b) f.add_table[static_cast<std::size_t>(a) * q + b] = f.add_digits(a, b);
    }
  }
}

}  // namespace

FiniteField FiniteField::prime(std::uint32_t p, std::uint32_t max_order) {
  if (p < 2 || !poly::is_prime_trial(p)) {
    throw CompositeCharacteristic("characteristic " + std::to_string(p) + " is not prime");
  }
  checked_power(p, 1, max_order);
  auto impl = std::make_shared<Impl>();
  impl->p = p;
  impl->n = 1;
  impl->q = p;
  impl->modulus = {0, 1};
  return FiniteField(std::move(impl));
}

FiniteField FiniteField::extension(std::uint32_t p, std::uint32_t n, std::optional<Poly> modulus,
                                   std::uint32_t max_order) {
  if (p < 2 || !poly::is_prime_trial(p)) {
    throw CompositeCharacteristic("characteristic " + std::to_string(p) + " is not prime");
  }
  if (n < 1) throw Error("extension degree must be >= 1");
  const auto q = static_cast<std::uint32_t>(checked_power(p, n, max_order));
  if (n == 1 && (!modulus || *modulus == Poly{0, 1})) return prime(p, max_order);

  auto impl = std::make_shared<Impl>();
  impl->p = p;
  impl->n = n;
  impl->q = q;
  if (modulus) {
    Poly m = *modulus;
    for (auto& c : m) {
      if (c >= p) throw ReducibleModulus("modulus coefficient out of range [0, p)");
    }
    poly::trim(m);
    if (poly::degree(m) != static_cast<int>(n) || !poly::is_monic(m)) {
      throw ReducibleModulus("modulus must be monic of degree " + std::to_string(n));
    }
    if (!poly::is_irreducible(m, p)) {
      throw ReducibleModulus("modulus " + poly::to_pretty(m) + " is reducible over GF(" + std::to_string(p) + ")");
    }
    impl->modulus = std::move(m);
  } else {
    impl->modulus = poly::smallest_irreducible(p, n);
  }
  if (n == 1) {
    // Degree-one modulus x - c: the quotient is still pure modular arithmetic.
    impl->modulus = {0, 1};
    return FiniteField(std::move(impl));
  }
  build_tables(*impl);
  return FiniteField(std::move(impl));
}

FiniteField FiniteField::of_order(std::uint32_t q, std::uint32_t max_order) {
  if (q < 2) throw CompositeCharacteristic("no field of order " + std::to_string(q));
  std::uint32_t p = 0;
  for (std::uint32_t d = 2; d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  std::uint32_t n = 0;
  std::uint32_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++n;
  }
  if (rest != 1) throw CompositeCharacteristic(std::to_string(q) + " is not a prime power");
  return n == 1 ? prime(p, max_order) : extension(p, n, std::nullopt, max_order);
}

namespace {

std::uint32_t parse_u32(std::string_view text, std::string_view whole) {
  std::uint32_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ParseError("malformed field descriptor: '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

FiniteField FiniteField::parse(std::string_view descriptor, std::uint32_t max_order) {
  const std::string_view whole = descriptor;
  if (descriptor.substr(0, 3) != "GF(") throw ParseError("malformed field descriptor: '" + std::string(whole) + "'");
  descriptor.remove_prefix(3);
  const auto close = descriptor.find(')');
  if (close == std::string_view::npos) throw ParseError("malformed field descriptor: '" + std::string(whole) + "'");
  const std::string_view order_part = descriptor.substr(0, close);
  std::string_view rest = descriptor.substr(close + 1);

  std::optional<Poly> modulus;
  if (!rest.empty()) {
    constexpr std::string_view prefix = "[modulus=";
    if (rest.substr(0, prefix.size()) != prefix || rest.back() != ']') {
      throw ParseError("malformed field descriptor: '" + std::string(whole) + "'");
    }
    std::string_view list = rest.substr(prefix.size(), rest.size() - prefix.size() - 1);
    Poly m;
    while (!list.empty()) {
      const auto comma = list.find(',');
      m.push_back(parse_u32(list.substr(0, comma), whole));
      if (comma == std::string_view::npos) break;
      list.remove_prefix(comma + 1);
    }
    modulus = std::move(m);
  }

  const auto caret = order_part.find('^');
  if (caret == std::string_view::npos) {
    const std::uint32_t q = parse_u32(order_part, whole);
    if (modulus) {
      // GF(q)[modulus=...] with q = p^n: recover p and n from the order.
      const FiniteField base = of_order(q, max_order);
      return extension(base.characteristic(), base.degree(), modulus, max_order);
    }
    return of_order(q, max_order);
  }
  const std::uint32_t p = parse_u32(order_part.substr(0, caret), whole);
  const std::uint32_t n = parse_u32(order_part.substr(caret + 1), whole);
  return extension(p, n, modulus, max_order);
}

std::uint32_t FiniteField::characteristic() const { return impl_->p; }
std::uint32_t FiniteField::degree() const { return impl_->n; }
std::uint32_t FiniteField::order() const { return impl_->q; }
const Poly& FiniteField::modulus() const { return impl_->modulus; }

std::string FiniteField::descriptor() const {
  return "GF(" + std::to_string(impl_->p) + "^" + std::to_string(impl_->n) + ")[modulus=" +
         poly::to_string(impl_->modulus) + "]";
}

Index FiniteField::add(Index a, Index b) const {
  const Impl& f = *impl_;
  if (f.n == 1) {
    const std::uint32_t s = a + b;
    return s >= f.p ? s - f.p : s;
  }
  if (!f.add_table.empty()) return f.add_table[static_cast<std::size_t>(a) * f.q + b];
  return f.add_digits(a, b);
}

Index FiniteField::neg(Index a) const {
  const Impl& f = *impl_;
  if (f.n == 1) return a == 0 ? 0 : f.p - a;
  return f.neg_digits(a);
}

Index FiniteField::sub(Index a, Index b) const { return add(a, neg(b)); }

Index FiniteField::mul(Index a, Index b) const {
  const Impl& f = *impl_;
  if (f.n == 1) return static_cast<Index>(static_cast<std::uint64_t>(a) * b % f.p);
  if (a == 0 || b == 0) return 0;
  std::uint32_t k = f.log_table[a] + f.log_table[b];
  if (k >= f.q - 1) k -= f.q - 1;
  return f.exp_table[k];
}

Index FiniteField::inv(Index a) const {
  const Impl& f = *impl_;
  if (a == 0) throw DivisionByZero();
  if (f.n == 1) return poly::inv_mod(a, f.p);
  const auto eg = poly::ext_gcd(f.to_poly(a), f.modulus, f.p);
  if (eg.gcd != Poly{1}) throw DivisionByZero("element not invertible");
  return f.from_poly(eg.s);
}

Index FiniteField::inv_fermat(Index a) const {
  if (a == 0) throw DivisionByZero();
  // Polynomial route, independent of the log tables and of inv.
  const Impl& f = *impl_;
  if (f.n == 1) return static_cast<Index>(poly::pow_mod(a, f.q - 2, f.p));
  return f.from_poly(poly::pow_mod(f.to_poly(a), f.q - 2, f.modulus, f.p));
}

Index FiniteField::pow(Index a, std::uint64_t e) const {
  Index result = 1;
  Index base = a;
  while (e != 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

std::vector<std::uint32_t> FiniteField::coefficients(Index a) const {
  std::vector<std::uint32_t> out(impl_->n, 0);
  for (std::uint32_t i = 0; i < impl_->n; ++i) {
    out[i] = a % impl_->p;
    a /= impl_->p;
  }
  return out;
}

Index FiniteField::from_coefficients(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() > impl_->n) throw Error("too many coefficients for this field");
  Index out = 0, place = 1;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] >= impl_->p) throw Error("coefficient out of range [0, p)");
    out += coeffs[i] * place;
    place *= impl_->p;
  }
  return out;
}

FieldElem FiniteField::element(Index a) const { return FieldElem(*this, a); }
FieldElem FiniteField::zero() const { return FieldElem(*this, 0); }
FieldElem FiniteField::one() const { return FieldElem(*this, 1); }

std::vector<FieldElem> FiniteField::elements() const {
  std::vector<FieldElem> out;
  out.reserve(order());
  for (Index a = 0; a < order(); ++a) out.emplace_back(*this, a);
  return out;
}

std::vector<Index> FiniteField::quadratic_residues() const {
  std::vector<bool> is_square(order(), false);
  for (Index a = 1; a < order(); ++a) is_square[mul(a, a)] = true;
  std::vector<Index> out;
  for (Index a = 1; a < order(); ++a) {
    if (is_square[a]) out.push_back(a);
  }
  return out;
}

bool operator==(const FiniteField& a, const FiniteField& b) {
  if (a.impl_ == b.impl_) return true;
  return a.impl_->p == b.impl_->p && a.impl_->n == b.impl_->n && a.impl_->modulus == b.impl_->modulus;
}

void require_same_field(const FiniteField& a, const FiniteField& b) {
  if (!(a == b)) throw FieldMismatch();
}

FieldElem::FieldElem(FiniteField field, Index index) : field_(std::move(field)), index_(index) {
  if (index_ >= field_.order()) throw Error("element index " + std::to_string(index) + " out of range");
}

FieldElem FieldElem::inv() const { return {field_, field_.inv(index_)}; }

FieldElem operator+(const FieldElem& a, const FieldElem& b) {
  require_same_field(a.field_, b.field_);
  return {a.field_, a.field_.add(a.index_, b.index_)};
}

FieldElem operator-(const FieldElem& a, const FieldElem& b) {
  require_same_field(a.field_, b.field_);
  return {a.field_, a.field_.sub(a.index_, b.index_)};
}

FieldElem operator*(const FieldElem& a, const FieldElem& b) {
  require_same_field(a.field_, b.field_);
  return {a.field_, a.field_.mul(a.index_, b.index_)};
}

FieldElem operator/(const FieldElem& a, const FieldElem& b) {
  require_same_field(a.field_, b.field_);
  return {a.field_, a.field_.div(a.index_, b.index_)};
}

IndexSet IndexSet::full(std::size_t universe) {
  IndexSet s(universe);
  s.bits_.assign(universe, true);
  s.count_ = universe;
  return s;
}

IndexSet IndexSet::from_indices(std::size_t universe, std::span<const Index> indices) {
  IndexSet s(universe);
  for (Index i : indices) s.insert(i);
  return s;
}

void IndexSet::insert(Index i) {
  if (i >= bits_.size()) throw Error("index " + std::to_string(i) + " outside the universe of size " + std::to_string(bits_.size()));
  if (!bits_[i]) {
    bits_[i] = true;
    ++count_;
  }
}

void IndexSet::erase(Index i) {
  if (i < bits_.size() && bits_[i]) {
    bits_[i] = false;
    --count_;
  }
}

std::vector<Index> IndexSet::indices() const {
  std::vector<Index> out;
  out.reserve(count_);
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out.push_back(static_cast<Index>(i));
  }
  return out;
}

Subset::Subset(FiniteField field, IndexSet mask) : field_(std::move(field)), mask_(std::move(mask)) {
  if (mask_.universe() != field_.order()) throw Error("subset mask length must equal the field order");
}

Subset Subset::all(const FiniteField& field) { return Subset(field, IndexSet::full(field.order())); }

Subset Subset::of(const FiniteField& field, std::span<const Index> indices) {
  return Subset(field, IndexSet::from_indices(field.order(), indices));
}

}  // namespace sumprod

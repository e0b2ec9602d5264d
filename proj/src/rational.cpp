#include "sumprod/rational.hpp"

#include <cmath>

#include <boost/functional/hash.hpp>

#include "sumprod/errors.hpp"

namespace sumprod {

std::string to_string(const Rational& r) {
  return numerator_of(r).str() + "/" + denominator_of(r).str();
}

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) throw ParseError("malformed rational: '" + std::string(whole) + "'");
  BigInt value = 0;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c < '0' || c > '9') throw ParseError("malformed rational: '" + std::string(whole) + "'");
    value = value * 10 + (c - '0');
  }
  return negative ? BigInt(-value) : value;
}

int sign_of(const Rational& r) { return r.sign(); }

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  const BigInt num = parse_integer(text.substr(0, slash), text);
  const BigInt den = parse_integer(text.substr(slash + 1), text);
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return make_rational(num, den);
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

int sign_with_root(const Rational& a, const Rational& b, const Rational& c) {
  if (c.sign() < 0) throw Error("sign_with_root: negative radicand");
  const int sa = sign_of(a);
  const int sb = (c.sign() == 0) ? 0 : sign_of(b);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: the larger magnitude wins.
  const Rational lhs = a * a;
  const Rational rhs = b * b * c;
  if (lhs > rhs) return sa;
  if (lhs < rhs) return sb;
  return 0;
}

BigInt ceil_with_root(const Rational& a, const Rational& b, const Rational& c) {
  // Bracket the value using a floating-point estimate, then settle exactly.
  const double estimate = to_double(a) + to_double(b) * std::sqrt(to_double(c));
  if (!(std::fabs(estimate) < 9e17)) throw Error("ceil_with_root: value out of range");
  BigInt n = BigInt(static_cast<long long>(std::floor(estimate))) - 2;
  // Invariant after the loops: n - 1 < value <= n.
  while (sign_with_root(Rational(n) - a, -b, c) < 0) ++n;
  while (sign_with_root(Rational(n - 1) - a, -b, c) >= 0) --n;
  return n;
}

std::size_t RationalHash::operator()(const Rational& r) const noexcept {
  std::size_t seed = 0;
  const BigInt num = numerator_of(r);
  const BigInt den = denominator_of(r);
  const auto& nb = num.backend();
  const auto& db = den.backend();
  for (unsigned i = 0; i < nb.size(); ++i) boost::hash_combine(seed, nb.limbs()[i]);
  boost::hash_combine(seed, nb.sign());
  for (unsigned i = 0; i < db.size(); ++i) boost::hash_combine(seed, db.limbs()[i]);
  return seed;
}

}  // namespace sumprod

#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace sumprod {

using BigInt = boost::multiprecision::cpp_int;

/// Exact fraction in lowest terms with positive denominator; zero is 0/1.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

// Boost rejects a negative denominator, so the sign moves to the numerator.
inline Rational make_rational(const BigInt& num, const BigInt& den) {
  return den < 0 ? Rational(BigInt(-num), BigInt(-den)) : Rational(num, den);
}

/// Always "num/den", including integers ("3/1") and zero ("0/1").
std::string to_string(const Rational& r);

/// Accepts "n", "-n", "n/d". Throws ParseError on malformed input or d = 0.
Rational parse_rational(std::string_view text);

double to_double(const Rational& r);

/// Sign (-1, 0, +1) of a + b*sqrt(c), evaluated exactly. Requires c >= 0.
int sign_with_root(const Rational& a, const Rational& b, const Rational& c);

/// Smallest integer n with n >= a + b*sqrt(c) (exact ceiling).
BigInt ceil_with_root(const Rational& a, const Rational& b, const Rational& c);

struct RationalHash {
  std::size_t operator()(const Rational& r) const noexcept;
};

}  // namespace sumprod

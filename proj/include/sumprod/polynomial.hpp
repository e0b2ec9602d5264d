#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sumprod {

/// Polynomial over GF(p), coefficients low-to-high, no trailing zeros.
/// The zero polynomial is the empty vector.
using Poly = std::vector<std::uint32_t>;

namespace poly {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
/// Inverse of a modulo prime p via the extended Euclidean algorithm.
std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p);

/// Deterministic trial division. Used for field characteristics (small p).
bool is_prime_trial(std::uint64_t n);
/// Deterministic Miller-Rabin valid for all 64-bit n.
bool is_prime_u64(std::uint64_t n);

void trim(Poly& a);
int degree(const Poly& a);  // -1 for the zero polynomial
bool is_monic(const Poly& a);

Poly add(const Poly& a, const Poly& b, std::uint32_t p);
Poly sub(const Poly& a, const Poly& b, std::uint32_t p);
Poly mul(const Poly& a, const Poly& b, std::uint32_t p);
Poly scale(const Poly& a, std::uint32_t c, std::uint32_t p);

struct DivMod {
  Poly quotient;
  Poly remainder;
};
DivMod divmod(const Poly& a, const Poly& b, std::uint32_t p);
Poly mod(const Poly& a, const Poly& b, std::uint32_t p);

/// Monic gcd (zero if both inputs are zero).
Poly gcd(Poly a, Poly b, std::uint32_t p);

/// Returns s with s*a == g (mod m) where g = gcd(a, m) made monic.
struct ExtGcd {
  Poly gcd;
  Poly s;
};
ExtGcd ext_gcd(const Poly& a, const Poly& m, std::uint32_t p);

Poly pow_mod(const Poly& base, std::uint64_t exp, const Poly& m, std::uint32_t p);

/// Irreducibility of a monic polynomial of degree >= 1 over GF(p).
/// Dispatches to trial factorization for degree <= 4, Frobenius gcds above.
bool is_irreducible(const Poly& f, std::uint32_t p);
/// Exhaustive search for a monic factor of degree 1..deg/2.
bool is_irreducible_by_trial(const Poly& f, std::uint32_t p);
/// gcd(f, x^(p^i) - x) == 1 for all 1 <= i <= deg/2.
bool is_irreducible_by_frobenius(const Poly& f, std::uint32_t p);

/// Lexicographically smallest monic irreducible of degree n: non-leading
/// coefficients are scanned as a base-p counter, low coefficient least
/// significant (the same order as field element indices).
Poly smallest_irreducible(std::uint32_t p, std::uint32_t n);

/// "1,0,1" (low-to-high, including the leading coefficient).
std::string to_string(const Poly& a);
/// Human form such as "x^2+1".
std::string to_pretty(const Poly& a);

}  // namespace poly
}  // namespace sumprod

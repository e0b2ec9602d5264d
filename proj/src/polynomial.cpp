#include "sumprod/polynomial.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "sumprod/errors.hpp"

namespace sumprod::poly {

__extension__ using Wide = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<Wide>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t r0 = p, r1 = a % p;
  std::int64_t s0 = 0, s1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
  }
  if (r0 != 1) throw DivisionByZero();
  s0 %= static_cast<std::int64_t>(p);
  if (s0 < 0) s0 += p;
  return static_cast<std::uint32_t>(s0);
}

bool is_prime_trial(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

bool is_monic(const Poly& a) { return !a.empty() && a.back() == 1; }

Poly add(const Poly& a, const Poly& b, std::uint32_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    const std::uint32_t x = i < a.size() ? a[i] : 0;
    const std::uint32_t y = i < b.size() ? b[i] : 0;
    r[i] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(x) + y) % p);
  }
  trim(r);
  return r;
}

Poly sub(const Poly& a, const Poly& b, std::uint32_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    const std::uint32_t x = i < a.size() ? a[i] : 0;
    const std::uint32_t y = i < b.size() ? b[i] : 0;
    r[i] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(x) + p - y) % p);
  }
  trim(r);
  return r;
}

Poly mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      acc[i + j] = (acc[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p;
    }
  }
  Poly r(acc.begin(), acc.end());
  trim(r);
  return r;
}

Poly scale(const Poly& a, std::uint32_t c, std::uint32_t p) {
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(a[i]) * c % p);
  trim(r);
  return r;
}

DivMod divmod(const Poly& a, const Poly& b, std::uint32_t p) {
  if (b.empty()) throw DivisionByZero("polynomial division by zero");
  Poly rem = a;
  trim(rem);
  const int db = degree(b);
  if (degree(rem) < db) return {{}, rem};
  Poly quot(rem.size() - b.size() + 1, 0);
  const std::uint32_t lead_inv = inv_mod(b.back(), p);
  while (degree(rem) >= db) {
    const int shift = degree(rem) - db;
    const auto c = static_cast<std::uint32_t>(static_cast<std::uint64_t>(rem.back()) * lead_inv % p);
    quot[shift] = c;
    for (int i = 0; i <= db; ++i) {
      const std::uint64_t sub = static_cast<std::uint64_t>(c) * b[i] % p;
      rem[shift + i] = static_cast<std::uint32_t>((rem[shift + i] + p - sub) % p);
    }
    trim(rem);
  }
  trim(quot);
  return {quot, rem};
}

Poly mod(const Poly& a, const Poly& b, std::uint32_t p) { return divmod(a, b, p).remainder; }

namespace {

Poly make_monic(const Poly& a, std::uint32_t p) {
  if (a.empty()) return a;
  return scale(a, inv_mod(a.back(), p), p);
}

}  // namespace

Poly gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a, p);
}

ExtGcd ext_gcd(const Poly& a, const Poly& m, std::uint32_t p) {
  Poly r0 = m, r1 = mod(a, m, p);
  Poly s0 = {}, s1 = {1};
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1, p);
    Poly s2 = sub(s0, mul(q, s1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.empty()) return {{}, {}};
  const std::uint32_t lead_inv = inv_mod(r0.back(), p);
  return {scale(r0, lead_inv, p), mod(scale(s0, lead_inv, p), m, p)};
}

Poly pow_mod(const Poly& base, std::uint64_t exp, const Poly& m, std::uint32_t p) {
  Poly result = mod(Poly{1}, m, p);
  Poly b = mod(base, m, p);
  while (exp != 0) {
    if (exp & 1) result = mod(mul(result, b, p), m, p);
    b = mod(mul(b, b, p), m, p);
    exp >>= 1;
  }
  return result;
}

namespace {

void require_monic(const Poly& f) {
  if (!is_monic(f) || degree(f) < 1) throw Error("irreducibility test needs a monic polynomial of degree >= 1");
}

}  // namespace

bool is_irreducible_by_trial(const Poly& f, std::uint32_t p) {
  require_monic(f);
  const int d = degree(f);
  for (int k = 1; k <= d / 2; ++k) {
    // Enumerate monic polynomials of degree k by their lower coefficients.
    Poly g(k + 1, 0);
    g[k] = 1;
    while (true) {
      if (mod(f, g, p).empty()) return false;
      int i = 0;
      while (i < k && ++g[i] == p) g[i++] = 0;
      if (i == k) break;
    }
  }
  return true;
}

bool is_irreducible_by_frobenius(const Poly& f, std::uint32_t p) {
  require_monic(f);
  const int d = degree(f);
  const Poly x = {0, 1};
  Poly frob = x;  // x^(p^i) mod f
  for (int i = 1; i <= d / 2; ++i) {
    frob = pow_mod(frob, p, f, p);
    const Poly g = gcd(f, sub(frob, x, p), p);
    if (degree(g) != 0) return false;
  }
  return true;
}

bool is_irreducible(const Poly& f, std::uint32_t p) {
  return degree(f) <= 4 ? is_irreducible_by_trial(f, p) : is_irreducible_by_frobenius(f, p);
}

Poly smallest_irreducible(std::uint32_t p, std::uint32_t n) {
  if (n == 1) return {0, 1};
  Poly f(n + 1, 0);
  f[n] = 1;
  while (true) {
    if (is_irreducible(f, p)) return f;
    std::uint32_t i = 0;
    while (i < n && ++f[i] == p) f[i++] = 0;
    if (i == n) break;
  }
  throw Error("no irreducible polynomial found");  // unreachable for prime p
}

std::string to_string(const Poly& a) {
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(a[i]);
  }
  return out.empty() ? "0" : out;
}

std::string to_pretty(const Poly& a) {
  if (a.empty()) return "0";
  std::string out;
  for (int i = degree(a); i >= 0; --i) {
    const std::uint32_t c = a[i];
    if (c == 0) continue;
    if (!out.empty()) out += '+';
    if (i == 0 || c != 1) out += std::to_string(c);
    if (i >= 1) out += 'x';
    if (i >= 2) out += '^' + std::to_string(i);
  }
  return out;
}

}  // namespace sumprod::poly

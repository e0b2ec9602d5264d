#pragma once

// Reference implementations that share nothing with the library except the
// element encoding (base-p digits, constant coefficient least significant)
// and the modulus polynomial. Arithmetic is schoolbook polynomial arithmetic
// with no tables, and every quantity is computed straight from its
// definition.

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Rat = boost::multiprecision::cpp_rational;
using Elem = std::uint32_t;

class Field {
 public:
  // modulus: monic, low-to-high coefficients, degree n (n = 1 for GF(p)).
  Field(std::uint32_t p, std::vector<std::uint32_t> modulus) : p_(p), mod_(std::move(modulus)) {
    n_ = static_cast<std::uint32_t>(mod_.size() - 1);
    q_ = 1;
    for (std::uint32_t i = 0; i < n_; ++i) q_ *= p_;
  }

  std::uint32_t order() const { return q_; }

  std::vector<std::uint32_t> digits(Elem a) const {
    std::vector<std::uint32_t> d(n_);
    for (std::uint32_t i = 0; i < n_; ++i) {
      d[i] = a % p_;
      a /= p_;
    }
    return d;
  }

  Elem pack(const std::vector<std::uint32_t>& d) const {
    Elem a = 0;
    for (std::uint32_t i = n_; i-- > 0;) a = a * p_ + d[i];
    return a;
  }

  Elem add(Elem a, Elem b) const {
    auto x = digits(a), y = digits(b);
    for (std::uint32_t i = 0; i < n_; ++i) x[i] = (x[i] + y[i]) % p_;
    return pack(x);
  }

  Elem neg(Elem a) const {
    auto x = digits(a);
    for (auto& c : x) c = (p_ - c) % p_;
    return pack(x);
  }

  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

  Elem mul(Elem a, Elem b) const {
    const auto x = digits(a), y = digits(b);
    std::vector<std::uint64_t> prod(2 * n_, 0);
    for (std::uint32_t i = 0; i < n_; ++i)
      for (std::uint32_t j = 0; j < n_; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{x[i]} * y[j]) % p_;
    // Reduce from the top using the monic modulus.
    for (std::uint32_t k = 2 * n_; k-- > n_;) {
      const std::uint64_t c = prod[k];
      if (c == 0) continue;
      prod[k] = 0;
      for (std::uint32_t i = 0; i < n_; ++i) {
        prod[k - n_ + i] = (prod[k - n_ + i] + (p_ - c) * mod_[i]) % p_;
      }
    }
    std::vector<std::uint32_t> d(n_);
    for (std::uint32_t i = 0; i < n_; ++i) d[i] = static_cast<std::uint32_t>(prod[i]);
    return pack(d);
  }

  // Linear search, fine for the small fields the oracles are used on.
  Elem inv(Elem a) const {
    for (Elem b = 1; b < q_; ++b)
      if (mul(a, b) == 1) return b;
    return 0;
  }

 private:
  std::uint32_t p_;
  std::uint32_t n_;
  std::uint32_t q_;
  std::vector<std::uint32_t> mod_;
};

using Mask = std::vector<bool>;

inline std::vector<std::pair<Elem, Elem>> witnesses(const Field& f, const Mask& e1, const Mask& e2) {
  std::vector<std::pair<Elem, Elem>> out;
  for (Elem u = 0; u < f.order(); ++u)
    for (Elem y = 1; y < f.order(); ++y)
      if (e1[f.add(u, y)] && e2[f.mul(u, y)]) out.emplace_back(u, y);
  return out;
}

// D = {u != 0 : #{y : u + y in E1, u*y in E2} > s}
inline std::set<Elem> threshold_set(const Field& f, const Mask& e1, const Mask& e2, std::size_t s) {
  std::set<Elem> d;
  for (Elem u = 1; u < f.order(); ++u) {
    std::size_t count = 0;
    for (Elem y = 0; y < f.order(); ++y)
      if (e1[f.add(u, y)] && e2[f.mul(u, y)]) ++count;
    if (count > s) d.insert(u);
  }
  return d;
}

inline Rat measure(const Mask& s) {
  std::size_t k = 0;
  for (bool b : s) k += b;
  return Rat(k, s.size());
}

// (1/|F*|) sum_u mu(B ∩ g_u C) with g_u(x) = u(x - u).
inline Rat twisted_average(const Field& f, const Mask& b, const Mask& c) {
  const Elem q = f.order();
  Rat total = 0;
  for (Elem u = 1; u < q; ++u) {
    std::size_t hits = 0;
    for (Elem x = 0; x < q; ++x)
      if (c[x] && b[f.mul(u, f.sub(x, u))]) ++hits;
    total += Rat(hits, q);
  }
  return total / (q - 1);
}

// <1_B, P_M P_A 1_C> with both averages written out as nested sums.
inline Rat projected_inner(const Field& f, const Mask& b, const Mask& c) {
  const Elem q = f.order();
  std::vector<Rat> pa(q);
  for (Elem x = 0; x < q; ++x) {
    Rat s = 0;
    for (Elem u = 0; u < q; ++u) s += c[f.add(x, u)] ? 1 : 0;
    pa[x] = s / q;
  }
  Rat inner = 0;
  for (Elem x = 0; x < q; ++x) {
    if (!b[x]) continue;
    Rat s = 0;
    for (Elem v = 1; v < q; ++v) s += pa[f.mul(v, x)];
    inner += s / (q - 1);
  }
  return inner / q;
}

inline std::vector<std::pair<Elem, Elem>> degenerate_pairs(const Field& f) {
  std::vector<std::pair<Elem, Elem>> out;
  for (Elem x = 0; x < f.order(); ++x)
    for (Elem y = 0; y < f.order(); ++y)
      if (f.add(x, y) == f.mul(x, y)) out.emplace_back(x, y);
  return out;
}

// Exists u != 0, y not in {0, 1} with u, y + u, yu pairwise distinct and of
// one color.
inline bool has_monochromatic_triple(const Field& f, const std::vector<std::uint32_t>& color) {
  const Elem q = f.order();
  for (Elem u = 1; u < q; ++u) {
    for (Elem y = 2; y < q; ++y) {
      const Elem s = f.add(y, u), p = f.mul(y, u);
      if (s == p || s == u || p == u) continue;
      if (color[u] == color[s] && color[s] == color[p]) return true;
    }
  }
  return false;
}

// |F ∩ (F - x)| / |F| or |F ∩ F/x| / |F| by direct set lookup.
inline Rat invariance_ratio(const std::vector<Rat>& elements, const Rat& x, bool additive) {
  const std::set<Rat> members(elements.begin(), elements.end());
  std::size_t hits = 0;
  for (const auto& a : elements)
    if (members.count(additive ? Rat(a + x) : Rat(a * x))) ++hits;
  return Rat(hits, elements.size());
}

}  // namespace oracle

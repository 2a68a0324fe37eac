/* Copyright (C) 2026 The tqc authors
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

// Exact arithmetic in Z/p^n for a fixed odd prime p: valuations, inverses,
// Jacobi symbols and square roots (Tonelli-Shanks mod p + Hensel lifting).

#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace tqc {

// ---------------------------------------------------------------------------
// error taxonomy (shared by all modules)
// ---------------------------------------------------------------------------

// input is divisible by p where a unit was required
class non_unit_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// rational function denominator vanishes mod p at the evaluation point
class pole_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// form fails the gcd(a(4ac-b^2)Delta, p) = 1 condition
class not_admissible_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// declared work budget would be exceeded
class budget_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// malformed text input
class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// internal invariant failed; signals an implementation bug, not bad input
class consistency_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// ---------------------------------------------------------------------------
// p-adic valuation
// ---------------------------------------------------------------------------

// sentinel for val_p(0); callers must handle the zero case explicitly
inline constexpr int val_infinity = std::numeric_limits<int>::max();

namespace detail {

inline bool is_prime_by_trial_division(std::int64_t p) {
  if (p < 2) return false;
  if (p % 2 == 0) return p == 2;
  for (std::int64_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

inline std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t q) {
  return static_cast<std::int64_t>(static_cast<__int128>(a) * b % q);
}

inline std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t q) {
  std::int64_t acc = 1 % q;
  base %= q;
  if (base < 0) base += q;
  while (exp > 0) {
    if (exp & 1) acc = mul_mod(acc, base, q);
    base = mul_mod(base, base, q);
    exp >>= 1;
  }
  return acc;
}

// inverse of x mod m for gcd(x, m) = 1, by extended Euclid
inline std::int64_t inv_mod_i64(std::int64_t x, std::int64_t m) {
  std::int64_t r0 = m, r1 = x % m;
  if (r1 < 0) r1 += m;
  std::int64_t t0 = 0, t1 = 1;
  while (r1 != 0) {
    std::int64_t qq = r0 / r1;
    std::int64_t r2 = r0 - qq * r1;
    std::int64_t t2 = t0 - qq * t1;
    r0 = r1; r1 = r2;
    t0 = t1; t1 = t2;
  }
  if (r0 != 1) throw non_unit_error("inv_mod: argument is not a unit");
  if (t0 < 0) t0 += m;
  return t0;
}

}  // namespace detail

// largest e with p^e | x; val_infinity for x = 0
inline int val_p(std::int64_t x, std::int64_t p) {
  if (p < 2) throw std::domain_error("val_p: p must be a prime >= 2");
  if (x == 0) return val_infinity;
  if (x < 0) x = -x;
  int e = 0;
  while (x % p == 0) {
    x /= p;
    ++e;
  }
  return e;
}

inline int val_p_i128(__int128 x, std::int64_t p) {
  if (p < 2) throw std::domain_error("val_p: p must be a prime >= 2");
  if (x == 0) return val_infinity;
  if (x < 0) x = -x;
  int e = 0;
  while (x % p == 0) {
    x /= p;
    ++e;
  }
  return e;
}

// ---------------------------------------------------------------------------
// the ambient ring Z/p^n
// ---------------------------------------------------------------------------

// canonical representative of an element of Z/p^n: value in [0, q)
struct Residue {
  std::int64_t value = 0;
};

class PrimePowerModulus {
 public:
  // products of two canonical residues must fit in __int128 with headroom
  // left for the multi-factor identities downstream
  static constexpr std::int64_t max_modulus = std::int64_t(1) << 31;

  PrimePowerModulus(std::int64_t p, int n) : p_(p), n_(n) {
    if (p < 3 || p % 2 == 0)
      throw std::domain_error("PrimePowerModulus: p must be an odd prime >= 3");
    if (!detail::is_prime_by_trial_division(p))
      throw std::domain_error("PrimePowerModulus: p = " + std::to_string(p) +
                              " is not prime");
    if (n < 1) throw std::domain_error("PrimePowerModulus: n must be >= 1");
    q_ = 1;
    for (int i = 0; i < n; ++i) {
      if (q_ > max_modulus / p)
        throw std::domain_error("PrimePowerModulus: p^n exceeds the supported width");
      q_ *= p;
    }
  }

  std::int64_t p() const { return p_; }
  int n() const { return n_; }
  std::int64_t q() const { return q_; }

  Residue reduce(std::int64_t x) const {
    std::int64_t v = x % q_;
    if (v < 0) v += q_;
    return Residue{v};
  }

  Residue reduce_wide(__int128 x) const {
    auto v = static_cast<std::int64_t>(x % q_);
    if (v < 0) v += q_;
    return Residue{v};
  }

  // the following expect canonical inputs in [0, q)
  std::int64_t add(std::int64_t a, std::int64_t b) const {
    std::int64_t s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  std::int64_t sub(std::int64_t a, std::int64_t b) const {
    std::int64_t s = a - b;
    return s < 0 ? s + q_ : s;
  }
  std::int64_t mul(std::int64_t a, std::int64_t b) const {
    return detail::mul_mod(a, b, q_);
  }
  std::int64_t pow(std::int64_t base, std::int64_t exp) const {
    return detail::pow_mod(base, exp, q_);
  }

  bool is_unit(std::int64_t x) const {
    std::int64_t v = x % p_;
    return v != 0;
  }

  friend bool operator==(const PrimePowerModulus& lhs, const PrimePowerModulus& rhs) {
    return lhs.p_ == rhs.p_ && lhs.n_ == rhs.n_;
  }

 private:
  std::int64_t p_;
  int n_;
  std::int64_t q_ = 1;
};

// ---------------------------------------------------------------------------
// Jacobi symbol
// ---------------------------------------------------------------------------

// (a/m) for odd positive m; equals the Legendre symbol for prime m
inline int jacobi(std::int64_t a, std::int64_t m) {
  if (m <= 0 || m % 2 == 0)
    throw std::domain_error("jacobi: lower argument must be odd and positive");
  a %= m;
  if (a < 0) a += m;
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      std::int64_t r = m % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, m);
    if (a % 4 == 3 && m % 4 == 3) result = -result;
    a %= m;
  }
  return m == 1 ? result : 0;
}

// ---------------------------------------------------------------------------
// inverses and square roots mod p^n
// ---------------------------------------------------------------------------

inline Residue inv_mod(std::int64_t x, const PrimePowerModulus& m) {
  std::int64_t v = m.reduce(x).value;
  if (v % m.p() == 0) throw non_unit_error("inv_mod: p divides the argument");
  return Residue{detail::inv_mod_i64(v, m.q())};
}

namespace detail {

// one square root of a mod prime p, for a a unit quadratic residue
inline std::int64_t sqrt_mod_prime(std::int64_t a, std::int64_t p) {
  a %= p;
  if (a < 0) a += p;
  if (p % 4 == 3) return pow_mod(a, (p + 1) / 4, p);
  // Tonelli-Shanks
  std::int64_t s = p - 1;
  int e = 0;
  while (s % 2 == 0) {
    s /= 2;
    ++e;
  }
  std::int64_t nqr = 2;
  while (jacobi(nqr, p) != -1) ++nqr;
  std::int64_t x = pow_mod(a, (s + 1) / 2, p);
  std::int64_t b = pow_mod(a, s, p);
  std::int64_t g = pow_mod(nqr, s, p);
  int r = e;
  while (b != 1) {
    std::int64_t t = b;
    int k = 0;
    while (t != 1) {
      t = mul_mod(t, t, p);
      ++k;
    }
    std::int64_t gs = g;
    for (int i = 0; i < r - k - 1; ++i) gs = mul_mod(gs, gs, p);
    x = mul_mod(x, gs, p);
    g = mul_mod(gs, gs, p);
    b = mul_mod(b, g, p);
    r = k;
  }
  return x;
}

}  // namespace detail

// Both square roots of a unit a mod p^n, or absent when (a/p) = -1.
// The first root is the principal one (the representative in [1, q/2));
// the pair sums to q.
inline std::optional<std::pair<Residue, Residue>> sqrt_mod(
    std::int64_t a, const PrimePowerModulus& m) {
  std::int64_t v = m.reduce(a).value;
  if (v % m.p() == 0) throw non_unit_error("sqrt_mod: p divides the argument");
  if (jacobi(v, m.p()) == -1) return std::nullopt;
  std::int64_t p = m.p();
  std::int64_t root = detail::sqrt_mod_prime(v, p);
  // Hensel: refine x with x^2 ≡ a mod p^k to mod p^{k+1}
  std::int64_t pk = p;
  for (int k = 1; k < m.n(); ++k) {
    pk *= p;
    std::int64_t rem = static_cast<std::int64_t>(
        ((static_cast<__int128>(root) * root - v) % pk + pk) % pk);
    std::int64_t inv2r = detail::inv_mod_i64(2 * root % pk, pk);
    root = static_cast<std::int64_t>(
        ((root - static_cast<__int128>(rem) * inv2r) % pk + pk) % pk);
  }
  std::int64_t other = m.q() - root;
  if (root > other) std::swap(root, other);
  return std::make_pair(Residue{root}, Residue{other});
}

}  // namespace tqc

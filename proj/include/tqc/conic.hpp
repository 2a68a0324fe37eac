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

// The ternary quadratic form Q(x,y,z), its dehomogenization q(x,y), base
// points by Hensel lifting, the line parametrization of the conic
// q(x,y) ≡ 0 mod p^n, and the stratified enumeration of the full solution
// set together with its closed-form cardinality.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "tqc/modarith.hpp"

namespace tqc {

struct DehomogenizedForm {
  // a x^2 + b xy + c y^2 + d x + e y + f
  std::int64_t a, b, c, d, e, f;
  std::int64_t disc2;  // b^2 - 4ac

  DehomogenizedForm(std::int64_t a_, std::int64_t b_, std::int64_t c_,
                    std::int64_t d_, std::int64_t e_, std::int64_t f_)
      : a(a_), b(b_), c(c_), d(d_), e(e_), f(f_) {
    disc2 = detail_checked(static_cast<__int128>(b) * b -
                           static_cast<__int128>(4) * a * c);
  }

  std::int64_t eval_mod(std::int64_t x, std::int64_t y,
                        const PrimePowerModulus& m) const {
    std::int64_t xv = m.reduce(x).value, yv = m.reduce(y).value;
    std::int64_t acc = m.reduce(f).value;
    acc = m.add(acc, m.mul(m.reduce(d).value, xv));
    acc = m.add(acc, m.mul(m.reduce(e).value, yv));
    acc = m.add(acc, m.mul(m.reduce(a).value, m.mul(xv, xv)));
    acc = m.add(acc, m.mul(m.reduce(b).value, m.mul(xv, yv)));
    acc = m.add(acc, m.mul(m.reduce(c).value, m.mul(yv, yv)));
    return acc;
  }

  // partial derivatives
  std::int64_t qx_mod(std::int64_t x, std::int64_t y,
                      const PrimePowerModulus& m) const {
    std::int64_t xv = m.reduce(x).value, yv = m.reduce(y).value;
    std::int64_t acc = m.reduce(d).value;
    acc = m.add(acc, m.mul(m.reduce(2 * a).value, xv));
    acc = m.add(acc, m.mul(m.reduce(b).value, yv));
    return acc;
  }
  std::int64_t qy_mod(std::int64_t x, std::int64_t y,
                      const PrimePowerModulus& m) const {
    std::int64_t xv = m.reduce(x).value, yv = m.reduce(y).value;
    std::int64_t acc = m.reduce(e).value;
    acc = m.add(acc, m.mul(m.reduce(b).value, xv));
    acc = m.add(acc, m.mul(m.reduce(2 * c).value, yv));
    return acc;
  }

 private:
  static std::int64_t detail_checked(__int128 v) {
    if (v > std::numeric_limits<std::int64_t>::max() ||
        v < std::numeric_limits<std::int64_t>::min())
      throw std::overflow_error("DehomogenizedForm: coefficient overflow");
    return static_cast<std::int64_t>(v);
  }
};

struct TernaryForm {
  // a x^2 + b xy + c y^2 + d xz + e yz + f z^2
  std::int64_t a, b, c, d, e, f;
  std::int64_t four_delta;  // 4·det of the half-integral associated matrix
  std::int64_t disc2;       // b^2 - 4ac

  TernaryForm(std::int64_t a_, std::int64_t b_, std::int64_t c_,
              std::int64_t d_, std::int64_t e_, std::int64_t f_)
      : a(a_), b(b_), c(c_), d(d_), e(e_), f(f_) {
    // 4·det = 4acf + bed - ae^2 - cd^2 - fb^2
    __int128 fd = static_cast<__int128>(4) * a * c * f +
                  static_cast<__int128>(b) * e * d -
                  static_cast<__int128>(a) * e * e -
                  static_cast<__int128>(c) * d * d -
                  static_cast<__int128>(f) * b * b;
    four_delta = checked(fd);
    disc2 = checked(static_cast<__int128>(b) * b - static_cast<__int128>(4) * a * c);
  }

  DehomogenizedForm dehomogenize() const {
    return DehomogenizedForm(a, b, c, d, e, f);
  }

  std::int64_t eval_mod(std::int64_t x, std::int64_t y, std::int64_t z,
                        const PrimePowerModulus& m) const {
    std::int64_t xv = m.reduce(x).value, yv = m.reduce(y).value,
                 zv = m.reduce(z).value;
    std::int64_t acc = 0;
    acc = m.add(acc, m.mul(m.reduce(a).value, m.mul(xv, xv)));
    acc = m.add(acc, m.mul(m.reduce(b).value, m.mul(xv, yv)));
    acc = m.add(acc, m.mul(m.reduce(c).value, m.mul(yv, yv)));
    acc = m.add(acc, m.mul(m.reduce(d).value, m.mul(xv, zv)));
    acc = m.add(acc, m.mul(m.reduce(e).value, m.mul(yv, zv)));
    acc = m.add(acc, m.mul(m.reduce(f).value, m.mul(zv, zv)));
    return acc;
  }

 private:
  static std::int64_t checked(__int128 v) {
    if (v > std::numeric_limits<std::int64_t>::max() ||
        v < std::numeric_limits<std::int64_t>::min())
      throw std::overflow_error("TernaryForm: invariant overflow");
    return static_cast<std::int64_t>(v);
  }
};

// ---------------------------------------------------------------------------
// admissibility: gcd(a (4ac-b^2) 4Delta, p) = 1 for odd prime p
// ---------------------------------------------------------------------------

struct AdmissibilityReport {
  std::int64_t p = 0;
  bool p_odd_prime = false;
  std::int64_t gcd_a = 0;
  std::int64_t gcd_disc2 = 0;
  std::int64_t gcd_four_delta = 0;
  bool accepted = false;
};

inline AdmissibilityReport validate(const TernaryForm& Q, std::int64_t p) {
  AdmissibilityReport r;
  r.p = p;
  r.p_odd_prime = p >= 3 && p % 2 == 1 && detail::is_prime_by_trial_division(p);
  auto g = [p](std::int64_t v) { return std::gcd(std::llabs(v) % p, p); };
  r.gcd_a = g(Q.a);
  r.gcd_disc2 = g(Q.disc2);
  r.gcd_four_delta = g(Q.four_delta);
  r.accepted = r.p_odd_prime && r.gcd_a == 1 && r.gcd_disc2 == 1 &&
               r.gcd_four_delta == 1;
  return r;
}

inline void require_admissible(const TernaryForm& Q, std::int64_t p) {
  AdmissibilityReport r = validate(Q, p);
  if (!r.accepted)
    throw not_admissible_error(
        "form fails admissibility at p = " + std::to_string(p) +
        " (gcd a: " + std::to_string(r.gcd_a) +
        ", gcd b^2-4ac: " + std::to_string(r.gcd_disc2) +
        ", gcd 4Delta: " + std::to_string(r.gcd_four_delta) + ")");
}

// ---------------------------------------------------------------------------
// base points and the line parametrization
// ---------------------------------------------------------------------------

struct BasePoint {
  Residue alpha, beta;  // q(alpha, beta) ≡ 0 mod p^n
  Residue A, B;         // q_x and q_y at the base point
};

// Lexicographically smallest solution mod p, lifted to p^n with the
// canonical branch: perturb beta when q_y is a unit, else alpha.
inline BasePoint find_base_point(const DehomogenizedForm& q,
                                 const PrimePowerModulus& m) {
  std::int64_t p = m.p();
  PrimePowerModulus mp(p, 1);
  std::int64_t alpha = -1, beta = -1;
  for (std::int64_t x = 0; x < p && alpha < 0; ++x)
    for (std::int64_t y = 0; y < p; ++y)
      if (q.eval_mod(x, y, mp) == 0) {
        alpha = x;
        beta = y;
        break;
      }
  if (alpha < 0)
    throw consistency_error("find_base_point: no solution mod p for an admissible form");

  std::int64_t pk = p;
  for (int k = 1; k < m.n(); ++k) {
    PrimePowerModulus mk1(p, k + 1);
    std::int64_t value = q.eval_mod(alpha, beta, mk1);
    // value ≡ 0 mod p^k; solve value/p^k + qx·k1 + qy·k2 ≡ 0 mod p
    if (value % pk != 0)
      throw consistency_error("find_base_point: lift lost the congruence");
    std::int64_t lead = (value / pk) % p;
    std::int64_t qx = q.qx_mod(alpha, beta, mp);
    std::int64_t qy = q.qy_mod(alpha, beta, mp);
    if (qy % p != 0) {
      std::int64_t k2 = mp.mul(mp.sub(0, lead), inv_mod(qy, mp).value);
      beta += k2 * pk;
    } else if (qx % p != 0) {
      std::int64_t k1 = mp.mul(mp.sub(0, lead), inv_mod(qx, mp).value);
      alpha += k1 * pk;
    } else {
      throw consistency_error("find_base_point: singular point on an admissible conic");
    }
    pk *= p;
  }

  BasePoint base;
  base.alpha = m.reduce(alpha);
  base.beta = m.reduce(beta);
  base.A = m.reduce(q.qx_mod(alpha, beta, m));
  base.B = m.reduce(q.qy_mod(alpha, beta, m));
  if (base.A.value % p == 0 && base.B.value % p == 0)
    throw consistency_error("find_base_point: both partials vanish mod p");
  if (q.eval_mod(base.alpha.value, base.beta.value, m) != 0)
    throw consistency_error("find_base_point: lifted point is not a solution");
  return base;
}

// slope parameter t in Z/p^n extended by the point at infinity
class SlopeParam {
 public:
  static SlopeParam infinity() { return SlopeParam(true, 0); }
  static SlopeParam finite(std::int64_t t) { return SlopeParam(false, t); }
  bool is_infinite() const { return infinite_; }
  std::int64_t value() const {
    if (infinite_) throw std::logic_error("SlopeParam: infinite parameter has no value");
    return t_;
  }

 private:
  SlopeParam(bool inf, std::int64_t t) : infinite_(inf), t_(t) {}
  bool infinite_;
  std::int64_t t_;
};

// The point cut out by the line of slope t through the base point:
// (alpha - t·M(t), beta - M(t)) with M(t) = (At+B)/(at^2+bt+c), or
// (alpha - A/a, beta) at t = infinity.  Absent when at^2+bt+c is not a
// unit mod p.
inline std::optional<std::pair<Residue, Residue>> parametrize_point(
    const DehomogenizedForm& q, const BasePoint& base, SlopeParam t,
    const PrimePowerModulus& m) {
  if (t.is_infinite()) {
    std::int64_t ainv = inv_mod(q.a, m).value;
    std::int64_t x = m.sub(base.alpha.value, m.mul(base.A.value, ainv));
    return std::make_pair(Residue{x}, base.beta);
  }
  std::int64_t tv = m.reduce(t.value()).value;
  std::int64_t w = m.reduce(q.c).value;
  w = m.add(w, m.mul(m.reduce(q.b).value, tv));
  w = m.add(w, m.mul(m.reduce(q.a).value, m.mul(tv, tv)));
  if (w % m.p() == 0) return std::nullopt;
  std::int64_t mt = m.mul(m.add(m.mul(base.A.value, tv), base.B.value),
                          inv_mod(w, m).value);
  std::int64_t x = m.sub(base.alpha.value, m.mul(tv, mt));
  std::int64_t y = m.sub(base.beta.value, mt);
  return std::make_pair(Residue{x}, Residue{y});
}

// ---------------------------------------------------------------------------
// stratified enumeration
// ---------------------------------------------------------------------------

struct SolutionEntry {
  int s;            // stratum index, 0..n
  std::int64_t t;   // parameter within the stratum, 1..p^{n-s}
  std::int64_t x, y;
};

// Stratum s holds the points at parameters t/p^s:
//   x = alpha - t (At + B p^s) / w,  y = beta - p^s (At + B p^s) / w,
//   w = a t^2 + b t p^s + c p^{2s},
// for t = 1..p^{n-s} with w a unit mod p.  For s >= 1 the admission
// condition reduces to p ∤ t.
inline std::vector<SolutionEntry> enumerate_stratum(const DehomogenizedForm& q,
                                                    const BasePoint& base,
                                                    int s,
                                                    const PrimePowerModulus& m) {
  if (s < 0 || s > m.n())
    throw std::domain_error("enumerate_stratum: stratum index out of range");
  std::int64_t p = m.p();
  std::int64_t t_count = 1;
  for (int i = 0; i < m.n() - s; ++i) t_count *= p;
  std::int64_t ps = m.pow(p, s);  // p^s mod q (0 when s = n)
  std::int64_t a = m.reduce(q.a).value, b = m.reduce(q.b).value,
               c = m.reduce(q.c).value;
  std::int64_t c_ps2 = m.mul(c, m.mul(ps, ps));
  std::int64_t b_ps = m.mul(b, ps);
  std::int64_t B_ps = m.mul(base.B.value, ps);

  std::vector<SolutionEntry> out;
  out.reserve(static_cast<std::size_t>(t_count));
  for (std::int64_t t = 1; t <= t_count; ++t) {
    std::int64_t tv = m.reduce(t).value;
    if (s >= 1) {
      if (t % p == 0) continue;
    } else {
      std::int64_t w0 = m.add(m.add(m.mul(a, m.mul(tv, tv)), m.mul(b, tv)), c);
      if (w0 % p == 0) continue;
    }
    std::int64_t w = m.add(m.add(m.mul(a, m.mul(tv, tv)), m.mul(b_ps, tv)), c_ps2);
    std::int64_t winv = inv_mod(w, m).value;
    std::int64_t num = m.add(m.mul(base.A.value, tv), B_ps);
    std::int64_t mt = m.mul(num, winv);
    std::int64_t x = m.sub(base.alpha.value, m.mul(tv, mt));
    std::int64_t y = m.sub(base.beta.value, m.mul(ps, mt));
    out.push_back(SolutionEntry{s, t, x, y});
  }
  return out;
}

class ConicSolutionSet {
 public:
  ConicSolutionSet(std::vector<SolutionEntry> entries, PrimePowerModulus m)
      : entries_(std::move(entries)), modulus_(m) {}

  const std::vector<SolutionEntry>& entries() const { return entries_; }
  const PrimePowerModulus& modulus() const { return modulus_; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<SolutionEntry> entries_;
  PrimePowerModulus modulus_;
};

// closed-form count p^{n-1}(p - (b^2-4ac / p))
inline std::int64_t count_solutions(const DehomogenizedForm& q,
                                    const PrimePowerModulus& m) {
  if (q.a % m.p() == 0 || q.disc2 % m.p() == 0)
    throw not_admissible_error("count_solutions: form not admissible at p");
  std::int64_t chi = jacobi(q.disc2, m.p());
  std::int64_t count = m.p() - chi;
  for (int i = 1; i < m.n(); ++i) count *= m.p();
  return count;
}

// Concatenation of all strata, ordered by (s, t); checks pairwise
// distinctness and the closed-form cardinality before returning.
inline ConicSolutionSet enumerate_all(const DehomogenizedForm& q,
                                      const PrimePowerModulus& m) {
  BasePoint base = find_base_point(q, m);
  std::vector<SolutionEntry> entries;
  for (int s = 0; s <= m.n(); ++s) {
    auto stratum = enumerate_stratum(q, base, s, m);
    entries.insert(entries.end(), stratum.begin(), stratum.end());
  }
  std::int64_t expected = count_solutions(q, m);
  if (static_cast<std::int64_t>(entries.size()) != expected)
    throw consistency_error("enumerate_all: cardinality mismatch, got " +
                            std::to_string(entries.size()) + " expected " +
                            std::to_string(expected));
  std::vector<std::pair<std::int64_t, std::int64_t>> pts;
  pts.reserve(entries.size());
  for (const auto& s : entries) pts.emplace_back(s.x, s.y);
  std::sort(pts.begin(), pts.end());
  if (std::adjacent_find(pts.begin(), pts.end()) != pts.end())
    throw consistency_error("enumerate_all: strata are not disjoint");
  for (const auto& s : entries)
    if (q.eval_mod(s.x, s.y, m) != 0)
      throw consistency_error("enumerate_all: enumerated point is not a solution");
  return ConicSolutionSet(std::move(entries), m);
}

// exhaustive double loop, for verification at small moduli
inline std::vector<std::pair<std::int64_t, std::int64_t>> exhaustive_solutions(
    const DehomogenizedForm& q, const PrimePowerModulus& m,
    std::int64_t budget = 10000000) {
  if (m.q() > budget / m.q())
    throw budget_error("exhaustive_solutions: q^2 exceeds the term budget");
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (std::int64_t x = 0; x < m.q(); ++x)
    for (std::int64_t y = 0; y < m.q(); ++y)
      if (q.eval_mod(x, y, m) == 0) out.emplace_back(x, y);
  return out;
}

}  // namespace tqc

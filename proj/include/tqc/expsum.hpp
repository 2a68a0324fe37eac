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

// Complete exponential sums to prime-power moduli.
//
// s_alpha_direct / cochrane_eval evaluate S_alpha(f; p^n), the sum of
// e_{p^n}(f(t)) over t ≡ alpha mod p, literally and by the stationary-phase
// closed form (zero off the critical classes; a single-term evaluation at a
// Hensel-lifted critical point on them).
//
// error_sum_direct / error_sum_formula evaluate
//   E(k1,k2,z; p^n) = sum over conic solutions (x,y) mod p^n of
//                     e_{p^n}(z(k1 x + k2 y)),
// literally over the enumerated solution set and by closed forms built on the
// invariants D, J, sqrt(D) and the Gauss-sum factor.  Strata whose amplitude
// falls outside the closed form's validity window (a geometrically small
// tail) are summed exactly, so the two evaluators agree to rounding error.

#include <cassert>
#include <complex>
#include <cstdint>
#include <optional>

#include "tqc/charsum.hpp"
#include "tqc/conic.hpp"
#include "tqc/modarith.hpp"
#include "tqc/polyrat.hpp"

namespace tqc {

// ---------------------------------------------------------------------------
// S_alpha(f; p^n)
// ---------------------------------------------------------------------------

// the literal p^{n-1}-term sum over the class t ≡ alpha mod p
inline ComplexValue s_alpha_direct(const RationalAmplitude& f,
                                   std::int64_t alpha,
                                   const PrimePowerModulus& m) {
  PrimePowerModulus mp(m.p(), 1);
  if (poly_eval_mod(f.denominator, mp.reduce(alpha), mp).value == 0)
    throw pole_error("s_alpha_direct: denominator vanishes on the class");
  std::int64_t t = mp.reduce(alpha).value;
  std::int64_t steps = m.q() / m.p();
  KahanComplexSum acc;
  for (std::int64_t j = 0; j < steps; ++j) {
    std::int64_t phase = rat_eval_mod(f, Residue{t + j * m.p()}, m).value;
    acc.add(e_q(phase, m.q()));
  }
  return acc.value();
}

struct CochraneInput {
  RationalAmplitude f;
  PrimePowerModulus m;
  std::int64_t alpha;         // residue class mod p
  RationalAmplitude f_prime;  // quotient-rule representation, no cancellation
  int r;                      // ord_p(f'), exponent convention
};

inline CochraneInput make_cochrane_input(const RationalAmplitude& f,
                                         std::int64_t alpha,
                                         const PrimePowerModulus& m) {
  PrimePowerModulus mp(m.p(), 1);
  if (poly_eval_mod(f.denominator, mp.reduce(alpha), mp).value == 0)
    throw pole_error("cochrane: denominator vanishes on the class");
  RationalAmplitude fp = rat_derivative(f);
  int r = ord_p_rat(fp, m.p());
  return CochraneInput{f, m, mp.reduce(alpha).value, std::move(fp), r};
}

namespace detail {

// Hensel-lift a simple root (mod p) of the integer polynomial P to a root
// mod p^levels; returns the canonical representative in [0, p^levels).
inline std::int64_t lift_simple_root(const IntPolynomial& P, std::int64_t root,
                                     std::int64_t p, int levels) {
  IntPolynomial Pd = P.derivative();
  PrimePowerModulus mp(p, 1);
  if (poly_eval_mod(P, mp.reduce(root), mp).value != 0 ||
      poly_eval_mod(Pd, mp.reduce(root), mp).value == 0)
    throw consistency_error("lift_simple_root: not a simple root mod p");
  std::int64_t x = mp.reduce(root).value;
  for (int k = 2; k <= levels; ++k) {
    PrimePowerModulus mk(p, k);
    std::int64_t val = poly_eval_mod(P, Residue{x}, mk).value;
    std::int64_t slope = poly_eval_mod(Pd, Residue{x}, mk).value;
    x = mk.sub(x, mk.mul(val, inv_mod(slope, mk).value));
  }
  return x;
}

}  // namespace detail

// Closed-form S_alpha(f; p^n) for r = ord_p(f') <= n-2: zero when the
// normalized derivative does not vanish at alpha mod p; otherwise the
// single-term stationary value at the lifted critical point.  Returns
// nullopt (unsupported) when r > n-2 or the critical point is degenerate;
// callers fall back to s_alpha_direct.
inline std::optional<ComplexValue> cochrane_eval(const CochraneInput& in) {
  const PrimePowerModulus& m = in.m;
  std::int64_t p = m.p();
  int n = m.n();
  if (in.r == val_infinity || in.r > n - 2) return std::nullopt;

  // normalized derivative p^{-r} f' = Ntil / den with Ntil p-cleared
  IntPolynomial ntil = detail::clear_p_content(in.f_prime.numerator, p);
  const IntPolynomial& den = in.f_prime.denominator;
  PrimePowerModulus mp(p, 1);
  Residue a{in.alpha};
  std::int64_t den_at = poly_eval_mod(den, a, mp).value;
  if (den_at == 0)
    throw pole_error("cochrane_eval: derivative denominator vanishes");
  std::int64_t gval = mp.mul(poly_eval_mod(ntil, a, mp).value,
                             inv_mod(den_at, mp).value);
  if (gval != 0) return ComplexValue{0.0, 0.0};

  int mult = normalized_root_multiplicity(RationalAmplitude(ntil, den),
                                          in.alpha, p);
  if (mult != 1) return std::nullopt;

  int lift_levels = (n - in.r + 1) / 2;
  std::int64_t astar = detail::lift_simple_root(ntil, in.alpha, p, lift_levels);
  std::int64_t phase = rat_eval_mod(in.f, Residue{astar}, m).value;
  ComplexValue value =
      e_q(phase, m.q()) * std::pow(static_cast<double>(p), (n + in.r) / 2.0);
  if ((n - in.r) % 2 == 1) {
    // A(alpha) = 2 (p^{-r} f')'(alpha*) mod p, via the quotient rule
    Residue as = mp.reduce(astar);
    std::int64_t nv = poly_eval_mod(ntil, as, mp).value;
    std::int64_t dv = poly_eval_mod(den, as, mp).value;
    std::int64_t ndv = poly_eval_mod(ntil.derivative(), as, mp).value;
    std::int64_t ddv = poly_eval_mod(den.derivative(), as, mp).value;
    std::int64_t num = mp.sub(mp.mul(ndv, dv), mp.mul(nv, ddv));
    std::int64_t A = mp.mul(mp.mul(2 % p, num),
                            inv_mod(mp.mul(dv, dv), mp).value);
    value *= static_cast<double>(jacobi(A, p));
    value *= gauss_g_p(p) / std::sqrt(static_cast<double>(p));
  }
  return value;
}

inline std::optional<ComplexValue> cochrane_eval(const RationalAmplitude& f,
                                                 std::int64_t alpha,
                                                 const PrimePowerModulus& m) {
  return cochrane_eval(make_cochrane_input(f, alpha, m));
}

// ---------------------------------------------------------------------------
// E(k1, k2, z; p^n)
// ---------------------------------------------------------------------------

struct ErrorSumContext {
  TernaryForm Q;
  DehomogenizedForm deh;
  BasePoint base;
  PrimePowerModulus m;
  std::int64_t k1, k2;
  std::int64_t z;        // unit mod p
  int r;                 // val_p(gcd(k1, k2, p^n))
  std::int64_t l1, l2;   // k_i / p^r
  __int128 lambda;       // (aB - bA) l1 + aA l2, exact
  int rprime;            // val_p(lambda); val_infinity when lambda = 0
  std::int64_t u;        // (aB l2 - cA l1) mod p^n
  std::int64_t v3;       // ((bB - cA) l2 - cB l1) mod p^n
  std::int64_t D;        // (a l2^2 - b l1 l2 + c l1^2)(aB^2 - bAB + cA^2) mod p^n
  std::int64_t J;        // (l1(be - 2cd) + l2(bd - 2ae)) mod p^n
};

inline ErrorSumContext make_error_sum_context(const TernaryForm& Q,
                                              const BasePoint& base,
                                              std::int64_t k1, std::int64_t k2,
                                              std::int64_t z,
                                              const PrimePowerModulus& m) {
  require_admissible(Q, m.p());
  if (m.reduce(z).value % m.p() == 0)
    throw non_unit_error("error sum: z must be a unit mod p");

  int n = m.n();
  int r = std::min({val_p(k1, m.p()), val_p(k2, m.p()), n});
  std::int64_t pr = 1;
  for (int i = 0; i < r; ++i) pr *= m.p();
  std::int64_t l1 = k1 / pr, l2 = k2 / pr;

  std::int64_t A = base.A.value, B = base.B.value;
  __int128 lambda = static_cast<__int128>(Q.a) * B * l1 -
                    static_cast<__int128>(Q.b) * A * l1 +
                    static_cast<__int128>(Q.a) * A * l2;
  int rprime = lambda == 0 ? val_infinity : val_p_i128(lambda, m.p());

  std::int64_t u = m.reduce_wide(static_cast<__int128>(Q.a) * B * l2 -
                                 static_cast<__int128>(Q.c) * A * l1).value;
  std::int64_t v3 = m.reduce_wide(static_cast<__int128>(Q.b) * B * l2 -
                                  static_cast<__int128>(Q.c) * A * l2 -
                                  static_cast<__int128>(Q.c) * B * l1).value;

  // aB^2 - bAB + cA^2 ≡ -4·Delta, asserted
  std::int64_t quad_ab = m.reduce_wide(static_cast<__int128>(Q.a) * B * B -
                                       static_cast<__int128>(Q.b) * A * B +
                                       static_cast<__int128>(Q.c) * A * A).value;
  if (quad_ab != m.reduce(-Q.four_delta).value)
    throw consistency_error("error sum: aB^2 - bAB + cA^2 != -4 Delta mod p^n");

  std::int64_t quad_l = m.reduce_wide(static_cast<__int128>(Q.a) * l2 * l2 -
                                      static_cast<__int128>(Q.b) * l1 * l2 +
                                      static_cast<__int128>(Q.c) * l1 * l1).value;
  std::int64_t D = m.mul(quad_l, quad_ab);

  // discriminant identity: D ≡ u^2 - lambda·v3
  std::int64_t lam_mod = m.reduce_wide(lambda % m.q()).value;
  std::int64_t dcheck = m.sub(m.mul(u, u), m.mul(lam_mod, v3));
  if (dcheck != D)
    throw consistency_error("error sum: discriminant identity failed");

  std::int64_t J = m.reduce_wide(
      static_cast<__int128>(l1) * (static_cast<__int128>(Q.b) * Q.e - 2 * static_cast<__int128>(Q.c) * Q.d) +
      static_cast<__int128>(l2) * (static_cast<__int128>(Q.b) * Q.d - 2 * static_cast<__int128>(Q.a) * Q.e)).value;

  return ErrorSumContext{Q,  Q.dehomogenize(), base, m, k1, k2,
                         m.reduce(z).value, r, l1, l2, lambda, rprime,
                         u, v3, D, J};
}

// the literal sum over every enumerated solution
inline ComplexValue error_sum_direct(const ErrorSumContext& ctx,
                                     const ConicSolutionSet& solutions) {
  if (!(solutions.modulus() == ctx.m))
    throw std::domain_error("error_sum_direct: modulus mismatch");
  const PrimePowerModulus& m = ctx.m;
  std::int64_t k1 = m.reduce(ctx.k1).value, k2 = m.reduce(ctx.k2).value;
  KahanComplexSum acc;
  for (const auto& s : solutions.entries()) {
    std::int64_t phase =
        m.mul(ctx.z, m.add(m.mul(k1, s.x), m.mul(k2, s.y)));
    acc.add(e_q(phase, m.q()));
  }
  return acc.value();
}

namespace detail {

// stratum admission at s = 0: a t^2 + b t + c must be a unit mod p
inline bool stratum0_admits(const DehomogenizedForm& q, std::int64_t t,
                            const PrimePowerModulus& mp) {
  std::int64_t tv = mp.reduce(t).value;
  std::int64_t w = mp.add(
      mp.add(mp.mul(mp.reduce(q.a).value, mp.mul(tv, tv)),
             mp.mul(mp.reduce(q.b).value, tv)),
      mp.reduce(q.c).value);
  return w != 0;
}

}  // namespace detail

// Closed-form E(k1,k2,z;p^n).  Returns nullopt when r > n-2 or the frequency
// direction is degenerate (lambda = 0); callers fall back to
// error_sum_direct.  Strata outside the stationary-phase window are summed
// exactly, so the result matches the direct evaluation to rounding error.
inline std::optional<ComplexValue> error_sum_formula(const ErrorSumContext& ctx) {
  const PrimePowerModulus& m = ctx.m;
  std::int64_t p = m.p();
  int n = m.n();
  int r = ctx.r;
  if (r > n - 2) return std::nullopt;
  if (ctx.lambda == 0) return std::nullopt;  // degenerate direction

  int mprime = n - r;
  PrimePowerModulus mod_ph(p, mprime);  // phases live mod p^{n-r}
  PrimePowerModulus mp(p, 1);

  std::int64_t u_ph = mod_ph.reduce(ctx.u).value;
  std::int64_t J_ph = mod_ph.reduce(ctx.J).value;
  std::int64_t D_ph = mod_ph.reduce(ctx.D).value;
  std::int64_t z_ph = mod_ph.reduce(ctx.z).value;
  std::int64_t inv_g4 = inv_mod(mod_ph.reduce(4 * ctx.Q.a * ctx.Q.c -
                                              ctx.Q.b * ctx.Q.b).value,
                                mod_ph).value;
  double magnitude = std::pow(static_cast<double>(p), (n + r) / 2.0);
  ComplexValue gp_over_sqrtp =
      gauss_g_p(p) / std::sqrt(static_cast<double>(p));

  // the root with Lambda·alpha + u = sigma·sqrt(D) contributes
  //   e_{p^{n-r}}( z (4ac-b^2)^{-1} (J - 2 sigma sqrt(D)) ) · p^{(n+r)/2}
  // times (sigma z sqrt(D) / p) · G_p / sqrt(p) when n-r is odd
  auto contribution = [&](int sigma, std::int64_t wstar) -> ComplexValue {
    std::int64_t two_w = mod_ph.mul(2 % mod_ph.q(), wstar);
    std::int64_t inner = sigma > 0 ? mod_ph.sub(J_ph, two_w)
                                   : mod_ph.add(J_ph, two_w);
    std::int64_t phase = mod_ph.mul(z_ph, mod_ph.mul(inv_g4, inner));
    ComplexValue c = e_q(phase, mod_ph.q()) * magnitude;
    if (mprime % 2 == 1) {
      std::int64_t sym = mp.mul(mp.reduce(sigma).value,
                                mp.mul(mp.reduce(ctx.z).value,
                                       mp.reduce(wstar).value));
      c *= static_cast<double>(jacobi(sym, p));
      c *= gp_over_sqrtp;
    }
    return c;
  };

  ComplexValue closed{0.0, 0.0};

  if (ctx.rprime == 0) {
    std::int64_t D_p = ctx.D % p;
    int chi = jacobi(D_p, p);
    if (D_p == 0) {
      // double critical class; it must sit on a pole of the parametrization
      // (a·Lambda^2·w(-u/Lambda) = a^2·D), hence is excluded from the sum
      std::int64_t lam_p = mp.reduce_wide(ctx.lambda % p).value;
      std::int64_t alpha0 = mp.mul(mp.sub(0, mp.reduce(ctx.u).value),
                                   inv_mod(lam_p, mp).value);
      if (detail::stratum0_admits(ctx.deh, alpha0, mp))
        return std::nullopt;  // bug trap; see discriminant identity
    } else if (chi == 1) {
      auto roots = sqrt_mod(D_ph, mod_ph);
      if (!roots) throw consistency_error("error sum: residue lost its square root");
      std::int64_t wstar = roots->first.value;
      std::int64_t lam_inv = inv_mod(mp.reduce_wide(ctx.lambda % p).value, mp).value;
      for (int sigma : {+1, -1}) {
        std::int64_t num = mp.reduce(sigma > 0 ? wstar - ctx.u : -wstar - ctx.u).value;
        std::int64_t alpha = mp.mul(num, lam_inv);
        if (!detail::stratum0_admits(ctx.deh, alpha, mp)) continue;
        closed += contribution(sigma, wstar);
      }
    }
    // chi == -1: no critical class, the stationary strata vanish
  } else {
    // p | lambda: u is a unit, D ≡ u^2 mod p^{min(rprime, n-r)+...}, and the
    // square root is pinned by sqrt(D) ≡ u on that window
    int pin = std::min<std::int64_t>(ctx.rprime, mprime);
    std::int64_t wstar;
    if (pin >= mprime) {
      wstar = u_ph;
    } else {
      auto roots = sqrt_mod(D_ph, mod_ph);
      if (!roots) throw consistency_error("error sum: pinned square root missing");
      std::int64_t ppin = 1;
      for (int i = 0; i < pin; ++i) ppin *= p;
      std::int64_t target = ((ctx.u % ppin) + ppin) % ppin;
      wstar = roots->first.value % ppin == target ? roots->first.value
                                                  : roots->second.value;
      if (wstar % ppin != target)
        throw consistency_error("error sum: neither root satisfies the pinning");
    }

    // stratum-0 critical class (the quadratic degenerates to a line mod p)
    std::int64_t two_u = mp.mul(2 % p, mp.reduce(ctx.u).value);
    std::int64_t alpha1 = mp.mul(mp.sub(0, mp.reduce(ctx.v3).value),
                                 inv_mod(two_u, mp).value);
    if (detail::stratum0_admits(ctx.deh, alpha1, mp))
      closed += contribution(+1, wstar);

    // stratum rprime's critical class, when inside the validity window
    if (ctx.rprime <= n && r + 2 * ctx.rprime <= n - 2)
      closed += contribution(-1, wstar);
  }

  // exact tail: strata whose amplitude has derivative order beyond n-2
  KahanComplexSum tail;
  std::int64_t k1m = m.reduce(ctx.k1).value, k2m = m.reduce(ctx.k2).value;
  for (int s = 1; s <= n; ++s) {
    std::int64_t shift = std::min<std::int64_t>(
        s, ctx.rprime == val_infinity ? s : ctx.rprime);
    if (r + s + shift <= n - 2) continue;
    auto stratum = enumerate_stratum(ctx.deh, ctx.base, s, m);
    for (const auto& e : stratum) {
      std::int64_t phase =
          m.mul(ctx.z, m.add(m.mul(k1m, e.x), m.mul(k2m, e.y)));
      tail.add(e_q(phase, m.q()));
    }
  }

  return closed + tail.value();
}

}  // namespace tqc

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

// The dual ternary quadratic form in frequency variables, its determinant
// and minor-gcd invariants, the divisor function, and brute-force counting
// of primitive integer zeros in a max-norm box.

#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

#include "tqc/conic.hpp"
#include "tqc/modarith.hpp"

namespace tqc {

namespace detail {

inline __int128 abs128(__int128 v) { return v < 0 ? -v : v; }

inline __int128 gcd128(__int128 a, __int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::string to_string128(__int128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  __int128 x = abs128(v);
  std::string out;
  while (x > 0) {
    out.insert(out.begin(), static_cast<char>('0' + static_cast<int>(x % 10)));
    x /= 10;
  }
  return neg ? "-" + out : out;
}

// floor square root of a nonnegative __int128, exact
inline __int128 isqrt128(__int128 v) {
  if (v < 0) throw std::domain_error("isqrt128: negative argument");
  if (v == 0) return 0;
  auto guess = static_cast<__int128>(
      std::sqrt(static_cast<double>(static_cast<long double>(v))));
  while (guess > 0 && guess * guess > v) --guess;
  while ((guess + 1) * (guess + 1) <= v) ++guess;
  return guess;
}

}  // namespace detail

// An integral-matrix ternary quadratic form
//   M l1^2 + N l1 l2 + O l2^2 + P l1 l3 + Qc l2 l3 + R l3^2
// with N, P, Qc even, so the associated matrix
//   [M N/2 P/2; N/2 O Qc/2; P/2 Qc/2 R]
// has integer entries.
class DualForm {
 public:
  static DualForm from_coefficients(std::int64_t M, std::int64_t N,
                                    std::int64_t O, std::int64_t P,
                                    std::int64_t Qc, std::int64_t R) {
    if (N % 2 != 0 || P % 2 != 0 || Qc % 2 != 0)
      throw std::domain_error("DualForm: cross coefficients must be even");
    DualForm F;
    F.coeffs_ = {M, N, O, P, Qc, R};
    F.mat_ = {{{M, N / 2, P / 2}, {N / 2, O, Qc / 2}, {P / 2, Qc / 2, R}}};
    F.det_ = det3(F.mat_);
    if (F.det_ == 0)
      throw std::domain_error("DualForm: form is singular");
    F.minor_gcd_ = compute_minor_gcd(F.mat_);
    return F;
  }

  const std::array<std::int64_t, 6>& coefficients() const { return coeffs_; }
  const std::array<std::array<std::int64_t, 3>, 3>& matrix() const { return mat_; }
  __int128 det_assoc() const { return det_; }
  __int128 minor_gcd_value() const { return minor_gcd_; }

  __int128 eval(std::int64_t l1, std::int64_t l2, std::int64_t l3) const {
    return static_cast<__int128>(coeffs_[0]) * l1 * l1 +
           static_cast<__int128>(coeffs_[1]) * l1 * l2 +
           static_cast<__int128>(coeffs_[2]) * l2 * l2 +
           static_cast<__int128>(coeffs_[3]) * l1 * l3 +
           static_cast<__int128>(coeffs_[4]) * l2 * l3 +
           static_cast<__int128>(coeffs_[5]) * l3 * l3;
  }

 private:
  static __int128 det3(const std::array<std::array<std::int64_t, 3>, 3>& a) {
    return static_cast<__int128>(a[0][0]) *
               (static_cast<__int128>(a[1][1]) * a[2][2] -
                static_cast<__int128>(a[1][2]) * a[2][1]) -
           static_cast<__int128>(a[0][1]) *
               (static_cast<__int128>(a[1][0]) * a[2][2] -
                static_cast<__int128>(a[1][2]) * a[2][0]) +
           static_cast<__int128>(a[0][2]) *
               (static_cast<__int128>(a[1][0]) * a[2][1] -
                static_cast<__int128>(a[1][1]) * a[2][0]);
  }

  static __int128 compute_minor_gcd(
      const std::array<std::array<std::int64_t, 3>, 3>& a) {
    __int128 g = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        int r0 = (i + 1) % 3, r1 = (i + 2) % 3;
        int c0 = (j + 1) % 3, c1 = (j + 2) % 3;
        if (r0 > r1) std::swap(r0, r1);
        if (c0 > c1) std::swap(c0, c1);
        __int128 minor = static_cast<__int128>(a[r0][c0]) * a[r1][c1] -
                         static_cast<__int128>(a[r0][c1]) * a[r1][c0];
        g = detail::gcd128(g, minor);
      }
    return g;
  }

  std::array<std::int64_t, 6> coeffs_{};
  std::array<std::array<std::int64_t, 3>, 3> mat_{};
  __int128 det_ = 0;
  __int128 minor_gcd_ = 0;
};

// The dual of an admissible ternary form.  Coefficients per the frequency
// substitution:
//   M = 16aΔ + (be-2cd)^2            N = -16bΔ + 2(be-2cd)(bd-2ae)
//   O = 16cΔ + (bd-2ae)^2            P = 2(4ac-b^2)(2cd-be)
//   Qc = 2(4ac-b^2)(2ae-bd)          R = (4ac-b^2)^2
// (16Δ = 4·fourDelta keeps everything integral.)  The determinant identity
// det = 64 Δ^2 (4ac-b^2)^3 = 4·(4Δ)^2 (4ac-b^2)^3 is asserted.
inline DualForm dual_form(const TernaryForm& Q) {
  if (Q.four_delta == 0 || Q.disc2 == 0)
    throw not_admissible_error("dual_form: degenerate input form");
  auto fit = [](__int128 v) {
    if (v > std::numeric_limits<std::int64_t>::max() ||
        v < std::numeric_limits<std::int64_t>::min())
      throw std::overflow_error("dual_form: coefficient overflow");
    return static_cast<std::int64_t>(v);
  };
  __int128 sixteen_delta = static_cast<__int128>(4) * Q.four_delta;
  __int128 be_2cd = static_cast<__int128>(Q.b) * Q.e - 2 * static_cast<__int128>(Q.c) * Q.d;
  __int128 bd_2ae = static_cast<__int128>(Q.b) * Q.d - 2 * static_cast<__int128>(Q.a) * Q.e;
  __int128 g4 = -static_cast<__int128>(Q.disc2);  // 4ac - b^2

  std::int64_t M = fit(sixteen_delta * Q.a + be_2cd * be_2cd);
  std::int64_t N = fit(-sixteen_delta * Q.b + 2 * be_2cd * bd_2ae);
  std::int64_t O = fit(sixteen_delta * Q.c + bd_2ae * bd_2ae);
  std::int64_t P = fit(2 * g4 * (-be_2cd));
  std::int64_t Qc = fit(2 * g4 * (-bd_2ae));
  std::int64_t R = fit(g4 * g4);

  DualForm F = DualForm::from_coefficients(M, N, O, P, Qc, R);
  __int128 expected = 4 * static_cast<__int128>(Q.four_delta) * Q.four_delta *
                      g4 * g4 * g4;
  if (F.det_assoc() != expected)
    throw consistency_error("dual_form: determinant identity failed");
  return F;
}

// gcd of the nine 2x2 minors of the integral associated matrix
inline __int128 minor_gcd(const DualForm& F) { return F.minor_gcd_value(); }

// number of positive divisors, by trial division
inline std::int64_t tau(std::int64_t n) {
  if (n < 1) throw std::domain_error("tau: argument must be positive");
  std::int64_t count = 1;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    count *= e + 1;
  }
  if (n > 1) count *= 2;
  return count;
}

// Exhaustive count of primitive integer zeros of the six-coefficient form in
// the max-norm box of radius B.  Triple loop for small B; otherwise a scan
// over (l1, l2) solving the quadratic in l3 exactly.
inline std::int64_t count_primitive_zeros(const std::array<std::int64_t, 6>& F,
                                          std::int64_t B,
                                          double budget = 1e9) {
  if (B < 1) throw std::domain_error("count_primitive_zeros: B must be >= 1");
  auto [M, N, O, P, Qc, R] = F;
  auto eval = [&](std::int64_t l1, std::int64_t l2, std::int64_t l3) {
    return static_cast<__int128>(M) * l1 * l1 + static_cast<__int128>(N) * l1 * l2 +
           static_cast<__int128>(O) * l2 * l2 + static_cast<__int128>(P) * l1 * l3 +
           static_cast<__int128>(Qc) * l2 * l3 + static_cast<__int128>(R) * l3 * l3;
  };
  auto is_primitive_hit = [&](std::int64_t l1, std::int64_t l2, std::int64_t l3) {
    if (l1 == 0 && l2 == 0 && l3 == 0) return false;
    if (std::gcd(std::gcd(std::llabs(l1), std::llabs(l2)), std::llabs(l3)) != 1)
      return false;
    if (eval(l1, l2, l3) != 0)
      throw consistency_error("count_primitive_zeros: recheck failed");
    return true;
  };

  double side = static_cast<double>(2 * B + 1);
  std::int64_t count = 0;
  if (B <= 200) {
    if (side * side * side > budget)
      throw budget_error("count_primitive_zeros: box exceeds the budget");
    for (std::int64_t l1 = -B; l1 <= B; ++l1)
      for (std::int64_t l2 = -B; l2 <= B; ++l2)
        for (std::int64_t l3 = -B; l3 <= B; ++l3)
          if (eval(l1, l2, l3) == 0 && is_primitive_hit(l1, l2, l3)) ++count;
    return count;
  }

  if (side * side > budget)
    throw budget_error("count_primitive_zeros: plane scan exceeds the budget");
  for (std::int64_t l1 = -B; l1 <= B; ++l1)
    for (std::int64_t l2 = -B; l2 <= B; ++l2) {
      __int128 c2 = R;
      __int128 c1 = static_cast<__int128>(P) * l1 + static_cast<__int128>(Qc) * l2;
      __int128 c0 = static_cast<__int128>(M) * l1 * l1 +
                    static_cast<__int128>(N) * l1 * l2 +
                    static_cast<__int128>(O) * l2 * l2;
      if (c2 == 0) {
        if (c1 == 0) {
          if (c0 == 0)  // whole line of zeros
            for (std::int64_t l3 = -B; l3 <= B; ++l3)
              if (is_primitive_hit(l1, l2, l3)) ++count;
          continue;
        }
        if (c0 % c1 != 0) continue;
        __int128 l3 = -c0 / c1;
        if (l3 >= -B && l3 <= B &&
            is_primitive_hit(l1, l2, static_cast<std::int64_t>(l3)))
          ++count;
        continue;
      }
      __int128 disc = c1 * c1 - 4 * c2 * c0;
      if (disc < 0) continue;
      __int128 s = detail::isqrt128(disc);
      if (s * s != disc) continue;
      for (int sign : {+1, -1}) {
        __int128 num = -c1 + sign * s;
        if (num % (2 * c2) != 0) continue;
        __int128 l3 = num / (2 * c2);
        if (l3 < -B || l3 > B) continue;
        if (is_primitive_hit(l1, l2, static_cast<std::int64_t>(l3))) ++count;
        if (s == 0) break;  // double root, count once
      }
    }
  return count;
}

inline std::int64_t count_primitive_zeros(const DualForm& F, std::int64_t B,
                                          double budget = 1e9) {
  return count_primitive_zeros(F.coefficients(), B, budget);
}

// count divided by tau(|det|)·(1 + B·sqrt(delta)/|det|^{1/3}); a monitored
// diagnostic, not an inequality with a pinned constant
inline double bound_ratio(const DualForm& F, std::int64_t B,
                          double budget = 1e9) {
  __int128 det = detail::abs128(F.det_assoc());
  if (det > static_cast<__int128>(1) << 62)
    throw budget_error("bound_ratio: determinant too large to factor");
  std::int64_t t = tau(static_cast<std::int64_t>(det));
  double delta = static_cast<double>(F.minor_gcd_value());
  double dd = static_cast<double>(det);
  double bound = static_cast<double>(t) *
                 (1.0 + static_cast<double>(B) * std::sqrt(delta) /
                            std::cbrt(dd));
  return static_cast<double>(count_primitive_zeros(F, B, budget)) / bound;
}

}  // namespace tqc

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

// Additive characters e_q(.) and quadratic Gauss sums, with both direct
// summation and the prime-power closed form.  All direct sums accumulate in
// ascending index order with compensated summation so results are
// reproducible run to run.

#include <cmath>
#include <complex>
#include <cstdint>

#include "tqc/modarith.hpp"

namespace tqc {

using ComplexValue = std::complex<double>;

// Neumaier-compensated accumulator
class KahanSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class KahanComplexSum {
 public:
  void add(const ComplexValue& v) {
    re_.add(v.real());
    im_.add(v.imag());
  }
  ComplexValue value() const { return {re_.value(), im_.value()}; }

 private:
  KahanSum re_, im_;
};

// exp(2·pi·i·z/q), with the index reduced mod q before the division
inline ComplexValue e_q(std::int64_t z, std::int64_t q) {
  if (q < 1) throw std::domain_error("e_q: q must be positive");
  std::int64_t r = z % q;
  if (r < 0) r += q;
  constexpr double two_pi = 6.283185307179586476925286766559;
  double angle = two_pi * (static_cast<double>(r) / static_cast<double>(q));
  return {std::cos(angle), std::sin(angle)};
}

// G_q = sum_{x=1}^{q} e_q(x^2), summed literally
inline ComplexValue gauss_direct(std::int64_t q) {
  if (q < 1) throw std::domain_error("gauss_direct: q must be positive");
  KahanComplexSum acc;
  for (std::int64_t x = 1; x <= q; ++x)
    acc.add(e_q(detail::mul_mod(x % q, x % q, q), q));
  return acc.value();
}

// The classical evaluation of G_p for odd prime p: sqrt(p) when p ≡ 1 mod 4,
// i·sqrt(p) when p ≡ 3 mod 4.
inline ComplexValue gauss_g_p(std::int64_t p) {
  double root = std::sqrt(static_cast<double>(p));
  return p % 4 == 1 ? ComplexValue{root, 0.0} : ComplexValue{0.0, root};
}

namespace detail {

// guards the hard-coded G_p sign convention against the literal sum
inline void check_g_p_convention() {
  static const bool checked = [] {
    for (std::int64_t p : {3, 5, 7, 13}) {
      if (std::abs(gauss_direct(p) - gauss_g_p(p)) > 1e-9 * std::sqrt(double(p)))
        throw consistency_error("gauss_closed: G_p sign convention self-check failed");
    }
    return true;
  }();
  (void)checked;
}

}  // namespace detail

// closed form for G_{p^k}: p^{k/2} for even k, p^{(k-1)/2}·G_p for odd k
inline ComplexValue gauss_closed(const PrimePowerModulus& m) {
  detail::check_g_p_convention();
  int k = m.n();
  double p = static_cast<double>(m.p());
  if (k % 2 == 0) return {std::pow(p, k / 2), 0.0};
  return std::pow(p, (k - 1) / 2) * gauss_g_p(m.p());
}

}  // namespace tqc

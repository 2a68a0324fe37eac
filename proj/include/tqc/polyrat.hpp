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

// Integer polynomials in one variable and rational functions F1/F2:
// evaluation mod p^n, formal derivatives, p-adic order and normalized
// root multiplicities.

#include <cstdint>
#include <vector>

#include "tqc/modarith.hpp"

namespace tqc {

class IntPolynomial {
 public:
  // guards accidental blowup; the amplitudes of interest have degree <= 2
  static constexpr int max_degree = 64;

  IntPolynomial() = default;  // the zero polynomial

  explicit IntPolynomial(std::vector<std::int64_t> coeffs)
      : coeffs_(std::move(coeffs)) {
    trim();
    if (degree() > max_degree)
      throw std::domain_error("IntPolynomial: degree cap of 64 exceeded");
  }

  static IntPolynomial constant(std::int64_t c) {
    return IntPolynomial(std::vector<std::int64_t>{c});
  }

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::int64_t coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(coeffs_.size())) ? coeffs_[k] : 0;
  }
  const std::vector<std::int64_t>& coefficients() const { return coeffs_; }

  IntPolynomial derivative() const {
    if (coeffs_.size() <= 1) return IntPolynomial();
    std::vector<std::int64_t> out(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
      out[k - 1] = checked(static_cast<__int128>(coeffs_[k]) * static_cast<std::int64_t>(k));
    return IntPolynomial(std::move(out));
  }

  friend IntPolynomial operator+(const IntPolynomial& lhs, const IntPolynomial& rhs) {
    std::vector<std::int64_t> out(std::max(lhs.coeffs_.size(), rhs.coeffs_.size()), 0);
    for (std::size_t k = 0; k < out.size(); ++k)
      out[k] = checked(static_cast<__int128>(lhs.coeff(static_cast<int>(k))) +
                       rhs.coeff(static_cast<int>(k)));
    return IntPolynomial(std::move(out));
  }

  friend IntPolynomial operator-(const IntPolynomial& lhs, const IntPolynomial& rhs) {
    std::vector<std::int64_t> out(std::max(lhs.coeffs_.size(), rhs.coeffs_.size()), 0);
    for (std::size_t k = 0; k < out.size(); ++k)
      out[k] = checked(static_cast<__int128>(lhs.coeff(static_cast<int>(k))) -
                       rhs.coeff(static_cast<int>(k)));
    return IntPolynomial(std::move(out));
  }

  friend IntPolynomial operator*(const IntPolynomial& lhs, const IntPolynomial& rhs) {
    if (lhs.is_zero() || rhs.is_zero()) return IntPolynomial();
    std::vector<__int128> acc(lhs.coeffs_.size() + rhs.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j)
        acc[i + j] += static_cast<__int128>(lhs.coeffs_[i]) * rhs.coeffs_[j];
    std::vector<std::int64_t> out(acc.size());
    for (std::size_t k = 0; k < acc.size(); ++k) out[k] = checked(acc[k]);
    return IntPolynomial(std::move(out));
  }

  friend bool operator==(const IntPolynomial& lhs, const IntPolynomial& rhs) {
    return lhs.coeffs_ == rhs.coeffs_;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  static std::int64_t checked(__int128 v) {
    if (v > std::numeric_limits<std::int64_t>::max() ||
        v < std::numeric_limits<std::int64_t>::min())
      throw std::overflow_error("IntPolynomial: coefficient overflow");
    return static_cast<std::int64_t>(v);
  }

  std::vector<std::int64_t> coeffs_;  // index = degree, top coefficient nonzero
};

// f = F1/F2 in the chosen representation; ord_p is representation-sensitive,
// so derivatives never cancel common factors
struct RationalAmplitude {
  IntPolynomial numerator;
  IntPolynomial denominator;

  RationalAmplitude(IntPolynomial num, IntPolynomial den)
      : numerator(std::move(num)), denominator(std::move(den)) {
    if (denominator.is_zero())
      throw std::domain_error("RationalAmplitude: zero denominator");
  }

  static RationalAmplitude poly(IntPolynomial num) {
    return RationalAmplitude(std::move(num), IntPolynomial::constant(1));
  }
};

// Horner evaluation of P at x, reduced mod q
inline Residue poly_eval_mod(const IntPolynomial& P, Residue x,
                             const PrimePowerModulus& m) {
  std::int64_t acc = 0;
  std::int64_t xv = m.reduce(x.value).value;
  for (int k = P.degree(); k >= 0; --k) {
    acc = m.mul(acc, xv);
    acc = m.add(acc, m.reduce(P.coeff(k)).value);
  }
  return Residue{acc};
}

// F1(x) * inverse(F2(x)) mod q; requires F2(x) to be a unit mod p
inline Residue rat_eval_mod(const RationalAmplitude& f, Residue x,
                            const PrimePowerModulus& m) {
  Residue den = poly_eval_mod(f.denominator, x, m);
  if (den.value % m.p() == 0)
    throw pole_error("rat_eval_mod: denominator vanishes mod p");
  Residue num = poly_eval_mod(f.numerator, x, m);
  return Residue{m.mul(num.value, inv_mod(den.value, m).value)};
}

// quotient rule, kept in the (F1'F2 - F1F2', F2^2) representation verbatim
inline RationalAmplitude rat_derivative(const RationalAmplitude& f) {
  IntPolynomial num = f.numerator.derivative() * f.denominator -
                      f.numerator * f.denominator.derivative();
  return RationalAmplitude(std::move(num), f.denominator * f.denominator);
}

// min over coefficients of val_p; val_infinity for the zero polynomial
inline int ord_p_poly(const IntPolynomial& P, std::int64_t p) {
  if (P.is_zero()) return val_infinity;
  int best = val_infinity;
  for (std::int64_t c : P.coefficients()) {
    if (c == 0) continue;
    best = std::min(best, val_p(c, p));
    if (best == 0) break;
  }
  return best;
}

// ord_p(F1) - ord_p(F2); may be negative; val_infinity for the zero function
inline int ord_p_rat(const RationalAmplitude& f, std::int64_t p) {
  int num = ord_p_poly(f.numerator, p);
  if (num == val_infinity) return val_infinity;
  return num - ord_p_poly(f.denominator, p);
}

namespace detail {

// P with every coefficient divided by p^{ord_p(P)}; zero stays zero
inline IntPolynomial clear_p_content(const IntPolynomial& P, std::int64_t p) {
  int v = ord_p_poly(P, p);
  if (v == val_infinity || v == 0) return P;
  std::int64_t scale = 1;
  for (int i = 0; i < v; ++i) scale *= p;
  std::vector<std::int64_t> out(P.coefficients());
  for (auto& c : out) c /= scale;
  return IntPolynomial(std::move(out));
}

}  // namespace detail

// Multiplicity of alpha as a root mod p of g's numerator after clearing its
// p-content; 0 when alpha is not a root.  g's denominator must be a unit at
// alpha mod p.
inline int normalized_root_multiplicity(const RationalAmplitude& g,
                                        std::int64_t alpha, std::int64_t p) {
  PrimePowerModulus m(p, 1);
  if (poly_eval_mod(g.denominator, m.reduce(alpha), m).value == 0)
    throw pole_error("normalized_root_multiplicity: denominator vanishes mod p");
  IntPolynomial num = detail::clear_p_content(g.numerator, p);
  if (num.is_zero()) return 0;
  // repeated synthetic division by (x - alpha) over F_p
  std::vector<std::int64_t> coeffs;
  coeffs.reserve(num.coefficients().size());
  for (std::int64_t c : num.coefficients()) coeffs.push_back(m.reduce(c).value);
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  std::int64_t a = m.reduce(alpha).value;
  int mult = 0;
  while (!coeffs.empty()) {
    // divide: coeffs = (x - a) * quot + rem
    std::vector<std::int64_t> quot(coeffs.size() > 1 ? coeffs.size() - 1 : 0);
    std::int64_t carry = 0;
    for (int k = static_cast<int>(coeffs.size()) - 1; k >= 1; --k) {
      carry = m.add(coeffs[k], m.mul(carry, a));
      quot[k - 1] = carry;
    }
    std::int64_t rem = m.add(coeffs[0], m.mul(carry, a));
    if (rem != 0) break;
    ++mult;
    coeffs = std::move(quot);
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  }
  return mult;
}

}  // namespace tqc

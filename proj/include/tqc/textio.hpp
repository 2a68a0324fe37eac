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

// Text input formats:
//   polynomial        "c0 + c1*x + c2*x^2" (terms in any order; x or t)
//   rational function "P" or "P / Q" with P, Q polynomials
//   ternary form      "a b c d e f" (six whitespace-separated integers)
//   center            "x0 y0 z0"

#include <array>
#include <cctype>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tqc/conic.hpp"
#include "tqc/polyrat.hpp"

namespace tqc {

namespace detail {

struct PolyCursor {
  std::string_view text;
  std::size_t pos = 0;

  void skip_space() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }
  bool done() {
    skip_space();
    return pos >= text.size();
  }
  char peek() {
    skip_space();
    return pos < text.size() ? text[pos] : '\0';
  }
  bool accept(char c) {
    skip_space();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  std::int64_t integer() {
    skip_space();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (pos == start) throw parse_error("polynomial: expected an integer");
    return std::stoll(std::string(text.substr(start, pos - start)));
  }
};

}  // namespace detail

// "c0 + c1*x + c2*x^2 + ..." with integer coefficients; '*' optional, terms
// may repeat and appear in any order; the variable letter is x or t
inline IntPolynomial parse_polynomial(std::string_view text) {
  detail::PolyCursor cur{text};
  std::vector<std::int64_t> coeffs;
  auto bump = [&coeffs](int deg, std::int64_t c) {
    if (deg > IntPolynomial::max_degree)
      throw parse_error("polynomial: degree cap of 64 exceeded");
    if (static_cast<int>(coeffs.size()) <= deg) coeffs.resize(deg + 1, 0);
    coeffs[deg] += c;
  };

  bool first = true;
  while (!cur.done()) {
    std::int64_t sign = 1;
    if (cur.accept('+')) {
      // explicit plus
    } else if (cur.accept('-')) {
      sign = -1;
    } else if (!first) {
      throw parse_error("polynomial: expected '+' or '-' between terms");
    }
    while (cur.accept('-')) sign = -sign;
    first = false;

    std::int64_t coef = 1;
    bool have_coef = false;
    char c = cur.peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      coef = cur.integer();
      have_coef = true;
    }
    int deg = 0;
    bool have_var = false;
    if (have_coef) cur.accept('*');
    c = cur.peek();
    if (c == 'x' || c == 't') {
      ++cur.pos;
      have_var = true;
      deg = 1;
      if (cur.accept('^')) deg = static_cast<int>(cur.integer());
    }
    if (!have_coef && !have_var)
      throw parse_error("polynomial: empty term");
    bump(deg, sign * coef);
  }
  if (coeffs.empty()) throw parse_error("polynomial: empty input");
  return IntPolynomial(std::move(coeffs));
}

// "P" or "P / Q"; division binds last, so write numerators fully first
inline RationalAmplitude parse_rational_amplitude(std::string_view text) {
  std::size_t slash = text.find('/');
  if (slash == std::string_view::npos)
    return RationalAmplitude::poly(parse_polynomial(text));
  IntPolynomial num = parse_polynomial(text.substr(0, slash));
  IntPolynomial den = parse_polynomial(text.substr(slash + 1));
  if (den.is_zero()) throw parse_error("rational: zero denominator");
  return RationalAmplitude(std::move(num), std::move(den));
}

namespace detail {

inline std::vector<std::int64_t> parse_integers(std::string_view text,
                                                std::size_t expected,
                                                const char* what) {
  std::istringstream in{std::string(text)};
  std::vector<std::int64_t> out;
  std::int64_t v;
  while (in >> v) out.push_back(v);
  if (!in.eof() || out.size() != expected)
    throw parse_error(std::string(what) + ": expected " +
                      std::to_string(expected) + " integers");
  return out;
}

}  // namespace detail

inline TernaryForm parse_ternary_form(std::string_view text) {
  auto v = detail::parse_integers(text, 6, "form");
  return TernaryForm(v[0], v[1], v[2], v[3], v[4], v[5]);
}

inline std::array<std::int64_t, 3> parse_center(std::string_view text) {
  auto v = detail::parse_integers(text, 3, "center");
  return {v[0], v[1], v[2]};
}

}  // namespace tqc

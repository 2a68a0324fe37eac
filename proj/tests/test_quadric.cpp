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
#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "tqc/quadric.hpp"

using namespace tqc;

TEST_CASE("dual form of the sum of squares") {
  DualForm F = dual_form(TernaryForm(1, 0, 1, 0, 0, 1));
  CHECK(F.coefficients() == std::array<std::int64_t, 6>{16, 0, 16, 0, 0, 16});
  CHECK(F.det_assoc() == 4096);
  CHECK(minor_gcd(F) == 256);
}

TEST_CASE("dual form determinant identity on a mixed form") {
  TernaryForm Q(1, 1, 1, 0, 0, 1);
  CHECK(Q.four_delta == 3);
  DualForm F = dual_form(Q);
  CHECK(F.det_assoc() == 972);  // 4 · (4Δ)^2 · (4ac-b^2)^3 = 4·9·27
}

TEST_CASE("dual form rejects degenerate inputs") {
  CHECK_THROWS_AS(dual_form(TernaryForm(1, 2, 1, 0, 0, 0)), not_admissible_error);
  CHECK_THROWS_AS(dual_form(TernaryForm(1, 2, 1, 1, 1, 1)), not_admissible_error);
}

TEST_CASE("determinant identity and evenness on random admissible forms") {
  std::mt19937_64 rng(20260809);
  std::uniform_int_distribution<std::int64_t> coef(-50, 50);
  int tested = 0;
  while (tested < 220) {
    TernaryForm Q(coef(rng), coef(rng), coef(rng), coef(rng), coef(rng), coef(rng));
    if (Q.four_delta == 0 || Q.disc2 == 0 || Q.a == 0) continue;
    ++tested;
    DualForm F = dual_form(Q);  // construction asserts the identity
    __int128 g4 = -static_cast<__int128>(Q.disc2);
    CHECK(F.det_assoc() == 4 * static_cast<__int128>(Q.four_delta) *
                               Q.four_delta * g4 * g4 * g4);
    const auto& c = F.coefficients();
    CHECK(c[1] % 2 == 0);
    CHECK(c[3] % 2 == 0);
    CHECK(c[4] % 2 == 0);
  }
}

TEST_CASE("minor gcd of plain diagonal matrices") {
  DualForm identity = DualForm::from_coefficients(1, 0, 1, 0, 0, 1);
  CHECK(minor_gcd(identity) == 1);
  DualForm scaled = DualForm::from_coefficients(16, 0, 16, 0, 0, 16);
  CHECK(minor_gcd(scaled) == 256);
  CHECK_THROWS_AS(DualForm::from_coefficients(1, 1, 1, 0, 0, 1),
                  std::domain_error);  // odd cross coefficient
  CHECK_THROWS_AS(DualForm::from_coefficients(1, 2, 1, 0, 0, 0),
                  std::domain_error);  // singular
}

TEST_CASE("tau examples") {
  CHECK(tau(4096) == 13);
  CHECK(tau(1) == 1);
  CHECK(tau(12) == 6);
  CHECK(tau(97) == 2);
  CHECK_THROWS_AS(tau(0), std::domain_error);
}

TEST_CASE("count_primitive_zeros examples") {
  std::array<std::int64_t, 6> cone{1, 0, 1, 0, 0, -1};  // x^2 + y^2 - z^2
  CHECK(count_primitive_zeros(cone, 5) == 24);
  std::array<std::int64_t, 6> definite{1, 0, 1, 0, 0, 1};
  for (std::int64_t B : {1, 10, 100}) CHECK(count_primitive_zeros(definite, B) == 0);
  std::array<std::int64_t, 6> two{1, 0, 1, 0, 0, -2};  // x^2 + y^2 - 2z^2
  CHECK(count_primitive_zeros(two, 1) == 8);
}

TEST_CASE("plane-scan path agrees with a literal box scan") {
  std::array<std::int64_t, 6> cone{1, 0, 1, 0, 0, -1};
  std::int64_t B = 201;  // forces the quadratic-solve path
  std::int64_t brute = 0;
  for (std::int64_t x = -B; x <= B; ++x)
    for (std::int64_t y = -B; y <= B; ++y)
      for (std::int64_t z = -B; z <= B; ++z) {
        if (x == 0 && y == 0 && z == 0) continue;
        if (static_cast<__int128>(x) * x + static_cast<__int128>(y) * y -
                static_cast<__int128>(z) * z !=
            0)
          continue;
        if (std::gcd(std::gcd(std::llabs(x), std::llabs(y)), std::llabs(z)) != 1)
          continue;
        ++brute;
      }
  CHECK(count_primitive_zeros(cone, B) == brute);
}

TEST_CASE("zero counts are monotone in the box radius") {
  std::array<std::int64_t, 6> cone{1, 0, 1, 0, 0, -1};
  std::int64_t prev = 0;
  for (std::int64_t B = 5; B <= 100; B += 5) {
    std::int64_t c = count_primitive_zeros(cone, B);
    CHECK(c >= prev);
    prev = c;
  }
}

TEST_CASE("degenerate l3 rows are handled on the plane-scan path") {
  // x^2 + 2yz: R = 0, rows with vanishing linear coefficient appear
  std::array<std::int64_t, 6> F{1, 0, 0, 0, 2, 0};
  std::int64_t B = 250;
  std::int64_t fast = count_primitive_zeros(F, B);
  std::int64_t brute = 0;
  for (std::int64_t x = -B; x <= B; ++x)
    for (std::int64_t y = -B; y <= B; ++y)
      for (std::int64_t z = -B; z <= B; ++z) {
        if (x == 0 && y == 0 && z == 0) continue;
        if (static_cast<__int128>(x) * x + 2 * static_cast<__int128>(y) * z != 0)
          continue;
        if (std::gcd(std::gcd(std::llabs(x), std::llabs(y)), std::llabs(z)) != 1)
          continue;
        ++brute;
      }
  CHECK(fast == brute);
}

TEST_CASE("bound_ratio diagnostics") {
  DualForm definite = DualForm::from_coefficients(1, 0, 1, 0, 0, 1);
  for (std::int64_t B : {5, 50}) CHECK(bound_ratio(definite, B) == 0.0);
  DualForm cone = DualForm::from_coefficients(1, 0, 1, 0, 0, -1);
  // det = -1, tau = 1, delta = 1: bound = 1 + B
  CHECK(std::abs(bound_ratio(cone, 5) - 24.0 / 6.0) < 1e-12);
  double prev_ok = true;
  for (std::int64_t B = 10; B <= 100; B += 10) {
    double r = bound_ratio(cone, B);
    prev_ok = prev_ok && r > 0.0 && r < 50.0;
  }
  CHECK(prev_ok);
}

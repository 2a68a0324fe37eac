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

#include <numeric>
#include <random>

#include "tqc/modarith.hpp"

using namespace tqc;

TEST_CASE("modulus construction validates its inputs") {
  CHECK_NOTHROW(PrimePowerModulus(3, 1));
  CHECK_NOTHROW(PrimePowerModulus(97, 3));
  CHECK(PrimePowerModulus(3, 2).q() == 9);
  CHECK(PrimePowerModulus(5, 3).q() == 125);
  CHECK_THROWS_AS(PrimePowerModulus(2, 3), std::domain_error);   // even
  CHECK_THROWS_AS(PrimePowerModulus(9, 1), std::domain_error);   // composite
  CHECK_THROWS_AS(PrimePowerModulus(15, 2), std::domain_error);  // composite
  CHECK_THROWS_AS(PrimePowerModulus(3, 0), std::domain_error);
  CHECK_THROWS_AS(PrimePowerModulus(3, 64), std::domain_error);  // width overflow
}

TEST_CASE("val_p basics") {
  CHECK(val_p(18, 3) == 2);
  CHECK(val_p(7, 3) == 0);
  CHECK(val_p(0, 5) == val_infinity);
  CHECK(val_p(-54, 3) == 3);
  CHECK(val_p(1, 3) == 0);
}

TEST_CASE("val_p is additive on products") {
  std::mt19937_64 rng(20260809);
  std::uniform_int_distribution<std::int64_t> dist(1, 5000);
  for (int i = 0; i < 200; ++i) {
    std::int64_t x = dist(rng), y = dist(rng);
    for (std::int64_t p : {3, 5, 7}) {
      CHECK(val_p(x * y, p) == val_p(x, p) + val_p(y, p));
    }
  }
}

TEST_CASE("inv_mod examples") {
  PrimePowerModulus m(3, 2);
  CHECK(inv_mod(2, m).value == 5);  // 2*5 = 10 ≡ 1 mod 9
  CHECK(inv_mod(1, m).value == 1);
  CHECK_THROWS_AS(inv_mod(3, m), non_unit_error);
  CHECK_THROWS_AS(inv_mod(0, m), non_unit_error);
}

TEST_CASE("inv_mod inverts every unit, exhaustively up to 3^7") {
  for (int n = 1; n <= 7; ++n) {
    PrimePowerModulus m(3, n);
    for (std::int64_t x = 1; x < m.q(); ++x) {
      if (x % 3 == 0) continue;
      std::int64_t r = inv_mod(x, m).value;
      CHECK(m.mul(x, r) == 1);
    }
  }
  PrimePowerModulus m(11, 4);
  for (std::int64_t x = 1; x < m.q(); x += 7) {
    if (x % 11 == 0) continue;
    CHECK(m.mul(x, inv_mod(x, m).value) == 1);
  }
}

TEST_CASE("jacobi symbol examples") {
  CHECK(jacobi(2, 7) == 1);   // 3^2 ≡ 2 mod 7
  CHECK(jacobi(3, 5) == -1);  // squares mod 5 are {0,1,4}
  CHECK(jacobi(1, 9) == 1);
  CHECK(jacobi(0, 9) == 0);
  CHECK(jacobi(-4, 3) == -1);  // ≡ (2/3)
  CHECK(jacobi(-4, 5) == 1);
  CHECK_THROWS_AS(jacobi(2, 4), std::domain_error);
  CHECK_THROWS_AS(jacobi(2, -3), std::domain_error);
}

TEST_CASE("jacobi matches quadratic residues for primes up to 97") {
  for (std::int64_t p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43,
                         47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97}) {
    std::vector<bool> is_square(p, false);
    for (std::int64_t x = 1; x < p; ++x) is_square[x * x % p] = true;
    for (std::int64_t a = 1; a < p; ++a) {
      CHECK(jacobi(a, p) == (is_square[a] ? 1 : -1));
    }
    CHECK(jacobi(0, p) == 0);
  }
}

TEST_CASE("jacobi is completely multiplicative in the numerator") {
  std::mt19937_64 rng(20260809);
  std::uniform_int_distribution<std::int64_t> dist(1, 100000);
  for (std::int64_t m : {9, 15, 21, 105, 3, 5, 49}) {
    for (int i = 0; i < 100; ++i) {
      std::int64_t a = dist(rng), b = dist(rng);
      CHECK(jacobi(a * b, m) == jacobi(a, m) * jacobi(b, m));
    }
  }
}

TEST_CASE("sqrt_mod examples") {
  {
    PrimePowerModulus m(7, 2);
    auto roots = sqrt_mod(2, m);
    REQUIRE(roots.has_value());
    CHECK(roots->first.value == 10);  // 10^2 = 100 ≡ 2 mod 49
    CHECK(roots->second.value == 39);
  }
  {
    PrimePowerModulus m(5, 2);
    auto roots = sqrt_mod(4, m);
    REQUIRE(roots.has_value());
    CHECK(roots->first.value == 2);
    CHECK(roots->second.value == 23);
  }
  {
    PrimePowerModulus m(5, 3);
    CHECK_FALSE(sqrt_mod(3, m).has_value());  // (3/5) = -1
  }
  {
    PrimePowerModulus m(5, 2);
    CHECK_THROWS_AS(sqrt_mod(10, m), non_unit_error);
  }
}

TEST_CASE("sqrt_mod roots square back and sum to q") {
  std::mt19937_64 rng(20260809);
  for (std::int64_t p : {3, 5, 7, 11, 13, 17}) {
    for (int n = 1; n <= 5; ++n) {
      if (std::pow(double(p), n) > 1e6) continue;
      PrimePowerModulus m(p, n);
      std::uniform_int_distribution<std::int64_t> dist(1, m.q() - 1);
      int found = 0;
      while (found < 30) {
        std::int64_t a = dist(rng);
        if (a % p == 0) continue;
        ++found;
        auto roots = sqrt_mod(a, m);
        if (jacobi(a, p) == -1) {
          CHECK_FALSE(roots.has_value());
          continue;
        }
        REQUIRE(roots.has_value());
        auto [r1, r2] = *roots;
        CHECK(m.mul(r1.value, r1.value) == m.reduce(a).value);
        CHECK(m.mul(r2.value, r2.value) == m.reduce(a).value);
        CHECK(r1.value + r2.value == m.q());
        CHECK(r1.value >= 1);
        CHECK(2 * r1.value < m.q());  // principal root in [1, q/2)
      }
    }
  }
}

TEST_CASE("modulus helpers reduce canonically") {
  PrimePowerModulus m(7, 3);
  CHECK(m.reduce(-1).value == m.q() - 1);
  CHECK(m.reduce(m.q()).value == 0);
  CHECK(m.reduce_wide(static_cast<__int128>(m.q()) * m.q() + 5).value == 5);
  CHECK(m.add(m.q() - 1, 1) == 0);
  CHECK(m.sub(0, 1) == m.q() - 1);
  CHECK(m.pow(2, 10) == m.reduce(1024).value);
}

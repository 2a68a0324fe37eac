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

#include <algorithm>
#include <set>

#include "tqc/conic.hpp"

using namespace tqc;

namespace {

// independent oracle: scan all p^{2n} pairs
std::set<std::pair<std::int64_t, std::int64_t>> oracle_solutions(
    const DehomogenizedForm& q, const PrimePowerModulus& m) {
  std::set<std::pair<std::int64_t, std::int64_t>> out;
  for (std::int64_t x = 0; x < m.q(); ++x)
    for (std::int64_t y = 0; y < m.q(); ++y) {
      __int128 v = static_cast<__int128>(q.a) * x * x +
                   static_cast<__int128>(q.b) * x * y +
                   static_cast<__int128>(q.c) * y * y +
                   static_cast<__int128>(q.d) * x +
                   static_cast<__int128>(q.e) * y + q.f;
      if (((v % m.q()) + m.q()) % m.q() == 0) out.emplace(x, y);
    }
  return out;
}

}  // namespace

TEST_CASE("form invariants") {
  TernaryForm Q(1, 0, 1, 0, 0, 1);
  CHECK(Q.four_delta == 4);
  CHECK(Q.disc2 == -4);
  TernaryForm Q2(1, 5, 1, 0, 0, 1);
  CHECK(Q2.four_delta == -21);  // 4acf - fb^2 = 4 - 25
  CHECK(Q2.disc2 == 21);
  TernaryForm Q3(1, 1, 1, 0, 0, 1);
  CHECK(Q3.four_delta == 3);
}

TEST_CASE("admissibility reports") {
  TernaryForm Q(1, 0, 1, 0, 0, 1);
  auto r5 = validate(Q, 5);
  CHECK(r5.accepted);
  CHECK(r5.gcd_a == 1);
  CHECK(r5.gcd_disc2 == 1);
  CHECK(r5.gcd_four_delta == 1);
  CHECK_FALSE(validate(Q, 2).accepted);  // p must be odd
  CHECK(validate(TernaryForm(1, 5, 1, 0, 0, 1), 5).accepted);  // gcd(-21,5)=1
  CHECK_FALSE(validate(TernaryForm(5, 0, 1, 0, 0, 1), 5).accepted);  // p | a
  CHECK_FALSE(validate(TernaryForm(1, 1, 1, 0, 0, 1), 3).accepted);  // p | 4ac-b^2... and 4Delta
  CHECK_THROWS_AS(require_admissible(TernaryForm(5, 0, 1, 0, 0, 1), 5),
                  not_admissible_error);
}

TEST_CASE("find_base_point picks the canonical lift") {
  DehomogenizedForm q(1, 0, 1, 0, 0, 1);  // x^2 + y^2 + 1
  {
    PrimePowerModulus m(5, 2);
    BasePoint b = find_base_point(q, m);
    CHECK(b.alpha.value == 0);
    CHECK(b.beta.value == 7);  // lift of (0,2): 1 + 4k ≡ 0 mod 5 -> k = 1
  }
  {
    PrimePowerModulus m(5, 1);
    BasePoint b = find_base_point(q, m);
    CHECK(b.alpha.value == 0);
    CHECK(b.beta.value == 2);
  }
  {
    PrimePowerModulus m(3, 1);
    BasePoint b = find_base_point(q, m);
    CHECK(b.alpha.value == 1);
    CHECK(b.beta.value == 1);
  }
}

TEST_CASE("base point solves the congruence at depth") {
  for (std::int64_t p : {3, 5, 7, 11}) {
    for (int n = 1; n <= 6; ++n) {
      PrimePowerModulus m(p, n);
      for (auto q : {DehomogenizedForm(1, 0, 1, 0, 0, 1),
                     DehomogenizedForm(2, 1, 3, 1, 1, 1),
                     DehomogenizedForm(1, 2, 3, 4, 5, 6)}) {
        TernaryForm Q(q.a, q.b, q.c, q.d, q.e, q.f);
        if (!validate(Q, p).accepted) continue;
        BasePoint b = find_base_point(q, m);
        CHECK(q.eval_mod(b.alpha.value, b.beta.value, m) == 0);
        CHECK((b.A.value % p != 0 || b.B.value % p != 0));
      }
    }
  }
}

TEST_CASE("parametrize_point examples") {
  DehomogenizedForm q(1, 0, 1, 0, 0, 1);
  PrimePowerModulus m(5, 1);
  BasePoint base = find_base_point(q, m);  // (0,2), A=0, B=4
  CHECK(base.A.value == 0);
  CHECK(base.B.value == 4);
  auto p1 = parametrize_point(q, base, SlopeParam::finite(1), m);
  REQUIRE(p1.has_value());
  CHECK(p1->first.value == 3);
  CHECK(p1->second.value == 0);
  CHECK_FALSE(parametrize_point(q, base, SlopeParam::finite(2), m).has_value());
  auto pinf = parametrize_point(q, base, SlopeParam::infinity(), m);
  REQUIRE(pinf.has_value());
  CHECK(pinf->first.value == 0);
  CHECK(pinf->second.value == 2);
}

TEST_CASE("parametrize_point is injective over admitted slopes") {
  DehomogenizedForm q(2, 1, 3, 1, 1, 1);
  PrimePowerModulus m(7, 2);
  BasePoint base = find_base_point(q, m);
  std::set<std::pair<std::int64_t, std::int64_t>> seen;
  int admitted = 0;
  for (std::int64_t t = 1; t <= m.q(); ++t) {
    auto pt = parametrize_point(q, base, SlopeParam::finite(t), m);
    if (!pt) continue;
    ++admitted;
    CHECK(seen.emplace(pt->first.value, pt->second.value).second);
    CHECK(q.eval_mod(pt->first.value, pt->second.value, m) == 0);
  }
  CHECK(admitted > 0);
}

TEST_CASE("enumerate_stratum examples") {
  DehomogenizedForm q(1, 0, 1, 0, 0, 1);
  PrimePowerModulus m(5, 1);
  BasePoint base = find_base_point(q, m);
  auto s0 = enumerate_stratum(q, base, 0, m);
  REQUIRE(s0.size() == 3);
  CHECK(s0[0].t == 1);
  CHECK(s0[0].x == 3);
  CHECK(s0[0].y == 0);
  CHECK(s0[1].t == 4);
  CHECK(s0[1].x == 2);
  CHECK(s0[1].y == 0);
  CHECK(s0[2].t == 5);
  CHECK(s0[2].x == 0);
  CHECK(s0[2].y == 3);
  auto s1 = enumerate_stratum(q, base, 1, m);
  REQUIRE(s1.size() == 1);
  CHECK(s1[0].t == 1);
  CHECK(s1[0].x == 0);
  CHECK(s1[0].y == 2);
}

TEST_CASE("stratum cardinalities follow the closed forms") {
  DehomogenizedForm q(1, 0, 1, 0, 0, 1);
  for (std::int64_t p : {3, 5, 7}) {
    for (int n = 1; n <= 4; ++n) {
      PrimePowerModulus m(p, n);
      BasePoint base = find_base_point(q, m);
      std::int64_t chi = jacobi(q.disc2, p);
      std::int64_t pn1 = 1;
      for (int i = 0; i < n - 1; ++i) pn1 *= p;
      CHECK(static_cast<std::int64_t>(enumerate_stratum(q, base, 0, m).size()) ==
            (p - 1 - chi) * pn1);
      for (int s = 1; s <= n - 1; ++s) {
        std::int64_t pns = 1;
        for (int i = 0; i < n - s; ++i) pns *= p;
        CHECK(static_cast<std::int64_t>(enumerate_stratum(q, base, s, m).size()) ==
              pns - pns / p);
      }
      CHECK(enumerate_stratum(q, base, n, m).size() == 1);
    }
  }
}

TEST_CASE("enumerate_all matches the closed count and the oracle") {
  {
    PrimePowerModulus m(5, 1);
    auto sols = enumerate_all(DehomogenizedForm(1, 0, 1, 0, 0, 1), m);
    REQUIRE(sols.size() == 4);
    std::set<std::pair<std::int64_t, std::int64_t>> got;
    for (const auto& e : sols.entries()) got.emplace(e.x, e.y);
    std::set<std::pair<std::int64_t, std::int64_t>> want{{3, 0}, {2, 0}, {0, 3}, {0, 2}};
    CHECK(got == want);
  }
  {
    PrimePowerModulus m(5, 2);
    CHECK(enumerate_all(DehomogenizedForm(1, 0, 1, 0, 0, 1), m).size() == 20);
  }
  {
    PrimePowerModulus m(3, 1);
    CHECK(enumerate_all(DehomogenizedForm(1, 0, 1, 0, 0, 1), m).size() == 4);
  }

  for (auto q : {DehomogenizedForm(1, 0, 1, 0, 0, 1),
                 DehomogenizedForm(2, 1, 3, 1, 1, 1),
                 DehomogenizedForm(1, 2, 3, 4, 5, 6),
                 DehomogenizedForm(1, 1, 2, 3, 1, 5)}) {
    TernaryForm Q(q.a, q.b, q.c, q.d, q.e, q.f);
    for (std::int64_t p : {3, 5, 7}) {
      if (!validate(Q, p).accepted) continue;
      for (int n = 1; n <= 3; ++n) {
        if (std::pow(double(p), 2 * n) > 1e5) continue;
        PrimePowerModulus m(p, n);
        auto sols = enumerate_all(q, m);
        std::set<std::pair<std::int64_t, std::int64_t>> got;
        for (const auto& e : sols.entries()) got.emplace(e.x, e.y);
        CHECK(got == oracle_solutions(q, m));
      }
    }
  }
}

TEST_CASE("count_solutions closed form and lifting recursion") {
  DehomogenizedForm q(1, 0, 1, 0, 0, 1);
  CHECK(count_solutions(q, PrimePowerModulus(5, 2)) == 20);
  CHECK(count_solutions(q, PrimePowerModulus(3, 3)) == 36);
  for (std::int64_t p : {3, 5, 7, 11}) {
    for (int n = 1; n <= 4; ++n) {
      CHECK(count_solutions(q, PrimePowerModulus(p, n + 1)) ==
            p * count_solutions(q, PrimePowerModulus(p, n)));
    }
  }
  // residue-discriminant specialization: chi = +1 gives p - 1 points at n = 1
  DehomogenizedForm qr(1, 0, -1, 0, 0, 1);  // disc2 = 4, a square
  CHECK(count_solutions(qr, PrimePowerModulus(7, 1)) == 6);
}

TEST_CASE("exhaustive_solutions enforces its budget") {
  CHECK_THROWS_AS(
      exhaustive_solutions(DehomogenizedForm(1, 0, 1, 0, 0, 1),
                           PrimePowerModulus(11, 4), 1000000),
      budget_error);
}

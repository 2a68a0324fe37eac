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

// Gaussian-weighted counts of solutions of Q(x,y,z) ≡ 0 mod p^n with
// (z,p) = 1 near a fixed center, computed two independent ways (a literal
// box scan and the residue-class decomposition through the conic solution
// set), the density main term, the exact unweighted count for q = p, and
// the scaling experiment that tracks the ratio of the two.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "tqc/charsum.hpp"
#include "tqc/conic.hpp"
#include "tqc/modarith.hpp"

namespace tqc {

// ---------------------------------------------------------------------------
// weight
// ---------------------------------------------------------------------------

// the self-dual Gaussian: its Fourier transform is itself, so the main-term
// comparison carries no transform error
inline double weight(double x) {
  constexpr double pi = 3.14159265358979323846264338327950288;
  return std::exp(-pi * x * x);
}
inline double weight_hat(double x) { return weight(x); }

// ---------------------------------------------------------------------------
// densities and exact counts
// ---------------------------------------------------------------------------

struct RationalValue {
  std::int64_t num = 0;
  std::int64_t den = 1;
  double value() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }
};

// C_p(Q) = (p - s_p(Q))(p - 1) / p^2 with s_p(Q) = (b^2-4ac / p)
inline RationalValue c_p(const TernaryForm& Q, std::int64_t p) {
  require_admissible(Q, p);
  std::int64_t s = jacobi(Q.disc2, p);
  RationalValue r{(p - s) * (p - 1), p * p};
  std::int64_t g = std::gcd(r.num, r.den);
  r.num /= g;
  r.den /= g;
  return r;
}

// brute-force count of Q ≡ 0 mod p with z ≢ 0, checked against the closed
// form (p-1)(p - s_p(Q))
inline std::int64_t exact_count_mod_p(const TernaryForm& Q, std::int64_t p) {
  require_admissible(Q, p);
  PrimePowerModulus mp(p, 1);
  std::int64_t count = 0;
  for (std::int64_t x = 0; x < p; ++x)
    for (std::int64_t y = 0; y < p; ++y)
      for (std::int64_t z = 1; z < p; ++z)
        if (Q.eval_mod(x, y, z, mp) == 0) ++count;
  std::int64_t expected = (p - 1) * (p - jacobi(Q.disc2, p));
  if (count != expected)
    throw consistency_error("exact_count_mod_p: closed form mismatch, got " +
                            std::to_string(count) + " expected " +
                            std::to_string(expected));
  return count;
}

// ---------------------------------------------------------------------------
// smoothed counts
// ---------------------------------------------------------------------------

struct CountConfig {
  TernaryForm Q;
  PrimePowerModulus m;
  double N;  // box scale
  std::array<std::int64_t, 3> center{0, 0, 0};
  double truncation_multiple = 6.0;  // window half-width = multiple · N

  CountConfig(TernaryForm Q_, PrimePowerModulus m_, double N_,
              std::array<std::int64_t, 3> center_ = {0, 0, 0},
              double multiple = 6.0)
      : Q(Q_), m(m_), N(N_), center(center_), truncation_multiple(multiple) {
    if (!(N > 0)) throw std::domain_error("CountConfig: N must be positive");
    if (multiple < 6.0)
      throw std::domain_error(
          "CountConfig: truncation multiple below 6 leaves visible tail mass");
  }

  std::int64_t half_width() const {
    return static_cast<std::int64_t>(std::ceil(truncation_multiple * N));
  }
};

// literal triple scan of the truncated box; x outer, y middle, z inner
inline double smooth_count_naive(const CountConfig& cfg,
                                 double budget_visits = 1e10) {
  const PrimePowerModulus& m = cfg.m;
  std::int64_t W = cfg.half_width();
  std::int64_t L = 2 * W + 1;
  if (static_cast<double>(L) * L * L > budget_visits)
    throw budget_error("smooth_count_naive: window visits exceed the budget");

  std::vector<double> phi(L);
  for (std::int64_t i = 0; i < L; ++i)
    phi[i] = weight(static_cast<double>(i - W) / cfg.N);

  std::int64_t q = m.q(), p = m.p();
  std::int64_t a = m.reduce(cfg.Q.a).value, b = m.reduce(cfg.Q.b).value,
               c = m.reduce(cfg.Q.c).value, d = m.reduce(cfg.Q.d).value,
               e = m.reduce(cfg.Q.e).value, f = m.reduce(cfg.Q.f).value;
  std::int64_t x0 = cfg.center[0], y0 = cfg.center[1], z0 = cfg.center[2];
  std::int64_t two_f = m.add(f, f);

  KahanSum acc;
  for (std::int64_t i = 0; i < L; ++i) {
    std::int64_t x = x0 - W + i;
    std::int64_t xm = m.reduce(x).value;
    std::int64_t ax = m.mul(a, m.mul(xm, xm));
    std::int64_t bx = m.mul(b, xm);
    std::int64_t dx = m.mul(d, xm);
    for (std::int64_t j = 0; j < L; ++j) {
      std::int64_t y = y0 - W + j;
      std::int64_t ym = m.reduce(y).value;
      // Q(x,y,z) = f z^2 + (dx + ey) z + (a x^2 + b xy + c y^2)
      std::int64_t c0 = m.add(ax, m.add(m.mul(bx, ym), m.mul(c, m.mul(ym, ym))));
      std::int64_t c1 = m.add(dx, m.mul(e, ym));
      std::int64_t zlo = z0 - W;
      std::int64_t zm = m.reduce(zlo).value;
      std::int64_t v = m.add(m.mul(f, m.mul(zm, zm)), m.add(m.mul(c1, zm), c0));
      // first difference f(2z+1) + c1, stepped by 2f
      std::int64_t dv = m.add(m.mul(f, m.reduce(2 * zlo + 1).value), c1);
      std::int64_t zp = ((zlo % p) + p) % p;
      double wxy = phi[i] * phi[j];
      for (std::int64_t k = 0; k < L; ++k) {
        if (v == 0 && zp != 0) acc.add(wxy * phi[k]);
        v = m.add(v, dv);
        dv = m.add(dv, two_f);
        if (++zp == p) zp = 0;
      }
    }
  }
  return acc.value();
}

// Residue-class method: for each z in the window coprime to p and each conic
// class (xt, yt), sum the weights over the progressions x ≡ xt·z and
// y ≡ yt·z mod q inside the box.  Shares no membership logic with the
// naive scan.
inline double smooth_count_classes(const CountConfig& cfg,
                                   const ConicSolutionSet& solutions) {
  if (!(solutions.modulus() == cfg.m))
    throw std::domain_error("smooth_count_classes: modulus mismatch");
  const PrimePowerModulus& m = cfg.m;
  std::int64_t q = m.q(), p = m.p();
  std::int64_t W = cfg.half_width();
  std::int64_t L = 2 * W + 1;
  std::int64_t x0 = cfg.center[0], y0 = cfg.center[1], z0 = cfg.center[2];

  std::vector<double> phi(L);
  for (std::int64_t i = 0; i < L; ++i)
    phi[i] = weight(static_cast<double>(i - W) / cfg.N);

  const auto& entries = solutions.entries();
  std::size_t cnt = entries.size();

  KahanSum acc;
  if (L < q) {
    // each progression meets the window at most once
    std::vector<std::uint32_t> xt(cnt), yt(cnt), rx(cnt), ry(cnt);
    for (std::size_t i = 0; i < cnt; ++i) {
      xt[i] = static_cast<std::uint32_t>(entries[i].x);
      yt[i] = static_cast<std::uint32_t>(entries[i].y);
    }
    std::int64_t zlo = z0 - W;
    for (std::size_t i = 0; i < cnt; ++i) {
      rx[i] = static_cast<std::uint32_t>(
          m.reduce_wide(static_cast<__int128>(entries[i].x) * zlo - (x0 - W)).value);
      ry[i] = static_cast<std::uint32_t>(
          m.reduce_wide(static_cast<__int128>(entries[i].y) * zlo - (y0 - W)).value);
    }
    auto qq = static_cast<std::uint32_t>(q);
    auto ll = static_cast<std::uint32_t>(L);
    std::int64_t zp = ((zlo % p) + p) % p;
    for (std::int64_t k = 0; k < L; ++k) {
      if (zp != 0) {
        double inner = 0.0;
        for (std::size_t i = 0; i < cnt; ++i) {
          if (rx[i] < ll && ry[i] < ll) inner += phi[rx[i]] * phi[ry[i]];
        }
        if (inner != 0.0) acc.add(phi[k] * inner);
      }
      for (std::size_t i = 0; i < cnt; ++i) {
        std::uint32_t v = rx[i] + xt[i];
        rx[i] = v >= qq ? v - qq : v;
        v = ry[i] + yt[i];
        ry[i] = v >= qq ? v - qq : v;
      }
      if (++zp == p) zp = 0;
    }
  } else {
    // small modulus: progressions hit the window many times
    for (std::int64_t k = 0; k < L; ++k) {
      std::int64_t z = z0 - W + k;
      if (((z % p) + p) % p == 0) continue;
      std::int64_t zm = m.reduce(z).value;
      double inner = 0.0;
      for (std::size_t i = 0; i < cnt; ++i) {
        std::int64_t ax = m.mul(m.reduce(entries[i].x).value, zm);
        std::int64_t ay = m.mul(m.reduce(entries[i].y).value, zm);
        double sx = 0.0, sy = 0.0;
        for (std::int64_t t = (ax - (x0 - W)) % q + ((ax - (x0 - W)) % q < 0 ? q : 0);
             t < L; t += q)
          sx += phi[t];
        for (std::int64_t t = (ay - (y0 - W)) % q + ((ay - (y0 - W)) % q < 0 ? q : 0);
             t < L; t += q)
          sy += phi[t];
        inner += sx * sy;
      }
      acc.add(phi[k] * inner);
    }
  }
  return acc.value();
}

// predicted size of the weighted count: C_p(Q) · N^3 / q  (hat{Phi}(0) = 1)
inline double main_term(const CountConfig& cfg) {
  RationalValue C = c_p(cfg.Q, cfg.m.p());
  return C.value() * cfg.N * cfg.N * cfg.N / static_cast<double>(cfg.m.q());
}

struct SmoothCountReport {
  CountConfig config;
  double T_classes = 0.0;
  double T0 = 0.0;
  double ratio = 0.0;
  bool has_naive = false;
  double T_naive = 0.0;
};

inline SmoothCountReport smooth_count_report(const CountConfig& cfg,
                                             const ConicSolutionSet& solutions,
                                             bool with_naive = false,
                                             double naive_budget = 1e10) {
  SmoothCountReport rep{cfg};
  rep.T_classes = smooth_count_classes(cfg, solutions);
  rep.T0 = main_term(cfg);
  rep.ratio = rep.T_classes / rep.T0;
  if (with_naive) {
    rep.T_naive = smooth_count_naive(cfg, naive_budget);
    rep.has_naive = true;
    if (std::abs(rep.T_naive - rep.T_classes) >
        1e-6 * std::max(1.0, std::abs(rep.T_classes)))
      throw consistency_error("smooth count: naive and class methods disagree");
  }
  return rep;
}

// ---------------------------------------------------------------------------
// the scaling experiment
// ---------------------------------------------------------------------------

struct ExperimentRow {
  int n = 0;
  std::int64_t q = 0;
  std::int64_t N = 0;
  double theta = 0.0;
  double T = 0.0;
  double T0 = 0.0;
  double ratio = 0.0;
  std::string method;
  double seconds = 0.0;
  bool skipped = false;
  std::string skip_reason;
};

struct ExperimentOptions {
  std::array<std::int64_t, 3> center{0, 0, 0};
  double truncation_multiple = 6.0;
  double budget_visits = 1e9;        // cap on |M| · z-window per row
  double naive_budget_visits = 1e8;  // cross-check rows cheaper than this
};

inline std::int64_t scale_for(std::int64_t q, double theta) {
  long double raw = std::pow(static_cast<long double>(q),
                             static_cast<long double>(theta));
  auto N = static_cast<std::int64_t>(std::ceil(raw - 1e-9L));
  return N < 1 ? 1 : N;
}

// one row per exponent: T by the class method (naive cross-check when the
// box is cheap), the main term, and their ratio
inline std::vector<ExperimentRow> run_asymptotic_experiment(
    const TernaryForm& Q, std::int64_t p, const std::vector<int>& n_list,
    double theta, const ExperimentOptions& opts = {}) {
  require_admissible(Q, p);
  std::vector<ExperimentRow> rows;
  for (int n : n_list) {
    ExperimentRow row;
    row.n = n;
    row.theta = theta;
    PrimePowerModulus m(p, n);
    row.q = m.q();
    row.N = scale_for(m.q(), theta);
    CountConfig cfg(Q, m, static_cast<double>(row.N), opts.center,
                    opts.truncation_multiple);
    std::int64_t window = 2 * cfg.half_width() + 1;
    DehomogenizedForm deh = Q.dehomogenize();
    double visits =
        static_cast<double>(count_solutions(deh, m)) * static_cast<double>(window);
    if (visits > opts.budget_visits) {
      row.skipped = true;
      row.skip_reason = "budget: |M|*window = " + std::to_string(visits);
      rows.push_back(row);
      continue;
    }
    auto start = std::chrono::steady_clock::now();
    ConicSolutionSet sols = enumerate_all(deh, m);
    double w3 = static_cast<double>(window) * window * window;
    bool with_naive = w3 <= opts.naive_budget_visits;
    SmoothCountReport rep =
        smooth_count_report(cfg, sols, with_naive, opts.naive_budget_visits);
    auto stop = std::chrono::steady_clock::now();
    row.T = rep.T_classes;
    row.T0 = rep.T0;
    row.ratio = rep.ratio;
    row.method = with_naive ? "classes+naive" : "classes";
    row.seconds = std::chrono::duration<double>(stop - start).count();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace tqc

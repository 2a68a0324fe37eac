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

// tqc: solve, enumerate and count ternary quadratic congruences mod p^n,
// evaluate the associated exponential sums, and run the scaling experiment.
//
// Exit codes: 0 success, 2 inadmissible input, 3 budget exceeded,
// 4 parse error, 5 domain error (pole / non-unit).

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "tqc/charsum.hpp"
#include "tqc/conic.hpp"
#include "tqc/counting.hpp"
#include "tqc/expsum.hpp"
#include "tqc/modarith.hpp"
#include "tqc/polyrat.hpp"
#include "tqc/quadric.hpp"
#include "tqc/textio.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr int exit_ok = 0;
constexpr int exit_inadmissible = 2;
constexpr int exit_budget = 3;
constexpr int exit_parse = 4;
constexpr int exit_domain = 5;

struct CommonOpts {
  std::string format = "table";
  std::int64_t seed = 20260809;
  double budget_terms = 0;  // 0 = subcommand default
};

std::string fmt_double(double v) {
  std::ostringstream out;
  out << std::setprecision(15) << v;
  return out.str();
}

// every run echoes its full resolved configuration
void emit_header(const CommonOpts& opts, const json& config, std::ostream& os) {
  if (opts.format == "json") return;  // folded into the JSON object instead
  os << "# tqc " << config["subcommand"].get<std::string>() << "\n";
  for (auto& [key, value] : config.items()) {
    if (key == "subcommand") continue;
    os << "# " << key << " = " << (value.is_string() ? value.get<std::string>()
                                                     : value.dump())
       << "\n";
  }
}

void emit_json(const json& config, const json& result, std::ostream& os) {
  json out;
  out["config"] = config;
  out["result"] = result;
  os << out.dump(2) << "\n";
}

json config_base(const std::string& sub, const CommonOpts& opts) {
  json c;
  c["subcommand"] = sub;
  c["format"] = opts.format;
  c["seed"] = opts.seed;
  return c;
}

int run_count(const std::string& form_text, std::int64_t p, int n, bool verify,
              const CommonOpts& opts) {
  tqc::TernaryForm Q = tqc::parse_ternary_form(form_text);
  auto report = tqc::validate(Q, p);
  if (!report.accepted) {
    std::cerr << "inadmissible form at p = " << p << ": gcd(a,p) = "
              << report.gcd_a << ", gcd(b^2-4ac,p) = " << report.gcd_disc2
              << ", gcd(4Delta,p) = " << report.gcd_four_delta
              << (report.p_odd_prime ? "" : ", p is not an odd prime") << "\n";
    return exit_inadmissible;
  }
  tqc::PrimePowerModulus m(p, n);
  tqc::DehomogenizedForm q = Q.dehomogenize();
  std::int64_t count = tqc::count_solutions(q, m);

  double budget = opts.budget_terms > 0 ? opts.budget_terms : 1e7;
  bool oracle_ran = false;
  std::int64_t oracle = -1;
  if (verify) {
    auto sols = tqc::exhaustive_solutions(q, m, static_cast<std::int64_t>(budget));
    oracle = static_cast<std::int64_t>(sols.size());
    oracle_ran = true;
    if (oracle != count) {
      std::cerr << "oracle mismatch: closed form " << count << ", exhaustive "
                << oracle << "\n";
      return 1;
    }
  }

  json config = config_base("count", opts);
  config["form"] = form_text;
  config["p"] = p;
  config["n"] = n;
  config["verify"] = verify;
  config["budget_terms"] = budget;
  if (opts.format == "json") {
    json result;
    result["count"] = count;
    if (oracle_ran) {
      result["oracle"] = oracle;
      result["oracle_ok"] = true;
    }
    emit_json(config, result, std::cout);
  } else {
    emit_header(opts, config, std::cout);
    if (opts.format == "csv") {
      std::cout << "count,oracle\n"
                << count << "," << (oracle_ran ? std::to_string(oracle) : "")
                << "\n";
    } else {
      std::cout << "count = " << count << "\n";
      if (oracle_ran) std::cout << "oracle = " << oracle << ", OK\n";
    }
  }
  return exit_ok;
}

int run_enumerate(const std::string& form_text, std::int64_t p, int n,
                  bool force, const CommonOpts& opts) {
  tqc::TernaryForm Q = tqc::parse_ternary_form(form_text);
  if (!tqc::validate(Q, p).accepted) {
    std::cerr << "inadmissible form at p = " << p << "\n";
    return exit_inadmissible;
  }
  tqc::PrimePowerModulus m(p, n);
  tqc::DehomogenizedForm q = Q.dehomogenize();
  double budget = opts.budget_terms > 0 ? opts.budget_terms : 1e5;
  std::int64_t expected = tqc::count_solutions(q, m);
  if (!force && static_cast<double>(expected) > budget) {
    std::cerr << "listing of " << expected
              << " entries exceeds the budget (use --force)\n";
    return exit_budget;
  }
  auto sols = tqc::enumerate_all(q, m);

  json config = config_base("enumerate", opts);
  config["form"] = form_text;
  config["p"] = p;
  config["n"] = n;
  config["force"] = force;
  config["budget_terms"] = budget;
  if (opts.format == "json") {
    json rows = json::array();
    for (const auto& e : sols.entries())
      rows.push_back(json{{"s", e.s}, {"t", e.t}, {"x", e.x}, {"y", e.y}});
    json result;
    result["size"] = sols.size();
    result["entries"] = rows;
    emit_json(config, result, std::cout);
  } else {
    emit_header(opts, config, std::cout);
    std::cout << "s,t,x,y\n";
    for (const auto& e : sols.entries())
      std::cout << e.s << "," << e.t << "," << e.x << "," << e.y << "\n";
  }
  return exit_ok;
}

int run_expsum(const std::string& f_text, std::int64_t p, int n,
               std::int64_t alpha, bool verify, const CommonOpts& opts) {
  tqc::RationalAmplitude f = tqc::parse_rational_amplitude(f_text);
  tqc::PrimePowerModulus m(p, n);
  auto input = tqc::make_cochrane_input(f, alpha, m);
  auto closed = tqc::cochrane_eval(input);
  std::string method = closed ? "cochrane" : "direct-fallback";
  tqc::ComplexValue value;
  bool direct_ran = false;
  tqc::ComplexValue direct;
  if (closed && !verify) {
    value = *closed;
  } else {
    direct = tqc::s_alpha_direct(f, alpha, m);
    direct_ran = true;
    value = closed ? *closed : direct;
  }

  json config = config_base("expsum", opts);
  config["f"] = f_text;
  config["p"] = p;
  config["n"] = n;
  config["alpha"] = alpha;
  config["verify"] = verify;
  if (opts.format == "json") {
    json result;
    result["method"] = method;
    result["r"] = input.r == tqc::val_infinity ? json(nullptr) : json(input.r);
    result["re"] = value.real();
    result["im"] = value.imag();
    if (direct_ran && closed) {
      result["direct_re"] = direct.real();
      result["direct_im"] = direct.imag();
      result["difference"] = std::abs(*closed - direct);
    }
    emit_json(config, result, std::cout);
  } else {
    emit_header(opts, config, std::cout);
    std::cout << "method = " << method << "\n"
              << "value = " << fmt_double(value.real()) << " + "
              << fmt_double(value.imag()) << "i\n";
    if (direct_ran && closed)
      std::cout << "direct = " << fmt_double(direct.real()) << " + "
                << fmt_double(direct.imag()) << "i\n"
                << "difference = " << fmt_double(std::abs(*closed - direct))
                << "\n";
  }
  return exit_ok;
}

std::pair<int, int> parse_range(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw tqc::parse_error("range: expected lo:hi");
  try {
    int lo = std::stoi(text.substr(0, colon));
    int hi = std::stoi(text.substr(colon + 1));
    if (lo < 1 || hi < lo) throw tqc::parse_error("range: need 1 <= lo <= hi");
    return {lo, hi};
  } catch (const std::invalid_argument&) {
    throw tqc::parse_error("range: malformed integer");
  }
}

int run_asymptotic(const std::string& form_text, std::int64_t p,
                   const std::string& n_range, double theta,
                   const std::string& center_text, const std::string& freeze,
                   const CommonOpts& opts) {
  tqc::TernaryForm Q = tqc::parse_ternary_form(form_text);
  if (!tqc::validate(Q, p).accepted) {
    std::cerr << "inadmissible form at p = " << p << "\n";
    return exit_inadmissible;
  }
  auto [lo, hi] = parse_range(n_range);
  std::vector<int> ns;
  for (int n = lo; n <= hi; ++n) ns.push_back(n);

  tqc::ExperimentOptions exp_opts;
  exp_opts.center = tqc::parse_center(center_text);
  if (opts.budget_terms > 0) exp_opts.budget_visits = opts.budget_terms;
  auto rows = tqc::run_asymptotic_experiment(Q, p, ns, theta, exp_opts);

  json config = config_base("asymptotic", opts);
  config["form"] = form_text;
  config["p"] = p;
  config["n_range"] = n_range;
  config["theta"] = theta;
  config["center"] = center_text;
  config["budget_terms"] = exp_opts.budget_visits;

  std::ostringstream csv;
  csv << "n,q,N,theta,T,T0,ratio,method,seconds\n";
  for (const auto& r : rows) {
    if (r.skipped) {
      csv << r.n << "," << r.q << "," << r.N << "," << r.theta
          << ",,,,skipped:" << r.skip_reason << ",\n";
      continue;
    }
    csv << r.n << "," << r.q << "," << r.N << "," << r.theta << ","
        << fmt_double(r.T) << "," << fmt_double(r.T0) << ","
        << fmt_double(r.ratio) << "," << r.method << ","
        << fmt_double(r.seconds) << "\n";
  }

  if (!freeze.empty()) {
    std::ofstream out(freeze);
    if (!out) {
      std::cerr << "cannot write golden file " << freeze << "\n";
      return 1;
    }
    out << csv.str();
  }

  if (opts.format == "json") {
    json jrows = json::array();
    for (const auto& r : rows) {
      json row;
      row["n"] = r.n;
      row["q"] = r.q;
      row["N"] = r.N;
      row["theta"] = r.theta;
      if (r.skipped) {
        row["skipped"] = r.skip_reason;
      } else {
        row["T"] = r.T;
        row["T0"] = r.T0;
        row["ratio"] = r.ratio;
        row["method"] = r.method;
        row["seconds"] = r.seconds;
      }
      jrows.push_back(row);
    }
    emit_json(config, jrows, std::cout);
  } else if (opts.format == "csv") {
    emit_header(opts, config, std::cout);
    std::cout << csv.str();
  } else {
    emit_header(opts, config, std::cout);
    std::printf("%4s %10s %8s %7s %16s %16s %10s %16s\n", "n", "q", "N",
                "theta", "T", "T0", "ratio", "method");
    for (const auto& r : rows) {
      if (r.skipped) {
        std::printf("%4d %10lld %8lld %7.3f %16s %16s %10s %16s\n", r.n,
                    static_cast<long long>(r.q), static_cast<long long>(r.N),
                    r.theta, "-", "-", "-", "skipped");
        continue;
      }
      std::printf("%4d %10lld %8lld %7.3f %16.6f %16.6f %10.6f %16s\n", r.n,
                  static_cast<long long>(r.q), static_cast<long long>(r.N),
                  r.theta, r.T, r.T0, r.ratio, r.method.c_str());
    }
  }
  return exit_ok;
}

std::vector<std::int64_t> parse_b_range(const std::string& text) {
  // lo:hi[:step]
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  if (parts.size() < 2 || parts.size() > 3)
    throw tqc::parse_error("b-range: expected lo:hi[:step]");
  try {
    std::int64_t lo = std::stoll(parts[0]);
    std::int64_t hi = std::stoll(parts[1]);
    std::int64_t step = parts.size() == 3 ? std::stoll(parts[2]) : 1;
    if (lo < 1 || hi < lo || step < 1)
      throw tqc::parse_error("b-range: need 1 <= lo <= hi, step >= 1");
    std::vector<std::int64_t> out;
    for (std::int64_t b = lo; b <= hi; b += step) out.push_back(b);
    return out;
  } catch (const std::invalid_argument&) {
    throw tqc::parse_error("b-range: malformed integer");
  }
}

int run_quadric(const std::string& form_text, const std::string& b_range,
                const CommonOpts& opts) {
  tqc::TernaryForm Q = tqc::parse_ternary_form(form_text);
  if (Q.four_delta == 0 || Q.disc2 == 0) {
    std::cerr << "degenerate form: 4Delta = " << Q.four_delta
              << ", b^2-4ac = " << Q.disc2 << "\n";
    return exit_inadmissible;
  }
  tqc::DualForm F = tqc::dual_form(Q);
  auto bs = parse_b_range(b_range);
  double budget = opts.budget_terms > 0 ? opts.budget_terms : 1e9;

  json config = config_base("quadric", opts);
  config["form"] = form_text;
  config["b_range"] = b_range;
  config["budget_terms"] = budget;

  const auto& c = F.coefficients();
  std::int64_t t = tqc::tau(static_cast<std::int64_t>(
      tqc::detail::abs128(F.det_assoc())));

  std::ostringstream csv;
  csv << "B,count,bound,ratio\n";
  std::vector<std::array<double, 4>> sweep;
  for (std::int64_t B : bs) {
    std::int64_t count = tqc::count_primitive_zeros(F, B, budget);
    double ratio = tqc::bound_ratio(F, B, budget);
    double bound = ratio == 0.0 ? 0.0 : static_cast<double>(count) / ratio;
    if (count == 0) {
      double delta = static_cast<double>(F.minor_gcd_value());
      double dd = static_cast<double>(tqc::detail::abs128(F.det_assoc()));
      bound = static_cast<double>(t) *
              (1.0 + static_cast<double>(B) * std::sqrt(delta) / std::cbrt(dd));
    }
    sweep.push_back({static_cast<double>(B), static_cast<double>(count), bound, ratio});
    csv << B << "," << count << "," << fmt_double(bound) << ","
        << fmt_double(ratio) << "\n";
  }

  if (opts.format == "json") {
    json result;
    result["dual"] = json{{"M", c[0]}, {"N", c[1]}, {"O", c[2]},
                          {"P", c[3]}, {"Q", c[4]}, {"R", c[5]}};
    result["det_assoc"] = tqc::detail::to_string128(F.det_assoc());
    result["minor_gcd"] = tqc::detail::to_string128(F.minor_gcd_value());
    result["tau"] = t;
    json jrows = json::array();
    for (const auto& row : sweep)
      jrows.push_back(json{{"B", static_cast<std::int64_t>(row[0])},
                           {"count", static_cast<std::int64_t>(row[1])},
                           {"bound", row[2]},
                           {"ratio", row[3]}});
    result["sweep"] = jrows;
    emit_json(config, result, std::cout);
  } else {
    emit_header(opts, config, std::cout);
    std::cout << "# dual = " << c[0] << " " << c[1] << " " << c[2] << " "
              << c[3] << " " << c[4] << " " << c[5] << "\n"
              << "# det_assoc = " << tqc::detail::to_string128(F.det_assoc())
              << "\n"
              << "# minor_gcd = " << tqc::detail::to_string128(F.minor_gcd_value())
              << "\n"
              << "# tau = " << t << "\n";
    std::cout << csv.str();
  }
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ternary quadratic congruences mod p^n"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string form_text, f_text, n_range = "1:1", b_range = "5:50:5";
  std::string center_text = "0 0 0", freeze;
  std::int64_t p = 3, alpha = 0;
  int n = 1;
  double theta = 0.6;
  bool verify = false, force = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "table"}));
    sub->add_option("--seed", opts.seed, "master seed (echoed for reproducibility)");
    sub->add_option("--budget-terms", opts.budget_terms, "work budget override");
  };

  CLI::App* count = app.add_subcommand("count", "closed-form solution count of q(x,y) ≡ 0 mod p^n");
  count->add_option("--form", form_text, "six integers: a b c d e f")->required();
  count->add_option("--p", p, "odd prime")->required();
  count->add_option("--n", n, "exponent")->required();
  count->add_flag("--verify", verify, "cross-check against the exhaustive scan");
  add_common(count);

  CLI::App* enumerate = app.add_subcommand("enumerate", "stratified solution listing");
  enumerate->add_option("--form", form_text)->required();
  enumerate->add_option("--p", p)->required();
  enumerate->add_option("--n", n)->required();
  enumerate->add_flag("--force", force, "ignore the listing budget");
  add_common(enumerate);

  CLI::App* expsum = app.add_subcommand("expsum", "S_alpha(f; p^n) closed form with direct fallback");
  expsum->add_option("--f", f_text, "rational function, e.g. \"x^2 + 1 / x\"")->required();
  expsum->add_option("--p", p)->required();
  expsum->add_option("--n", n)->required();
  expsum->add_option("--alpha", alpha, "residue class mod p")->required();
  expsum->add_flag("--verify", verify, "also run the direct sum");
  add_common(expsum);

  CLI::App* asym = app.add_subcommand("asymptotic", "weighted-count scaling experiment");
  asym->add_option("--form", form_text)->required();
  asym->add_option("--p", p)->required();
  asym->add_option("--n-range", n_range, "lo:hi")->required();
  asym->add_option("--theta", theta, "N = ceil(q^theta)");
  asym->add_option("--center", center_text, "three integers: x0 y0 z0");
  asym->add_option("--freeze", freeze, "write the CSV to this golden-data path");
  add_common(asym);

  CLI::App* quadric = app.add_subcommand("quadric", "dual form invariants and primitive zero sweep");
  quadric->add_option("--form", form_text)->required();
  quadric->add_option("--b-range", b_range, "lo:hi[:step]");
  add_common(quadric);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_parse;
  }

  try {
    if (count->parsed()) return run_count(form_text, p, n, verify, opts);
    if (enumerate->parsed()) return run_enumerate(form_text, p, n, force, opts);
    if (expsum->parsed()) return run_expsum(f_text, p, n, alpha, verify, opts);
    if (asym->parsed())
      return run_asymptotic(form_text, p, n_range, theta, center_text, freeze, opts);
    if (quadric->parsed()) return run_quadric(form_text, b_range, opts);
  } catch (const tqc::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return exit_parse;
  } catch (const tqc::not_admissible_error& e) {
    std::cerr << "inadmissible: " << e.what() << "\n";
    return exit_inadmissible;
  } catch (const tqc::budget_error& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return exit_budget;
  } catch (const tqc::pole_error& e) {
    std::cerr << "domain: " << e.what() << "\n";
    return exit_domain;
  } catch (const tqc::non_unit_error& e) {
    std::cerr << "domain: " << e.what() << "\n";
    return exit_domain;
  } catch (const std::domain_error& e) {
    std::cerr << "domain: " << e.what() << "\n";
    return exit_domain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_ok;
}

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "innerbern/bernstein.hpp"
#include "innerbern/combination.hpp"
#include "innerbern/experiments.hpp"
#include "innerbern/modifier.hpp"
#include "innerbern/modulus.hpp"
#include "innerbern/operator.hpp"

namespace fs = std::filesystem;
using namespace innerbern;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(const char* id, const char* title, const std::function<Outcome()>& check,
            double budget_seconds = 0.0) {
  const auto start = Clock::now();
  Outcome out;
  try {
    out = check();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (budget_seconds > 0.0 && seconds > budget_seconds) {
    out.pass = false;
    out.detail += " over time budget";
  }
  if (!out.pass) ++failures;
  std::printf("%s %s %s [%.2fs] %s\n", id, out.pass ? "PASS" : "FAIL", title, seconds,
              out.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cli(const std::string& args, const fs::path& capture) {
  const std::string cmd = std::string(INNERBERN_CLI) + " " + args + " > " + capture.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const Grid& full_grid(double xi) {
  static std::vector<std::pair<double, Grid>> cache;
  for (const auto& [key, grid] : cache) {
    if (key == xi) return grid;
  }
  cache.emplace_back(xi, chebyshev_grid(201, xi));
  return cache.back().second;
}

Outcome psi_exactness() {
  const fs::path dir = fs::temp_directory_path() / "innerbern_ac1";
  fs::create_directories(dir);
  const int status = run_cli("psi --r 1", dir / "psi.txt");
  const std::string text = slurp(dir / "psi.txt");
  fs::remove_all(dir);
  const bool printed = status == 0 && text.find("a_1,10\na_2,-15\na_3,6\n") != std::string::npos &&
                       text.find("determinant_matches,true") != std::string::npos;
  bool dets = true;
  std::string values;
  for (int r = 1; r <= 4; ++r) {
    const Rational det = exact_determinant(smoother_system(r));
    dets = dets && det == smoother_determinant_formula(r);
    values += (r > 1 ? "," : "") + det.str();
  }
  const bool known = exact_determinant(smoother_system(1)) == 2 &&
                     exact_determinant(smoother_system(2)) == 288 &&
                     exact_determinant(smoother_system(3)) == Rational(2 * 6 * 24 * 120 * 720);
  return {printed && dets && known, "cli_coeffs=" + std::string(printed ? "10,-15,6" : "wrong") +
                                        " determinants=" + values};
}

Outcome psi_boundary() {
  bool ok = true;
  for (int r = 1; r <= 6; ++r) {
    const auto p = solve_smoother(r);
    ok = ok && p.exact_derivative(0, Rational(1)) == 1;
    for (int i = 1; i <= 2 * r; ++i) ok = ok && p.exact_derivative(i, Rational(1)) == 0;
  }
  return {ok, "r=1..6 exact"};
}

Outcome combination_conditions() {
  double worst_sum = 0.0, worst_power = 0.0, worst_moment = 0.0;
  for (int q = 2; q <= 6; ++q) {
    for (int base : {64, 256}) {
      const auto s = solve_coefficients(base, q);
      double sum = 0.0;
      for (int i = 0; i < q; ++i) sum += s.coefficients()[static_cast<std::size_t>(i)];
      worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
      for (int k = 1; k < q; ++k) {
        double m = 0.0;
        for (int i = 0; i < q; ++i) {
          m += s.coefficients()[static_cast<std::size_t>(i)] * std::pow(s.degree(i), -k);
        }
        worst_power = std::max(worst_power, std::abs(m));
        for (int j = 0; j <= 20; ++j) {
          worst_moment = std::max(worst_moment, std::abs(moment_residual(s, k, j / 20.0)));
        }
      }
    }
  }
  return {worst_sum <= 1e-12 && worst_power <= 1e-12 && worst_moment <= 1e-10,
          "sum_err=" + fmt(worst_sum) + " power_err=" + fmt(worst_power) +
              " moment_err=" + fmt(worst_moment)};
}

Outcome reproduction() {
  double worst = 0.0;
  bool outside_identical = true;
  for (int r = 1; r <= 3; ++r) {
    for (int q = 1; q <= 3; ++q) {
      for (int degree = 0; degree <= std::min(q, r); ++degree) {
        const WeightParams w(0.4, 1.0);
        const FunctionHandle p([degree](double t) { return std::pow(t - 0.2, degree) + 0.5 * t; });
        const ModifiedOperator op(OperatorConfig{128, q, r, w, 0.0}, p);
        for (double x : full_grid(0.4).points) worst = std::max(worst, op.weighted_error(x));
      }
    }
    const WeightParams w(0.4, 1.0);
    const auto f = preset_function("cusp", w, 0.5);
    const SingularModifier m(256, w, r, f);
    const auto k = m.knots();
    for (double x : full_grid(0.4).points) {
      if (x <= k[0] || x >= k[3]) outside_identical = outside_identical && modified_eval(m, f, x) == f(x);
    }
  }
  return {worst <= 1e-9 && outside_identical,
          "max_weighted_error=" + fmt(worst) + " outside_band_identical=" +
              (outside_identical ? "yes" : "no")};
}

std::vector<int> sweep(int lo, int hi) {
  std::vector<int> n;
  for (int v = lo; v <= hi; v *= 2) n.push_back(v);
  return n;
}

Outcome operator_lemma(bool derivative) {
  const WeightParams w(0.5, 1.0);
  const Grid& grid = full_grid(0.5);
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto f = random_piecewise_smooth(seed, w);
    std::vector<double> ratios;
    for (int n : sweep(64, 1024)) {
      const ModifiedOperator op(OperatorConfig{n, 2, 2, w, 0.0}, f);
      ratios.push_back(derivative ? derivative_ratio(op, grid) : stability_ratio(op, grid));
    }
    worst = std::max(worst, boundedness("", "", "", ratios).growth);
  }
  return {worst <= 2.0, "max_growth=" + fmt(worst) + " over 5 seeds"};
}

Outcome direct_smooth() {
  bool ok = true;
  std::string detail;
  for (double lambda : {0.0, 1.0}) {
    ExperimentConfig cfg;
    cfg.preset = "smooth";
    cfg.r = 2;
    cfg.q = 2;
    cfg.lambda = lambda;
    const auto rep = run_direct(cfg);
    const double slope = rep.rate ? rep.rate->slope : NAN;
    ok = ok && slope >= 1.6 && slope <= 2.4;
    cfg.q = 1;
    const auto single = run_direct(cfg);
    detail += "lambda=" + fmt(lambda) + " slope=" + fmt(slope) +
              " (q=1 for reference: " + fmt(single.rate ? single.rate->slope : NAN) + ") ";
  }
  return {ok, detail};
}

Outcome equivalence_cusp() {
  bool ok = true;
  std::string detail;
  for (double xi : {0.3, 0.5}) {
    ExperimentConfig cfg;
    cfg.preset = "cusp";
    cfg.beta = 0.5;
    cfg.xi = xi;
    cfg.alpha = 1.0;
    cfg.lambda = 0.0;
    cfg.r = 2;
    cfg.q = 2;
    const auto rep = run_equivalence(cfg);
    const double se = rep.slope_err.value_or(NAN);
    const double sm = rep.slope_mod.value_or(NAN);
    const double gap = rep.gap.value_or(INFINITY);
    ok = ok && gap <= 0.3 && se > 0 && se < cfg.r && sm > 0 && sm < cfg.r;
    detail += "xi=" + fmt(xi) + " slope_err=" + fmt(se) + " slope_mod=" + fmt(sm) + " gap=" + fmt(gap) + " ";
  }
  return {ok, detail};
}

Outcome band_mass() {
  double worst = 0.0;
  for (auto [xi, alpha] : {std::pair{0.5, 1.0}, std::pair{0.3, 2.0}}) {
    const WeightParams w(xi, alpha);
    std::vector<double> ratios;
    for (int n : sweep(64, 4096)) ratios.push_back(band_mass_ratio(n, w, full_grid(xi)));
    worst = std::max(worst, boundedness("", "", "", ratios).growth);
  }
  return {worst <= 2.0, "max_growth=" + fmt(worst)};
}

Outcome modulus_correctness() {
  double poly = 0.0;
  for (int r = 1; r <= 4; ++r) {
    for (int d = 0; d < r; ++d) {
      const FunctionHandle p([d](double t) { return std::pow(t, d) + 0.25; });
      for (double lambda : {0.0, 1.0}) {
        poly = std::max(poly, weighted_modulus(ModulusQuery{p, WeightParams(0.5, 1.0),
                                                            SmoothnessParams(lambda, r), 1.0 / (4 * r)}));
      }
    }
  }
  const FunctionHandle id([](double t) { return t; });
  double rel = 0.0;
  for (double t : {0.01, 0.05, 0.1, 0.25}) {
    const double omega = weighted_modulus(ModulusQuery{id, WeightParams(0.5, 1.0), SmoothnessParams(0, 1), t});
    rel = std::max(rel, std::abs(omega - 0.5 * t) / (0.5 * t));
  }
  bool ordered = true;
  for (const char* name : {"smooth", "cusp", "jump_cusp", "poly_3"}) {
    for (double lambda : {0.0, 0.5, 1.0}) {
      for (int r : {1, 2, 3}) {
        const WeightParams w(0.3, 1.0);
        const ModulusQuery q{preset_function(name, w, 0.5), w, SmoothnessParams(lambda, r), 0.5 / (4 * r)};
        ordered = ordered && main_part_modulus(q) <= weighted_modulus(q);
      }
    }
  }
  return {poly <= 1e-10 && rel <= 0.02 && ordered,
          "poly_max=" + fmt(poly) + " identity_rel_err=" + fmt(rel) +
              " main_part_le_full=" + (ordered ? "yes" : "no")};
}

Outcome determinism() {
  const fs::path dir = fs::temp_directory_path() / "innerbern_ac11";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::vector<std::string> commands{
      "psi --r 3",
      "coeffs --q 4",
      "coeffs --q 3 --multipliers 1,2,4",
      "approx --preset cusp --n 256 --x 0.7 --beta 0.5",
      "modulus --preset jump_cusp --t 0.1 --xi 0.4",
      "direct --preset cusp --n-list 64,128,256",
      "equivalence --preset cusp --n-list 64,128,256",
      "lemmas --n-list 64,128 --seed 11"};
  bool ok = true;
  std::string detail;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    std::string outputs[2];
    for (int run = 0; run < 2; ++run) {
      const fs::path table = dir / ("table" + std::to_string(run) + ".csv");
      const fs::path console = dir / ("console" + std::to_string(run) + ".txt");
      const int status = run_cli(commands[i] + " --out " + table.string(), console);
      outputs[run] = std::to_string(status) + "\n" + slurp(table) + slurp(console);
      if (status != 0) {
        ok = false;
        detail += "'" + commands[i] + "' exit " + std::to_string(status) + " ";
      }
    }
    if (outputs[0] != outputs[1]) {
      ok = false;
      detail += "'" + commands[i] + "' differs ";
    }
  }
  fs::remove_all(dir);
  return {ok, std::to_string(commands.size()) + " commands " + (ok ? "byte-identical" : detail)};
}

}  // namespace

int main() {
  report("AC1", "psi exactness", psi_exactness, 1.0);
  report("AC2", "psi boundary conditions", psi_boundary);
  report("AC3", "combination conditions", combination_conditions);
  report("AC4", "polynomial reproduction", reproduction);
  report("AC5", "stability ratio bounded", [] { return operator_lemma(false); }, 30.0);
  report("AC6", "derivative ratio bounded", [] { return operator_lemma(true); });
  report("AC7", "direct rate, smooth", direct_smooth, 60.0);
  report("AC8", "equivalence, cusp", equivalence_cusp, 120.0);
  report("AC9", "band mass decay", band_mass);
  report("AC10", "modulus correctness", modulus_correctness);
  report("AC11", "CLI determinism", determinism);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}

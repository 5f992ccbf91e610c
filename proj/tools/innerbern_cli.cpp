// Command-line front end: exact smoother/coefficients, pointwise evaluation,
// moduli and the rate experiments. Tables go to --out (or stdout).
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "innerbern/combination.hpp"
#include "innerbern/csv.hpp"
#include "innerbern/errors.hpp"
#include "innerbern/experiments.hpp"
#include "innerbern/modifier.hpp"
#include "innerbern/modulus.hpp"
#include "innerbern/operator.hpp"

namespace ib = innerbern;

namespace {

enum ExitCode : int { kOk = 0, kInvalid = 2, kTooSmall = 3, kNoData = 4 };

struct Options {
  ib::ExperimentConfig exp;
  std::optional<int> q;
  int n = 64;
  double x = 0.25;
  std::optional<double> t;
  std::vector<int> multipliers;
};

std::string rational_text(const ib::Rational& v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

void run_psi(const Options& o, std::ostream& table, std::ostream& summary) {
  const int r = o.exp.r;
  const ib::SmootherPoly p = ib::solve_smoother(r);
  const ib::Rational det = ib::exact_determinant(ib::smoother_system(r));
  const ib::Rational formula = ib::smoother_determinant_formula(r);
  ib::csv::row(table, {"quantity", "value"});
  const auto coeffs = p.coefficients();
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    ib::csv::row(table, {"a_" + std::to_string(j + 1), rational_text(coeffs[j])});
  }
  ib::csv::row(table, {"determinant", rational_text(det)});
  ib::csv::row(table, {"product_formula", rational_text(formula)});
  ib::csv::row(table, {"determinant_matches", det == formula ? "true" : "false"});
  summary << "psi r=" << r << " powers " << p.lowest_power() << ".." << p.degree()
          << " determinant " << (det == formula ? "matches" : "DIFFERS FROM") << " product formula\n";
}

void run_coeffs(const Options& o, std::ostream& table, std::ostream& summary) {
  std::optional<std::vector<int>> m;
  if (!o.multipliers.empty()) m = o.multipliers;
  const ib::CombinationScheme s = ib::solve_coefficients(o.n, o.q.value_or(o.exp.r), m);
  ib::csv::row(table, {"i", "multiplier", "degree", "coefficient"});
  double sum = 0.0;
  for (int i = 0; i < s.q(); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    sum += s.coefficients()[idx];
    ib::csv::row(table, {std::to_string(i + 1), std::to_string(s.multipliers()[idx]),
                         std::to_string(s.degree(i)), ib::csv::real(s.coefficients()[idx])});
  }
  summary << "q=" << s.q() << " sum=" << ib::csv::real(sum)
          << " abs_sum=" << ib::csv::real(ib::coefficient_abs_sum(s)) << '\n';
}

void run_approx(const Options& o, std::ostream& table, std::ostream& summary) {
  const ib::FunctionHandle f = ib::experiment_function(o.exp);
  const ib::ModifiedOperator op(ib::operator_config(o.exp, o.n), f);
  const double value = op(o.x);
  const double err = op.weighted_error(o.x);
  ib::csv::row(table, {"n", "x", "f", "modified", "approx", "weighted_error"});
  ib::csv::row(table, {std::to_string(o.n), ib::csv::real(o.x), ib::csv::real(f(o.x)),
                       ib::csv::real(op.modified(o.x)), ib::csv::real(value), ib::csv::real(err)});
  summary << "n=" << o.n << " x=" << ib::csv::real(o.x) << " weighted_error=" << ib::csv::real(err)
          << '\n';
}

void run_modulus(const Options& o, std::ostream& table, std::ostream& summary) {
  const ib::ModulusQuery query{ib::experiment_function(o.exp), ib::weight_of(o.exp),
                               ib::SmoothnessParams(o.exp.lambda, o.exp.r),
                               o.t.value_or(1.0 / (4.0 * o.exp.r))};
  ib::validate(query);
  const double omega = ib::weighted_modulus(query);
  const double main_part = ib::main_part_modulus(query);
  ib::csv::row(table, {"t", "omega", "main_part"});
  ib::csv::row(table, {ib::csv::real(query.t), ib::csv::real(omega), ib::csv::real(main_part)});
  summary << "t=" << ib::csv::real(query.t) << " omega=" << ib::csv::real(omega)
          << " main_part=" << ib::csv::real(main_part) << '\n';
}

template <class Report>
void emit(const Report& report, std::ostream& table, std::ostream& summary) {
  ib::write_csv(table, report);
  ib::write_summary(summary, report);
}

int dispatch(const std::string& command, Options& o) {
  if (o.q) o.exp.q = *o.q;
  else o.exp.q = o.exp.r;

  std::ofstream file;
  if (!o.exp.output_path.empty()) {
    file.open(o.exp.output_path, std::ios::binary);
    if (!file) throw ib::InvalidConfig("cannot open output file " + o.exp.output_path);
  }
  std::ostream& table = file.is_open() ? static_cast<std::ostream&>(file) : std::cout;
  std::ostream& summary = file.is_open() ? std::cout : std::cerr;

  if (command == "psi") run_psi(o, table, summary);
  else if (command == "coeffs") run_coeffs(o, table, summary);
  else if (command == "approx") run_approx(o, table, summary);
  else if (command == "modulus") run_modulus(o, table, summary);
  else if (command == "direct") emit(ib::run_direct(o.exp), table, summary);
  else if (command == "equivalence") emit(ib::run_equivalence(o.exp), table, summary);
  else if (command == "lemmas") emit(ib::run_lemma_diagnostics(o.exp), table, summary);
  table.flush();
  if (!table) throw ib::Error("write failed");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Modified Bernstein combinations for functions with an inner singularity"};
  app.set_config("--config", "", "flat key=value file; command-line flags override it");
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  auto& e = o.exp;
  app.add_option("--preset", e.preset, "smooth, poly_K, cusp or jump_cusp")->capture_default_str();
  app.add_option("--xi", e.xi, "singularity location")->capture_default_str();
  app.add_option("--alpha", e.alpha, "weight exponent")->capture_default_str();
  app.add_option("--beta", e.beta, "singular preset exponent")->capture_default_str();
  app.add_option("--lambda", e.lambda, "step weight exponent in [0,1]")->capture_default_str();
  app.add_option("--r", e.r, "modifier order")->capture_default_str();
  app.add_option("--q", o.q, "combination terms (default r)");
  app.add_option("--n-list", e.n_list, "increasing degrees, comma separated")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--grid", e.grid_size, "evaluation grid size")->capture_default_str();
  app.add_option("--out", e.output_path, "table destination (default stdout)");
  app.add_option("--seed", e.seed, "seed for random test functions")->capture_default_str();
  app.add_option("--n", o.n, "base degree for coeffs/approx")->capture_default_str();
  app.add_option("--x", o.x, "evaluation point for approx")->capture_default_str();
  app.add_option("--t", o.t, "modulus step bound (default 1/(4r))");
  app.add_option("--multipliers", o.multipliers, "degree multipliers, comma separated")
      ->delimiter(',');

  const std::vector<std::pair<const char*, const char*>> commands{
      {"psi", "exact smoothstep coefficients and determinant check"},
      {"coeffs", "combination coefficients"},
      {"approx", "evaluate the operator at one point"},
      {"modulus", "weighted modulus of smoothness at one t"},
      {"direct", "error sweep over n and its fitted rate"},
      {"equivalence", "error rate against modulus rate"},
      {"lemmas", "boundedness diagnostics"}};
  for (const auto& [name, help] : commands) app.add_subcommand(name, help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& err) {
    return app.exit(err);
  } catch (const CLI::CallForAllHelp& err) {
    return app.exit(err);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return kInvalid;
  }

  try {
    return dispatch(app.get_subcommands().front()->get_name(), o);
  } catch (const ib::DomainTooSmall& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kTooSmall;
  } catch (const ib::InsufficientData& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kNoData;
  } catch (const ib::Error& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kInvalid;
  }
}

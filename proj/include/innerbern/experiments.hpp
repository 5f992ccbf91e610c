#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "innerbern/core.hpp"
#include "innerbern/operator.hpp"

namespace innerbern {

struct ExperimentConfig {
  std::string preset = "cusp";
  double xi = 0.5;
  double alpha = 1.0;
  double beta = 0.5;
  double lambda = 0.0;
  int r = 2;
  int q = 2;
  std::vector<int> n_list{64, 128, 256, 512, 1024, 2048};
  int grid_size = 201;
  std::string output_path;
  std::uint64_t seed = 1;
};

/// Throws InvalidConfig, or DomainTooSmall when some n in n_list cannot host
/// the modifier.
void validate(const ExperimentConfig& cfg);

[[nodiscard]] WeightParams weight_of(const ExperimentConfig& cfg);
[[nodiscard]] OperatorConfig operator_config(const ExperimentConfig& cfg, int n);
[[nodiscard]] FunctionHandle experiment_function(const ExperimentConfig& cfg);
/// Chebyshev-Lobatto grid of grid_size points without the guard band at xi.
[[nodiscard]] Grid experiment_grid(const ExperimentConfig& cfg);

/// Seeded piecewise-smooth test function: 2-4 pieces of quadratic-plus-sine
/// form, with a possible jump at xi but no breakpoint in [xi - 0.1, xi), and
/// scaled so that its weighted sup on a fine grid is 1.
[[nodiscard]] FunctionHandle random_piecewise_smooth(std::uint64_t seed, const WeightParams& w);

/// n^{-1/2} phi(x)^{-lambda} delta_n(x); +inf where phi = 0 and lambda > 0.
[[nodiscard]] double theorem_scale(int n, double lambda, double x);

using ScaledValue = std::pair<double, double>;  // (scale, value)

struct RateReport {
  std::vector<ScaledValue> pairs;  // the pairs used in the fit
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
};

/// Least-squares line through (log scale, log value). Exact zeros are dropped;
/// negative values or non-positive scales throw InvalidConfig; fewer than two
/// usable pairs throw InsufficientData.
RateReport rate_fit(std::span<const ScaledValue> pairs);

struct DirectRow {
  int n;
  double x;
  double error;
  double scale;
};

struct DirectReport {
  std::vector<DirectRow> rows;         // sorted by n, then x
  std::vector<int> n_values;
  std::vector<double> sup_error;       // E(n)
  std::vector<double> argmax_x;        // where E(n) is attained
  std::vector<double> paired_scale;    // theorem scale at argmax_x
  bool exact_reproduction = false;     // every E(n) <= 1e-9
  std::optional<RateReport> rate;
};

DirectReport run_direct(const ExperimentConfig& cfg);

struct EquivalenceReport {
  DirectReport direct;
  std::vector<ScaledValue> modulus;    // (t, omega(t))
  std::optional<RateReport> modulus_rate;
  bool degenerate = false;             // both sides vanish identically
  std::optional<double> slope_err;
  std::optional<double> slope_mod;
  std::optional<double> gap;           // |slope_err - slope_mod|
};

EquivalenceReport run_equivalence(const ExperimentConfig& cfg);

struct DiagnosticRow {
  std::string lemma;
  std::string subject;
  std::string param;
  int n;
  double value;
};

struct DiagnosticVerdict {
  std::string lemma;
  std::string subject;
  std::string param;
  double constant;    // ratio at the smallest n
  double growth;      // max ratio / constant
  bool bounded;       // growth <= 2
};

struct LemmaReport {
  std::vector<DiagnosticRow> rows;
  std::vector<DiagnosticVerdict> verdicts;
};

/// Boundedness verdict for one ratio series ordered by increasing n.
DiagnosticVerdict boundedness(std::string lemma, std::string subject, std::string param,
                              std::span<const double> ratios);

/// Individual ratio computations behind run_lemma_diagnostics.
[[nodiscard]] double moment_ratio(int n, double gamma, const Grid& grid);
[[nodiscard]] double band_mass_ratio(int n, const WeightParams& w, const Grid& grid);
[[nodiscard]] double stability_ratio(const ModifiedOperator& op, const Grid& grid);
[[nodiscard]] double derivative_ratio(const ModifiedOperator& op, const Grid& grid);
[[nodiscard]] double patch_error_ratio(int n, const WeightParams& w, int r, double lambda,
                                       const FunctionHandle& g);

LemmaReport run_lemma_diagnostics(const ExperimentConfig& cfg);

void write_csv(std::ostream& out, const DirectReport& report);
void write_csv(std::ostream& out, const EquivalenceReport& report);
void write_csv(std::ostream& out, const LemmaReport& report);

void write_summary(std::ostream& out, const DirectReport& report);
void write_summary(std::ostream& out, const EquivalenceReport& report);
void write_summary(std::ostream& out, const LemmaReport& report);

}  // namespace innerbern

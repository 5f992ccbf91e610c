#include "innerbern/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <string>

#include "innerbern/bernstein.hpp"
#include "innerbern/csv.hpp"
#include "innerbern/errors.hpp"
#include "innerbern/modifier.hpp"
#include "innerbern/modulus.hpp"

namespace innerbern {
namespace {

constexpr double kExactReproduction = 1e-9;
constexpr double kZeroModulus = 1e-10;
constexpr double kGrowthLimit = 2.0;
constexpr int kRandomSubjects = 5;
constexpr int kModulusHalvings = 6;

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

struct Piece {
  double c0, c1, c2, amplitude, frequency, phase;
  [[nodiscard]] double operator()(double x) const {
    return c0 + x * (c1 + x * c2) + amplitude * std::sin(frequency * x + phase);
  }
};

double weighted_sup(const WeightParams& w, const FunctionHandle& f, const Grid& grid) {
  double best = 0.0;
  for (double x : grid.points) best = std::max(best, weight_eval(w, x) * std::abs(f(x)));
  return best;
}

std::string num(double v) { return csv::real(v); }

}  // namespace

void validate(const ExperimentConfig& cfg) {
  if (cfg.grid_size < 51) throw InvalidConfig("grid size must be >= 51");
  if (cfg.r < 1 || cfg.r > kMaxSmootherOrder) {
    throw InvalidConfig("r must lie in [1," + std::to_string(kMaxSmootherOrder) + "]");
  }
  if (cfg.q < 1) throw InvalidConfig("q must be >= 1");
  if (!(cfg.lambda >= 0.0 && cfg.lambda <= 1.0)) throw InvalidConfig("lambda must lie in [0,1]");
  if (cfg.n_list.empty()) throw InvalidConfig("n list is empty");
  for (std::size_t i = 1; i < cfg.n_list.size(); ++i) {
    if (cfg.n_list[i] <= cfg.n_list[i - 1]) throw InvalidConfig("n list must be strictly increasing");
  }
  const WeightParams w = weight_of(cfg);
  (void)experiment_function(cfg);
  for (int n : cfg.n_list) validate(operator_config(cfg, n));
  (void)w;
}

WeightParams weight_of(const ExperimentConfig& cfg) { return WeightParams(cfg.xi, cfg.alpha); }

OperatorConfig operator_config(const ExperimentConfig& cfg, int n) {
  return OperatorConfig{n, cfg.q, cfg.r, weight_of(cfg), cfg.lambda};
}

FunctionHandle experiment_function(const ExperimentConfig& cfg) {
  return preset_function(cfg.preset, weight_of(cfg), cfg.beta);
}

Grid experiment_grid(const ExperimentConfig& cfg) {
  return chebyshev_grid(static_cast<std::size_t>(cfg.grid_size), cfg.xi);
}

FunctionHandle random_piecewise_smooth(std::uint64_t seed, const WeightParams& w) {
  std::mt19937_64 rng(seed);
  const double xi = w.xi();
  std::vector<double> breaks;
  const int interior_breaks = 1 + static_cast<int>(rng() % 3);
  while (static_cast<int>(breaks.size()) < interior_breaks) {
    const double b = uniform(rng, 0.02, 0.98);
    // a break just left of xi would sit between the patch nodes
    if (b > xi - 0.1 && b < xi) continue;
    breaks.push_back(b);
  }
  if (rng() % 2 == 0) breaks.push_back(xi);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  std::vector<Piece> pieces;
  for (std::size_t i = 0; i <= breaks.size(); ++i) {
    pieces.push_back(Piece{uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1),
                           uniform(rng, -1, 1), uniform(rng, 1, 12),
                           uniform(rng, 0, 2 * std::numbers::pi)});
  }
  auto raw = [breaks, pieces](double x) {
    const auto idx = static_cast<std::size_t>(
        std::upper_bound(breaks.begin(), breaks.end(), x) - breaks.begin());
    return pieces[idx](x);
  };
  double norm = 0.0;
  for (int j = 0; j <= 2000; ++j) {
    const double x = j / 2000.0;
    norm = std::max(norm, weight_eval(w, x) * std::abs(raw(x)));
  }
  const double scale = norm > 0.0 ? 1.0 / norm : 1.0;
  return FunctionHandle([raw, scale](double x) { return scale * raw(x); });
}

double theorem_scale(int n, double lambda, double x) {
  const double p = phi(x);
  const double root = 1.0 / std::sqrt(static_cast<double>(n));
  if (lambda == 0.0) return root * (p + root);
  if (p == 0.0) return std::numeric_limits<double>::infinity();
  return root * std::pow(p, -lambda) * (p + root);
}

RateReport rate_fit(std::span<const ScaledValue> pairs) {
  RateReport report;
  for (const auto& [scale, value] : pairs) {
    if (!(scale > 0.0) || !std::isfinite(scale)) {
      throw InvalidConfig("rate fit needs positive finite scales");
    }
    if (!(value >= 0.0) || !std::isfinite(value)) {
      throw InvalidConfig("rate fit needs nonnegative finite values");
    }
    if (value == 0.0) continue;
    report.pairs.emplace_back(scale, value);
  }
  if (report.pairs.size() < 2) {
    throw InsufficientData("rate fit needs at least two nonzero values, got " +
                           std::to_string(report.pairs.size()));
  }
  const double count = static_cast<double>(report.pairs.size());
  double mx = 0.0, my = 0.0;
  for (const auto& [s, v] : report.pairs) {
    mx += std::log(s);
    my += std::log(v);
  }
  mx /= count;
  my /= count;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [s, v] : report.pairs) {
    const double dx = std::log(s) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(v) - my);
  }
  if (!(sxx > 0.0)) throw InsufficientData("rate fit needs at least two distinct scales");
  report.slope = sxy / sxx;
  report.intercept = my - report.slope * mx;
  for (const auto& [s, v] : report.pairs) {
    const double resid = std::log(v) - (report.intercept + report.slope * std::log(s));
    report.max_residual = std::max(report.max_residual, std::abs(resid));
  }
  return report;
}

DirectReport run_direct(const ExperimentConfig& cfg) {
  validate(cfg);
  const FunctionHandle f = experiment_function(cfg);
  const Grid grid = experiment_grid(cfg);
  DirectReport report;
  std::vector<ScaledValue> pairs;
  for (int n : cfg.n_list) {
    const ModifiedOperator op(operator_config(cfg, n), f);
    double best = -1.0;
    double best_x = 0.0;
    for (double x : grid.points) {
      const double err = op.weighted_error(x);
      report.rows.push_back(DirectRow{n, x, err, theorem_scale(n, cfg.lambda, x)});
      if (err > best) {
        best = err;
        best_x = x;
      }
    }
    report.n_values.push_back(n);
    report.sup_error.push_back(best);
    report.argmax_x.push_back(best_x);
    report.paired_scale.push_back(theorem_scale(n, cfg.lambda, best_x));
    pairs.emplace_back(report.paired_scale.back(), best);
  }
  report.exact_reproduction = std::all_of(report.sup_error.begin(), report.sup_error.end(),
                                          [](double e) { return e <= kExactReproduction; });
  if (!report.exact_reproduction) report.rate = rate_fit(pairs);
  return report;
}

EquivalenceReport run_equivalence(const ExperimentConfig& cfg) {
  EquivalenceReport report;
  report.direct = run_direct(cfg);
  const FunctionHandle f = experiment_function(cfg);
  const double t0 = 1.0 / (4.0 * cfg.r);
  bool modulus_zero = true;
  for (int j = 0; j < kModulusHalvings; ++j) {
    const double t = t0 / std::exp2(j);
    const ModulusQuery query{f, weight_of(cfg), SmoothnessParams(cfg.lambda, cfg.r), t};
    const double omega = weighted_modulus(query);
    report.modulus.emplace_back(t, omega);
    if (omega > kZeroModulus) modulus_zero = false;
  }
  if (!modulus_zero) report.modulus_rate = rate_fit(report.modulus);
  report.degenerate = report.direct.exact_reproduction && modulus_zero;
  if (report.direct.rate) report.slope_err = report.direct.rate->slope;
  if (report.modulus_rate) report.slope_mod = report.modulus_rate->slope;
  if (report.slope_err && report.slope_mod) report.gap = std::abs(*report.slope_err - *report.slope_mod);
  return report;
}

DiagnosticVerdict boundedness(std::string lemma, std::string subject, std::string param,
                              std::span<const double> ratios) {
  if (ratios.empty()) throw InsufficientData("no ratios to judge");
  const double constant = ratios.front();
  const double peak = *std::max_element(ratios.begin(), ratios.end());
  double growth = 1.0;
  if (constant > 0.0) {
    growth = peak / constant;
  } else if (peak > 0.0) {
    growth = std::numeric_limits<double>::infinity();
  }
  return DiagnosticVerdict{std::move(lemma), std::move(subject), std::move(param), constant,
                           growth, growth <= kGrowthLimit};
}

double moment_ratio(int n, double gamma, const Grid& grid) {
  double best = 0.0;
  for (double x : grid.points) {
    if (x < 0.1 || x > 0.9) continue;
    const double denom = std::pow(static_cast<double>(n), gamma / 2) * std::pow(phi(x), gamma);
    best = std::max(best, central_moment(n, gamma, x) / denom);
  }
  return best;
}

double band_mass_ratio(int n, const WeightParams& w, const Grid& grid) {
  const double centre = n * w.xi();
  const double radius = std::sqrt(static_cast<double>(n));
  const int lo = std::max(0, static_cast<int>(std::ceil(centre - radius - 1e-9)));
  const int hi = std::min(n, static_cast<int>(std::floor(centre + radius + 1e-9)));
  double best = 0.0;
  for (double x : grid.points) {
    double mass = 0.0;
    for (int k = lo; k <= hi; ++k) mass += basis_eval({n, k, x});
    best = std::max(best, weight_eval(w, x) * mass);
  }
  return best * std::pow(static_cast<double>(n), w.alpha() / 2);
}

double stability_ratio(const ModifiedOperator& op, const Grid& grid) {
  const auto& w = op.config().w;
  const double norm = weighted_sup(w, op.function(), grid);
  double best = 0.0;
  for (double x : grid.points) best = std::max(best, weight_eval(w, x) * std::abs(op(x)));
  return best / norm;
}

double derivative_ratio(const ModifiedOperator& op, const Grid& grid) {
  const auto& cfg = op.config();
  const double norm = weighted_sup(cfg.w, op.function(), grid);
  double best = 0.0;
  for (double x : grid.points) {
    best = std::max(best, weight_eval(cfg.w, x) * std::abs(op.derivative(cfg.r, x)));
  }
  return best / (std::pow(static_cast<double>(cfg.base_n), cfg.r) * norm);
}

double patch_error_ratio(int n, const WeightParams& w, int r, double lambda, const FunctionHandle& g) {
  const SingularModifier m(n, w, r, g);
  const auto& k = m.knots();
  constexpr int kPoints = 101;
  const double root = std::sqrt(static_cast<double>(n));
  double best = 0.0;
  for (int j = 0; j < kPoints; ++j) {
    const double x = k[1] + (k[2] - k[1]) * j / (kPoints - 1);
    const double bound = std::pow(delta_n(n, x) / (root * std::pow(phi(x), lambda)), r);
    best = std::max(best, weight_eval(w, x) * std::abs(g(x) - m.patch(x)) / bound);
  }
  return best;
}

LemmaReport run_lemma_diagnostics(const ExperimentConfig& cfg) {
  validate(cfg);
  const WeightParams w = weight_of(cfg);
  const Grid grid = experiment_grid(cfg);
  LemmaReport report;

  auto record = [&](const std::string& lemma, const std::string& subject, const std::string& param,
                    auto&& ratio_at) {
    std::vector<double> ratios;
    for (int n : cfg.n_list) {
      const double v = ratio_at(n);
      ratios.push_back(v);
      report.rows.push_back(DiagnosticRow{lemma, subject, param, n, v});
    }
    report.verdicts.push_back(boundedness(lemma, subject, param, ratios));
  };

  for (int gamma = 0; gamma <= 4; ++gamma) {
    record("L1", "binomial", "gamma=" + std::to_string(gamma),
           [&](int n) { return moment_ratio(n, gamma, grid); });
  }
  const std::string weight_param = "xi=" + num(cfg.xi) + ";alpha=" + num(cfg.alpha);
  record("L2", "weight", weight_param, [&](int n) { return band_mass_ratio(n, w, grid); });

  std::vector<std::pair<std::string, FunctionHandle>> subjects;
  subjects.emplace_back(cfg.preset, experiment_function(cfg));
  for (int i = 0; i < kRandomSubjects; ++i) {
    const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(i);
    subjects.emplace_back("random_seed=" + std::to_string(seed), random_piecewise_smooth(seed, w));
  }
  const std::string op_param = "r=" + std::to_string(cfg.r) + ";q=" + std::to_string(cfg.q);
  for (const auto& [name, f] : subjects) {
    std::vector<double> l3, l4;
    for (int n : cfg.n_list) {
      const ModifiedOperator op(operator_config(cfg, n), f);
      l3.push_back(derivative_ratio(op, grid));
      l4.push_back(stability_ratio(op, grid));
    }
    for (std::size_t i = 0; i < cfg.n_list.size(); ++i) {
      report.rows.push_back(DiagnosticRow{"L3", name, op_param, cfg.n_list[i], l3[i]});
    }
    report.verdicts.push_back(boundedness("L3", name, op_param, l3));
    for (std::size_t i = 0; i < cfg.n_list.size(); ++i) {
      report.rows.push_back(DiagnosticRow{"L4", name, op_param, cfg.n_list[i], l4[i]});
    }
    report.verdicts.push_back(boundedness("L4", name, op_param, l4));
  }

  const FunctionHandle g = preset_function("smooth", w, cfg.beta);
  record("L7", "smooth", "r=" + std::to_string(cfg.r) + ";lambda=" + num(cfg.lambda),
         [&](int n) { return patch_error_ratio(n, w, cfg.r, cfg.lambda, g); });
  return report;
}

void write_csv(std::ostream& out, const DirectReport& report) {
  csv::row(out, {"n", "x", "weighted_error", "scale"});
  for (const auto& row : report.rows) {
    csv::row(out, {std::to_string(row.n), num(row.x), num(row.error), num(row.scale)});
  }
}

void write_csv(std::ostream& out, const EquivalenceReport& report) {
  csv::row(out, {"series", "index", "scale", "value"});
  const auto& d = report.direct;
  for (std::size_t i = 0; i < d.n_values.size(); ++i) {
    csv::row(out, {"error", std::to_string(d.n_values[i]), num(d.paired_scale[i]), num(d.sup_error[i])});
  }
  for (std::size_t j = 0; j < report.modulus.size(); ++j) {
    csv::row(out, {"modulus", std::to_string(j), num(report.modulus[j].first),
                   num(report.modulus[j].second)});
  }
}

void write_csv(std::ostream& out, const LemmaReport& report) {
  csv::row(out, {"record", "lemma", "subject", "param", "n", "value"});
  for (const auto& r : report.rows) {
    csv::row(out, {"ratio", r.lemma, r.subject, r.param, std::to_string(r.n), num(r.value)});
  }
  for (const auto& v : report.verdicts) {
    csv::row(out, {"fitted_constant", v.lemma, v.subject, v.param, "", num(v.constant)});
    csv::row(out, {"max_growth", v.lemma, v.subject, v.param, "", num(v.growth)});
    csv::row(out, {"bounded", v.lemma, v.subject, v.param, "", v.bounded ? "1" : "0"});
  }
}

namespace {

void write_rate(std::ostream& out, const std::string& prefix, const std::optional<RateReport>& rate) {
  if (!rate) {
    out << prefix << "slope=none\n";
    return;
  }
  out << prefix << "slope=" << num(rate->slope) << '\n';
  out << prefix << "intercept=" << num(rate->intercept) << '\n';
  out << prefix << "max_residual=" << num(rate->max_residual) << '\n';
}

}  // namespace

void write_summary(std::ostream& out, const DirectReport& report) {
  for (std::size_t i = 0; i < report.n_values.size(); ++i) {
    out << "n=" << report.n_values[i] << " sup_error=" << num(report.sup_error[i])
        << " at_x=" << num(report.argmax_x[i]) << " scale=" << num(report.paired_scale[i]) << '\n';
  }
  out << "exact_reproduction=" << (report.exact_reproduction ? "true" : "false") << '\n';
  write_rate(out, "error_", report.rate);
}

void write_summary(std::ostream& out, const EquivalenceReport& report) {
  write_summary(out, report.direct);
  for (const auto& [t, omega] : report.modulus) {
    out << "t=" << num(t) << " modulus=" << num(omega) << '\n';
  }
  write_rate(out, "modulus_", report.modulus_rate);
  out << "degenerate=" << (report.degenerate ? "true" : "false") << '\n';
  out << "slope_gap=" << (report.gap ? num(*report.gap) : std::string("none")) << '\n';
}

void write_summary(std::ostream& out, const LemmaReport& report) {
  for (const auto& v : report.verdicts) {
    out << v.lemma << ' ' << v.subject << ' ' << v.param << " constant=" << num(v.constant)
        << " growth=" << num(v.growth) << ' ' << (v.bounded ? "bounded" : "GROWS") << '\n';
  }
}

}  // namespace innerbern

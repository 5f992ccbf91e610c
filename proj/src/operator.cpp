#include "innerbern/operator.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "innerbern/bernstein.hpp"
#include "innerbern/errors.hpp"

namespace innerbern {

void validate(const OperatorConfig& cfg) {
  if (cfg.base_n < 1) throw InvalidConfig("base_n must be >= 1");
  if (cfg.q < 1) throw InvalidConfig("q must be >= 1");
  if (cfg.r < 1 || cfg.r > kMaxSmootherOrder) {
    throw InvalidConfig("r must lie in [1," + std::to_string(kMaxSmootherOrder) + "]");
  }
  if (!(cfg.lambda >= 0.0 && cfg.lambda <= 1.0)) throw InvalidConfig("lambda must lie in [0,1]");
  (void)knots(cfg.base_n, cfg.w);
  (void)interp_nodes(cfg.base_n, cfg.w, cfg.r);
}

namespace {

const OperatorConfig& validated(const OperatorConfig& cfg) {
  validate(cfg);
  return cfg;
}

}  // namespace

ModifiedOperator::ModifiedOperator(const OperatorConfig& cfg, FunctionHandle f)
    : cfg_(validated(cfg)),
      f_(std::move(f)),
      modifier_(cfg.base_n, cfg.w, cfg.r, f_),
      scheme_(solve_coefficients(cfg.base_n, cfg.q)) {
  samples_.reserve(static_cast<std::size_t>(scheme_.q()));
  for (int i = 0; i < scheme_.q(); ++i) {
    const int degree = scheme_.degree(i);
    std::vector<double> row(static_cast<std::size_t>(degree) + 1);
    for (int k = 0; k <= degree; ++k) {
      row[static_cast<std::size_t>(k)] = modified_eval(modifier_, f_, static_cast<double>(k) / degree);
    }
    samples_.push_back(std::move(row));
  }
}

double ModifiedOperator::operator()(double x) const { return combo_apply(scheme_, samples_, x); }

double ModifiedOperator::derivative(int order, double x) const {
  long double acc = 0.0L;
  for (int i = 0; i < scheme_.q(); ++i) {
    acc += scheme_.coefficients()[static_cast<std::size_t>(i)] *
           bernstein_derivative(samples_[static_cast<std::size_t>(i)], order, x);
  }
  return static_cast<double>(acc);
}

double ModifiedOperator::weighted_error(double x) const {
  const double fx = f_(x);
  return weight_eval(cfg_.w, x) * std::abs(fx - (*this)(x));
}

double ModifiedOperator::modified(double x) const { return modified_eval(modifier_, f_, x); }

double approximate(const OperatorConfig& cfg, const FunctionHandle& f, double x) {
  return ModifiedOperator(cfg, f)(x);
}

double approximate_derivative(const OperatorConfig& cfg, const FunctionHandle& f, int r, double x) {
  return ModifiedOperator(cfg, f).derivative(r, x);
}

double weighted_error(const OperatorConfig& cfg, const FunctionHandle& f, double x) {
  return ModifiedOperator(cfg, f).weighted_error(x);
}

}  // namespace innerbern

#include "innerbern/core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "innerbern/errors.hpp"

namespace innerbern {

WeightParams::WeightParams(double xi, double alpha) : xi_(xi), alpha_(alpha) {
  if (!(xi > 0.0 && xi < 1.0)) {
    throw InvalidConfig("xi must lie in (0,1), got " + std::to_string(xi));
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw InvalidConfig("alpha must be positive, got " + std::to_string(alpha));
  }
}

SmoothnessParams::SmoothnessParams(double lambda, int r) : lambda_(lambda), r_(r) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw InvalidConfig("lambda must lie in [0,1], got " + std::to_string(lambda));
  }
  if (r < 1) {
    throw InvalidConfig("r must be >= 1, got " + std::to_string(r));
  }
}

FunctionHandle::FunctionHandle(Evaluator evaluator, std::optional<double> singular_at)
    : evaluator_(std::move(evaluator)), singular_at_(singular_at) {
  if (!evaluator_) throw InvalidConfig("empty function evaluator");
}

bool FunctionHandle::guarded(double x) const noexcept {
  return singular_at_ && std::abs(x - *singular_at_) <= kSingularityGuard;
}

double FunctionHandle::operator()(double x) const {
  if (guarded(x)) {
    throw SingularSample("function sampled at x=" + std::to_string(x) +
                         " inside the singularity guard");
  }
  return evaluator_(x);
}

namespace {

Grid filtered(std::vector<double> raw, std::optional<double> singular_at,
              double exclusion_radius) {
  Grid g;
  g.exclusion_radius = exclusion_radius;
  g.points.reserve(raw.size());
  for (double x : raw) {
    if (singular_at && std::abs(x - *singular_at) <= exclusion_radius) continue;
    if (!g.points.empty() && !(x > g.points.back())) continue;
    g.points.push_back(x);
  }
  return g;
}

}  // namespace

Grid uniform_grid(std::size_t count, std::optional<double> singular_at,
                  double exclusion_radius) {
  if (count < 2) throw InvalidConfig("grid needs at least 2 points");
  std::vector<double> raw(count);
  const double last = static_cast<double>(count - 1);
  for (std::size_t j = 0; j < count; ++j) raw[j] = static_cast<double>(j) / last;
  raw.back() = 1.0;
  return filtered(std::move(raw), singular_at, exclusion_radius);
}

Grid chebyshev_grid(std::size_t count, std::optional<double> singular_at,
                    double exclusion_radius) {
  if (count < 2) throw InvalidConfig("grid needs at least 2 points");
  std::vector<double> raw(count);
  const double last = static_cast<double>(count - 1);
  for (std::size_t j = 0; j < count; ++j) {
    raw[j] = 0.5 * (1.0 - std::cos(static_cast<double>(j) * std::numbers::pi / last));
  }
  raw.front() = 0.0;
  raw.back() = 1.0;
  return filtered(std::move(raw), singular_at, exclusion_radius);
}

double weight_eval(const WeightParams& w, double x) {
  const double d = std::abs(x - w.xi());
  if (d == 0.0) return 0.0;
  return std::pow(d, w.alpha());
}

double phi(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("phi is defined on [0,1], got x=" + std::to_string(x));
  }
  return std::sqrt(x * (1.0 - x));
}

double delta_n(int n, double x) {
  if (n < 1) throw InvalidConfig("delta_n needs n >= 1");
  return phi(x) + 1.0 / std::sqrt(static_cast<double>(n));
}

FunctionHandle preset_function(std::string_view name, const WeightParams& w, double beta) {
  const double xi = w.xi();
  if (name == "smooth") {
    return FunctionHandle([](double x) { return std::sin(std::numbers::pi * x); });
  }
  if (name.starts_with("poly_")) {
    const auto digits = name.substr(5);
    int k = -1;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || k < 0) {
      throw InvalidConfig("bad polynomial preset '" + std::string(name) + "'");
    }
    return FunctionHandle([k](double x) { return std::pow(x, k); });
  }
  if (name == "cusp" || name == "jump_cusp") {
    if (!(w.alpha() + beta > 0.0)) {
      throw InvalidConfig("singular preset needs alpha + beta > 0");
    }
    if (name == "cusp") {
      return FunctionHandle([xi, beta](double x) { return std::pow(std::abs(x - xi), beta); },
                            xi);
    }
    return FunctionHandle(
        [xi, beta](double x) {
          const double d = x - xi;
          const double m = std::pow(std::abs(d), beta);
          return d < 0.0 ? -m : m;
        },
        xi);
  }
  throw InvalidConfig("unknown preset '" + std::string(name) + "'");
}

long long snapped_floor(double v) {
  const double nearest = std::round(v);
  if (std::abs(v - nearest) <= 1e-9 * std::max(1.0, std::abs(v))) {
    return static_cast<long long>(nearest);
  }
  return static_cast<long long>(std::floor(v));
}

}  // namespace innerbern

#include "innerbern/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "innerbern/errors.hpp"

namespace innerbern {
namespace {

std::vector<double> binomial_row(int r) {
  std::vector<double> row(static_cast<std::size_t>(r) + 1, 1.0);
  for (int j = 1; j <= r; ++j) row[j] = row[j - 1] * (r - j + 1) / j;
  return row;
}

double checked_sample(const FunctionHandle& f, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw StencilOutOfRange("stencil point " + std::to_string(p) + " outside [0,1]");
  }
  if (f.guarded(p)) {
    throw StencilHitsSingularity("stencil point " + std::to_string(p) + " hits the singularity");
  }
  return f(p);
}

void check_difference_args(double h, int r) {
  if (!(h > 0.0)) throw InvalidConfig("difference step must be positive");
  if (r < 1) throw InvalidConfig("difference order must be >= 1");
}

/// |w(x) * diff(x)| maxed over count uniform points of [a, b] and the extra
/// points inside [a, b], skipping stencils that fail.
template <class Diff>
double region_sup(const WeightParams& w, double a, double b, int count,
                  const std::vector<double>& extra, Diff&& diff) {
  if (!(a <= b)) return 0.0;
  double best = 0.0;
  auto visit = [&](double x) {
    try {
      best = std::max(best, weight_eval(w, x) * std::abs(diff(x)));
    } catch (const StencilOutOfRange&) {
    } catch (const StencilHitsSingularity&) {
    }
  };
  for (int j = 0; j < count; ++j) visit((j + 1 == count) ? b : a + (b - a) * j / (count - 1));
  for (double x : extra) {
    if (x >= a && x <= b) visit(x);
  }
  return best;
}

// Singular functions make |w diff| peak where a stencil point approaches xi,
// and the peak is as sharp as the singularity. Uniform sampling misses it
// once h is small, so the search adds points on both sides of every base
// point whose stencil lands on xi, at geometrically shrinking distances, plus
// a geometric fan of points around xi itself.
constexpr int kApproachLevels = 40;
constexpr int kFanPoints = 48;
constexpr double kFanLow = 0.05;
constexpr double kFanHigh = 64.0;

void add_approaches(std::vector<double>& out, double centre, double h) {
  out.push_back(centre);
  for (int m = 1; m <= kApproachLevels; ++m) {
    const double d = h * std::exp2(-m);
    out.push_back(centre - d);
    out.push_back(centre + d);
  }
}

void add_fan(std::vector<double>& out, double xi, double step) {
  for (int j = 0; j < kFanPoints; ++j) {
    const double d = step * kFanLow * std::pow(kFanHigh / kFanLow, static_cast<double>(j) / (kFanPoints - 1));
    out.push_back(xi - d);
    out.push_back(xi + d);
  }
}

/// Base point x with x + offset * h * phi(x)^lambda = xi, by fixed-point
/// iteration (a contraction for the step sizes the modulus uses).
double crossing(double xi, double offset, double h, double lambda) {
  double x = xi;
  for (int it = 0; it < 60; ++it) {
    const double next = xi - offset * h * std::pow(phi(std::clamp(x, 0.0, 1.0)), lambda);
    if (next == x) break;
    x = next;
  }
  return x;
}

}  // namespace

double symmetric_diff(const FunctionHandle& f, double h, double lambda, int r, double x) {
  check_difference_args(h, r);
  const double step = h * std::pow(phi(x), lambda);
  const auto binom = binomial_row(r);
  double acc = 0.0;
  for (int k = 0; k <= r; ++k) {
    const double p = x + (0.5 * r - k) * step;
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    acc += sign * binom[k] * checked_sample(f, p);
  }
  return acc;
}

double forward_diff(const FunctionHandle& f, double h, int r, double x) {
  check_difference_args(h, r);
  const auto binom = binomial_row(r);
  double acc = 0.0;
  for (int k = 0; k <= r; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    acc += sign * binom[k] * checked_sample(f, x + (r - k) * h);
  }
  return acc;
}

double backward_diff(const FunctionHandle& f, double h, int r, double x) {
  check_difference_args(h, r);
  const auto binom = binomial_row(r);
  double acc = 0.0;
  for (int k = 0; k <= r; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    acc += sign * binom[k] * checked_sample(f, x - k * h);
  }
  return acc;
}

void validate(const ModulusQuery& q) {
  const int r = q.s.r();
  if (!(q.t > 0.0)) throw InvalidConfig("modulus needs t > 0");
  if (q.t > 1.0 / (4.0 * r) * (1.0 + 1e-12)) {
    throw InvalidConfig("modulus needs t <= 1/(4r) = " + std::to_string(1.0 / (4.0 * r)));
  }
  if (q.h_samples < 8 || q.x_samples < 8) throw InvalidConfig("modulus sample counts must be >= 8");
}

std::vector<double> modulus_steps(const ModulusQuery& q) {
  validate(q);
  std::vector<double> steps(static_cast<std::size_t>(q.h_samples));
  for (int j = 0; j < q.h_samples; ++j) {
    steps[static_cast<std::size_t>(j)] = q.t * std::exp2(-8.0 * j / (q.h_samples - 1));
  }
  return steps;
}

ModulusTerms modulus_terms(const ModulusQuery& q, double h) {
  const int r = q.s.r();
  const double lambda = q.s.lambda();
  const double xi = q.w.xi();
  const double edge = std::min(16.0 * h * h, 1.0);

  std::vector<double> inner, left, right;
  add_fan(inner, xi, h * std::pow(phi(xi), lambda));
  for (int k = 0; k <= r; ++k) {
    const double offset = 0.5 * r - k;
    if (offset != 0.0) add_approaches(inner, crossing(xi, offset, h, lambda), h);
    add_approaches(left, xi - (r - k) * h, h);
    add_approaches(right, xi + k * h, h);
  }

  ModulusTerms terms;
  terms.interior = region_sup(q.w, edge, 1.0 - edge, q.x_samples, inner, [&](double x) {
    return symmetric_diff(q.f, h, lambda, r, x);
  });
  terms.left = region_sup(q.w, 0.0, edge, q.x_samples, left,
                          [&](double x) { return forward_diff(q.f, h, r, x); });
  terms.right = region_sup(q.w, 1.0 - edge, 1.0, q.x_samples, right,
                           [&](double x) { return backward_diff(q.f, h, r, x); });
  return terms;
}

double weighted_modulus(const ModulusQuery& q) {
  double best = 0.0;
  for (double h : modulus_steps(q)) {
    const auto t = modulus_terms(q, h);
    best = std::max({best, t.interior, t.left, t.right});
  }
  return best;
}

double main_part_modulus(const ModulusQuery& q) {
  double best = 0.0;
  for (double h : modulus_steps(q)) best = std::max(best, modulus_terms(q, h).interior);
  return best;
}

}  // namespace innerbern

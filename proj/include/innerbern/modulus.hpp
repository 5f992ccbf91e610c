#pragma once

#include "innerbern/core.hpp"

namespace innerbern {

/// sum_k (-1)^k C(r,k) f(x + (r/2 - k) h phi^lambda(x))
[[nodiscard]] double symmetric_diff(const FunctionHandle& f, double h, double lambda, int r,
                                    double x);
/// sum_k (-1)^k C(r,k) f(x + (r - k) h)
[[nodiscard]] double forward_diff(const FunctionHandle& f, double h, int r, double x);
/// sum_k (-1)^k C(r,k) f(x - k h)
[[nodiscard]] double backward_diff(const FunctionHandle& f, double h, int r, double x);

struct ModulusQuery {
  FunctionHandle f;
  WeightParams w;
  SmoothnessParams s;
  double t;
  int h_samples = 32;
  int x_samples = 400;
};

/// The three weighted sups of one step h. Each region is sampled at x_samples
/// uniform points, plus points closing in on every base point whose stencil
/// lands on xi (where a singular f makes the difference peak).
struct ModulusTerms {
  double interior = 0.0;  // symmetric differences on [16h^2, 1 - 16h^2]
  double left = 0.0;      // forward differences on [0, 16h^2]
  double right = 0.0;     // backward differences on [1 - 16h^2, 1]
};

/// Throws InvalidConfig unless 0 < t <= 1/(4r) and both sample counts >= 8.
void validate(const ModulusQuery& q);

/// Step sizes actually searched: h_samples geometric points from t down to
/// t/256, largest first.
[[nodiscard]] std::vector<double> modulus_steps(const ModulusQuery& q);

[[nodiscard]] ModulusTerms modulus_terms(const ModulusQuery& q, double h);

/// Discretised weighted modulus: max over the step grid of the largest of the
/// three region sups. Stencils that leave [0,1] or touch the singularity
/// guard are skipped.
[[nodiscard]] double weighted_modulus(const ModulusQuery& q);

/// Interior (main-part) term only, over the same grids.
[[nodiscard]] double main_part_modulus(const ModulusQuery& q);

}  // namespace innerbern

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

namespace innerbern {

/// Evaluating a FunctionHandle this close to its singularity is an error.
inline constexpr double kSingularityGuard = 1e-12;
/// Default radius around the singularity that grids leave out.
inline constexpr double kDefaultExclusionRadius = 1e-9;

/// Interior singularity xi in (0,1) and weight exponent alpha > 0 of
/// w(x) = |x - xi|^alpha.
class WeightParams {
 public:
  WeightParams(double xi, double alpha);

  [[nodiscard]] double xi() const noexcept { return xi_; }
  [[nodiscard]] double alpha() const noexcept { return alpha_; }

 private:
  double xi_;
  double alpha_;
};

/// Step-weight exponent lambda in [0,1] and difference order r >= 1.
class SmoothnessParams {
 public:
  SmoothnessParams(double lambda, int r);

  [[nodiscard]] double lambda() const noexcept { return lambda_; }
  [[nodiscard]] int r() const noexcept { return r_; }

 private:
  double lambda_;
  int r_;
};

/// A real function on [0,1], optionally undefined at one interior point.
///
/// Calls within kSingularityGuard of the singular point throw SingularSample;
/// everything else is forwarded to the evaluator unchanged.
class FunctionHandle {
 public:
  using Evaluator = std::function<double(double)>;

  explicit FunctionHandle(Evaluator evaluator,
                          std::optional<double> singular_at = std::nullopt);

  double operator()(double x) const;

  [[nodiscard]] std::optional<double> singular_at() const noexcept {
    return singular_at_;
  }
  /// True when x lies inside the guard band and may not be evaluated.
  [[nodiscard]] bool guarded(double x) const noexcept;

 private:
  Evaluator evaluator_;
  std::optional<double> singular_at_;
};

struct Grid {
  std::vector<double> points;
  double exclusion_radius = kDefaultExclusionRadius;
};

/// count equispaced points on [0,1] (endpoints included), minus the points
/// within exclusion_radius of singular_at.
Grid uniform_grid(std::size_t count, std::optional<double> singular_at = std::nullopt,
                  double exclusion_radius = kDefaultExclusionRadius);

/// Chebyshev-Lobatto points (1 - cos(j*pi/(count-1)))/2, ascending, with the
/// same exclusion rule as uniform_grid.
Grid chebyshev_grid(std::size_t count, std::optional<double> singular_at = std::nullopt,
                    double exclusion_radius = kDefaultExclusionRadius);

[[nodiscard]] double weight_eval(const WeightParams& w, double x);

/// sqrt(x(1-x)); throws DomainError outside [0,1].
[[nodiscard]] double phi(double x);

/// phi(x) + n^{-1/2}.
[[nodiscard]] double delta_n(int n, double x);

/// Test corpus: "smooth" (sin(pi x)), "poly_k" (x^k), "cusp" (|x-xi|^beta)
/// and "jump_cusp" (sign(x-xi)|x-xi|^beta). The last two are singular at xi
/// and need alpha + beta > 0.
FunctionHandle preset_function(std::string_view name, const WeightParams& w,
                               double beta);

/// floor(v), except that v within 1e-9 of an integer counts as that integer.
/// Keeps grid-index formulas such as floor(n*xi - i) stable when n*xi lands a
/// rounding error below an integer.
[[nodiscard]] long long snapped_floor(double v);

}  // namespace innerbern

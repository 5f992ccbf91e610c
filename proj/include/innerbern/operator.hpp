#pragma once

#include <vector>

#include "innerbern/combination.hpp"
#include "innerbern/core.hpp"
#include "innerbern/modifier.hpp"

namespace innerbern {

struct OperatorConfig {
  int base_n;
  int q;  // combination terms
  int r;  // modifier order: patch degree and smoother smoothness
  WeightParams w;
  double lambda = 0.0;
};

/// Throws InvalidConfig / DomainTooSmall for unusable configurations.
void validate(const OperatorConfig& cfg);

/// sum_i C_i B_{n_i}(F_n, x): the combination applied to the modified
/// function F_n, which is built once from base_n and shared by every term.
///
/// Construction samples F_n at every k/n_i; f itself is only called at points
/// outside [x'_2, x'_3] and at the patch nodes. Immutable afterwards, so a
/// single instance may be evaluated from several threads.
class ModifiedOperator {
 public:
  ModifiedOperator(const OperatorConfig& cfg, FunctionHandle f);

  [[nodiscard]] double operator()(double x) const;
  [[nodiscard]] double derivative(int order, double x) const;
  /// w(x) |f(x) - B(f, x)|; throws SingularSample inside the guard.
  [[nodiscard]] double weighted_error(double x) const;
  /// F_n(x)
  [[nodiscard]] double modified(double x) const;

  [[nodiscard]] const OperatorConfig& config() const noexcept { return cfg_; }
  [[nodiscard]] const FunctionHandle& function() const noexcept { return f_; }
  [[nodiscard]] const SingularModifier& modifier() const noexcept { return modifier_; }
  [[nodiscard]] const CombinationScheme& scheme() const noexcept { return scheme_; }

 private:
  OperatorConfig cfg_;
  FunctionHandle f_;
  SingularModifier modifier_;
  CombinationScheme scheme_;
  std::vector<std::vector<double>> samples_;
};

[[nodiscard]] double approximate(const OperatorConfig& cfg, const FunctionHandle& f, double x);
[[nodiscard]] double approximate_derivative(const OperatorConfig& cfg, const FunctionHandle& f,
                                            int r, double x);
[[nodiscard]] double weighted_error(const OperatorConfig& cfg, const FunctionHandle& f, double x);

}  // namespace innerbern

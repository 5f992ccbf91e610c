#pragma once

#include <optional>
#include <span>
#include <vector>

#include "innerbern/core.hpp"

namespace innerbern {

class CombinationScheme;

/// Coefficients from the Lagrange product C_i = prod_{j != i} m_i/(m_i - m_j),
/// computed exactly and rounded once. Default multipliers are 1..q.
CombinationScheme solve_coefficients(int base_n, int q,
                                     std::optional<std::vector<int>> multipliers = std::nullopt);

/// sum_i C_i B_{n_i} with n_i = m_i * base_n. The coefficients cancel the
/// 1/n^k terms of the Bernstein expansion for k = 1..q-1 and depend only on
/// the multipliers.
class CombinationScheme {
 public:
  [[nodiscard]] int base_n() const noexcept { return base_n_; }
  [[nodiscard]] int q() const noexcept { return static_cast<int>(multipliers_.size()); }
  [[nodiscard]] std::span<const int> multipliers() const noexcept { return multipliers_; }
  [[nodiscard]] std::span<const double> coefficients() const noexcept { return coefficients_; }
  /// n_i = m_i * base_n
  [[nodiscard]] int degree(int i) const { return multipliers_.at(static_cast<std::size_t>(i)) * base_n_; }

 private:
  friend CombinationScheme solve_coefficients(int, int, std::optional<std::vector<int>>);
  int base_n_ = 1;
  std::vector<int> multipliers_;
  std::vector<double> coefficients_;
};

[[nodiscard]] double combo_apply(const CombinationScheme& s, const FunctionHandle& f, double x);

/// Same, with samples[i][k] = f(k / n_i) already computed.
[[nodiscard]] double combo_apply(const CombinationScheme& s,
                                 std::span<const std::vector<double>> samples, double x);

/// sum_i C_i B_{n_i}((. - x)^k, x) by direct summation.
[[nodiscard]] double moment_residual(const CombinationScheme& s, int k, double x);

/// sum_i |C_i|
[[nodiscard]] double coefficient_abs_sum(const CombinationScheme& s);

}  // namespace innerbern

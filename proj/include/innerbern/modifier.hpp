#pragma once

#include <array>
#include <boost/multiprecision/cpp_int.hpp>
#include <span>
#include <vector>

#include "innerbern/core.hpp"

namespace innerbern {

using Rational = boost::multiprecision::cpp_rational;
using RationalMatrix = std::vector<std::vector<Rational>>;

inline constexpr int kMaxSmootherOrder = 8;

/// The smoothstep psi(t) = sum_{j=1}^{2r+1} a_j t^{2r+j} on (0,1), 0 below and
/// 1 above. psi is C^{2r}: all derivatives through order 2r vanish at t=0 and
/// t=1, except psi(1)=1.
class SmootherPoly {
 public:
  [[nodiscard]] int r() const noexcept { return r_; }
  /// a_1..a_{2r+1}, the coefficients of t^{2r+1}..t^{4r+1}.
  [[nodiscard]] std::span<const Rational> coefficients() const noexcept { return coeffs_; }
  [[nodiscard]] int lowest_power() const noexcept { return 2 * r_ + 1; }
  [[nodiscard]] int degree() const noexcept { return 4 * r_ + 1; }

  /// order-th derivative of the polynomial branch at a rational point.
  [[nodiscard]] Rational exact_derivative(int order, const Rational& t) const;

  /// First derivative of psi in floating point (0 outside (0,1)).
  [[nodiscard]] double derivative(double t) const;

 private:
  friend SmootherPoly solve_smoother(int r);
  friend double smoother_eval(const SmootherPoly& p, double t);
  int r_ = 1;
  std::vector<Rational> coeffs_;
  // Bernstein control points of degree 4r+1, converted exactly from coeffs_.
  std::vector<double> control_;
};

/// The (2r+1)x(2r+1) integer matrix whose row m holds the m-th derivative at
/// t=1 of t^{2r+1}, ..., t^{4r+1} (falling products).
RationalMatrix smoother_system(int r);

/// Exact determinant by fraction-free elimination with row pivoting.
Rational exact_determinant(RationalMatrix m);

/// prod_{j=2}^{2r} j!
Rational smoother_determinant_formula(int r);

/// Solves the smoother system exactly; 1 <= r <= kMaxSmootherOrder.
SmootherPoly solve_smoother(int r);

/// psi(t) in double precision via de Casteljau on the exact control points.
[[nodiscard]] double smoother_eval(const SmootherPoly& p, double t);

/// x_i = floor(n xi - ((r-1)/2 + i)) / n for i = 1..r+1 (strictly decreasing,
/// all left of xi). Throws DomainTooSmall when a node is not positive.
std::vector<double> interp_nodes(int n, const WeightParams& w, int r);

/// (x'_1, x'_2, x'_3, x'_4) = floor(n xi -+ 2 sqrt n, n xi -+ sqrt n) / n.
/// Throws DomainTooSmall unless 0 < x'_1 and x'_4 < 1.
std::array<double, 4> knots(int n, const WeightParams& w);

/// Replaces f near the singularity with the degree-r Lagrange patch H through
/// r+1 grid nodes just left of xi, glued in with psi over the bands
/// [x'_1, x'_2] and [x'_3, x'_4].
class SingularModifier {
 public:
  /// Samples f once at the nodes; f is not retained.
  SingularModifier(int n, const WeightParams& w, int r, const FunctionHandle& f);

  [[nodiscard]] int n() const noexcept { return n_; }
  [[nodiscard]] int r() const noexcept { return r_; }
  [[nodiscard]] const WeightParams& weight() const noexcept { return w_; }
  [[nodiscard]] std::span<const double> nodes() const noexcept { return nodes_; }
  [[nodiscard]] std::span<const double> node_values() const noexcept { return node_values_; }
  [[nodiscard]] const std::array<double, 4>& knots() const noexcept { return knots_; }
  [[nodiscard]] const SmootherPoly& smoother() const noexcept { return smoother_; }

  /// H(x)
  [[nodiscard]] double patch(double x) const;
  /// psi((x - x'_1)/(x'_2 - x'_1))
  [[nodiscard]] double lower_blend(double x) const;
  /// psi((x - x'_3)/(x'_4 - x'_3))
  [[nodiscard]] double upper_blend(double x) const;

 private:
  int n_;
  WeightParams w_;
  int r_;
  std::vector<double> nodes_;
  std::vector<double> node_values_;
  std::vector<long double> denominators_;
  std::array<double, 4> knots_;
  SmootherPoly smoother_;
};

[[nodiscard]] double lagrange_eval(const SingularModifier& m, double x);

/// F_n(x) = f(x)(1 - psi1 + psi1 psi2) + psi1 (1 - psi2) H(x).
/// Returns f(x) unchanged outside (x'_1, x'_4) and H(x) on [x'_2, x'_3], where
/// f is never called.
[[nodiscard]] double modified_eval(const SingularModifier& m, const FunctionHandle& f, double x);

}  // namespace innerbern

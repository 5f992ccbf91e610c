#pragma once

#include <span>
#include <vector>

#include "innerbern/core.hpp"

namespace innerbern {

struct BasisQuery {
  int n;
  int k;
  double x;
};

/// log(n!) from a long double table (falls back to lgamma past the table).
[[nodiscard]] long double log_factorial(int n);

/// p_{n,k}(x) = C(n,k) x^k (1-x)^{n-k}, evaluated in log space. Exact
/// indicator values at x = 0 and x = 1.
[[nodiscard]] double basis_eval(const BasisQuery& q);

/// f(k/n) for k = 0..n. Throws SingularSample if any node is guarded.
std::vector<double> sample_nodes(const FunctionHandle& f, int n);

/// B_n applied to precomputed samples f(k/n), n = samples.size() - 1.
[[nodiscard]] double bernstein_apply(std::span<const double> samples, double x);
[[nodiscard]] double bernstein_apply(const FunctionHandle& f, int n, double x);

/// r-th derivative of B_n f through forward differences:
///   n!/(n-r)! * sum_{k=0}^{n-r} (forward diff)^r_{1/n} f(k/n) p_{n-r,k}(x).
[[nodiscard]] double bernstein_derivative(std::span<const double> samples, int r, double x);
[[nodiscard]] double bernstein_derivative(const FunctionHandle& f, int n, int r, double x);

/// sum_k p_{n,k}(x) |k - n x|^gamma.
[[nodiscard]] double central_moment(int n, double gamma, double x);

}  // namespace innerbern

#include "innerbern/bernstein.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "innerbern/errors.hpp"

namespace innerbern {
namespace {

constexpr int kLogFactorialTableSize = 1 << 17;

const std::vector<long double>& log_factorial_table() {
  static const std::vector<long double> table = [] {
    std::vector<long double> t(kLogFactorialTableSize + 1);
    long double sum = 0.0L;
    long double carry = 0.0L;  // Kahan compensation
    t[0] = 0.0L;
    for (int k = 1; k <= kLogFactorialTableSize; ++k) {
      const long double y = std::log(static_cast<long double>(k)) - carry;
      const long double s = sum + y;
      carry = (s - sum) - y;
      sum = s;
      t[k] = sum;
    }
    return t;
  }();
  return table;
}

void check_degree(int n) {
  if (n < 0) throw InvalidConfig("Bernstein degree must be >= 0, got " + std::to_string(n));
}

/// Calls visit(k, p_{n,k}(x)) for every k whose basis value is representable
/// in double; 0 < x < 1.
template <class Visit>
void for_each_basis(int n, double x, Visit&& visit) {
  const long double lx = std::log(static_cast<long double>(x));
  const long double l1x = std::log1p(-static_cast<long double>(x));
  const long double lfn = log_factorial(n);
  const double centre = static_cast<double>(n) * x;
  const double half_width = 20.0 * std::sqrt(static_cast<double>(n)) + 2.0;
  const int lo = std::max(0, static_cast<int>(std::floor(centre - half_width)));
  const int hi = std::min(n, static_cast<int>(std::ceil(centre + half_width)));
  for (int k = lo; k <= hi; ++k) {
    const long double lp = lfn - log_factorial(k) - log_factorial(n - k) +
                           static_cast<long double>(k) * lx +
                           static_cast<long double>(n - k) * l1x;
    visit(k, std::exp(lp));
  }
}

}  // namespace

long double log_factorial(int n) {
  if (n < 0) throw InvalidConfig("log_factorial of negative number");
  if (n <= kLogFactorialTableSize) return log_factorial_table()[static_cast<std::size_t>(n)];
  return std::lgamma(static_cast<long double>(n) + 1.0L);
}

double basis_eval(const BasisQuery& q) {
  check_degree(q.n);
  if (q.k < 0 || q.k > q.n) {
    throw InvalidConfig("basis index k=" + std::to_string(q.k) + " outside [0,n]");
  }
  if (!(q.x >= 0.0 && q.x <= 1.0)) throw DomainError("basis_eval needs x in [0,1]");
  if (q.x == 0.0) return q.k == 0 ? 1.0 : 0.0;
  if (q.x == 1.0) return q.k == q.n ? 1.0 : 0.0;
  const long double lp = log_factorial(q.n) - log_factorial(q.k) - log_factorial(q.n - q.k) +
                         q.k * std::log(static_cast<long double>(q.x)) +
                         (q.n - q.k) * std::log1p(-static_cast<long double>(q.x));
  return static_cast<double>(std::exp(lp));
}

std::vector<double> sample_nodes(const FunctionHandle& f, int n) {
  if (n < 1) throw InvalidConfig("Bernstein degree must be >= 1");
  std::vector<double> s(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) / n;
    if (f.guarded(t)) {
      throw SingularSample("node k/n = " + std::to_string(k) + "/" + std::to_string(n) +
                           " falls inside the singularity guard");
    }
    s[static_cast<std::size_t>(k)] = f(t);
  }
  return s;
}

double bernstein_apply(std::span<const double> samples, double x) {
  if (samples.empty()) throw InvalidConfig("no samples");
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("Bernstein operator needs x in [0,1]");
  const int n = static_cast<int>(samples.size()) - 1;
  if (x == 0.0) return samples.front();
  if (x == 1.0) return samples.back();
  long double acc = 0.0L;
  for_each_basis(n, x, [&](int k, long double p) {
    acc += p * samples[static_cast<std::size_t>(k)];
  });
  return static_cast<double>(acc);
}

double bernstein_apply(const FunctionHandle& f, int n, double x) {
  const auto s = sample_nodes(f, n);
  return bernstein_apply(s, x);
}

double bernstein_derivative(std::span<const double> samples, int r, double x) {
  if (samples.empty()) throw InvalidConfig("no samples");
  const int n = static_cast<int>(samples.size()) - 1;
  if (r < 0) throw InvalidConfig("derivative order must be >= 0");
  if (r > n) {
    throw InvalidConfig("derivative order " + std::to_string(r) + " exceeds degree " +
                        std::to_string(n));
  }
  if (r == 0) return bernstein_apply(samples, x);

  // binomial row C(r, j)
  std::vector<long double> binom(static_cast<std::size_t>(r) + 1, 1.0L);
  for (int j = 1; j <= r; ++j) binom[j] = binom[j - 1] * (r - j + 1) / j;

  std::vector<double> diffs(static_cast<std::size_t>(n - r) + 1);
  for (int k = 0; k <= n - r; ++k) {
    long double d = 0.0L;
    for (int j = 0; j <= r; ++j) {
      const long double sign = ((r - j) % 2 == 0) ? 1.0L : -1.0L;
      d += sign * binom[j] * samples[static_cast<std::size_t>(k + j)];
    }
    diffs[static_cast<std::size_t>(k)] = static_cast<double>(d);
  }
  long double factor = 1.0L;
  for (int j = 0; j < r; ++j) factor *= (n - j);
  return static_cast<double>(factor * bernstein_apply(diffs, x));
}

double bernstein_derivative(const FunctionHandle& f, int n, int r, double x) {
  if (r > n) {
    throw InvalidConfig("derivative order " + std::to_string(r) + " exceeds degree " +
                        std::to_string(n));
  }
  const auto s = sample_nodes(f, n);
  return bernstein_derivative(s, r, x);
}

double central_moment(int n, double gamma, double x) {
  if (n < 1) throw InvalidConfig("central_moment needs n >= 1");
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("central_moment needs x in [0,1]");
  const long double nx = static_cast<long double>(n) * x;
  if (x == 0.0 || x == 1.0) {
    // single atom at k = n x
    return 0.0 == gamma ? 1.0 : 0.0;
  }
  long double acc = 0.0L;
  for_each_basis(n, x, [&](int k, long double p) {
    const long double d = std::abs(static_cast<long double>(k) - nx);
    acc += p * (gamma == 0.0 ? 1.0L : std::pow(d, static_cast<long double>(gamma)));
  });
  return static_cast<double>(acc);
}

}  // namespace innerbern

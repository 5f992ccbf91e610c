#include "innerbern/combination.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <limits>
#include <string>

#include "innerbern/bernstein.hpp"
#include "innerbern/errors.hpp"

namespace innerbern {

CombinationScheme solve_coefficients(int base_n, int q, std::optional<std::vector<int>> multipliers) {
  if (base_n < 1) throw InvalidConfig("base_n must be >= 1");
  if (q < 1) throw InvalidConfig("combination needs q >= 1 terms");
  std::vector<int> m;
  if (multipliers) {
    m = std::move(*multipliers);
  } else {
    for (int i = 1; i <= q; ++i) m.push_back(i);
  }
  if (static_cast<int>(m.size()) != q) {
    throw InvalidConfig("expected " + std::to_string(q) + " multipliers, got " +
                        std::to_string(m.size()));
  }
  if (m.front() != 1) throw InvalidConfig("first multiplier must be 1");
  for (std::size_t i = 1; i < m.size(); ++i) {
    if (m[i] == m[i - 1]) throw InvalidConfig("duplicate multipliers make the system singular");
    if (m[i] < m[i - 1]) throw InvalidConfig("multipliers must be strictly increasing");
  }
  if (static_cast<long long>(m.back()) * base_n > std::numeric_limits<int>::max() / 2) {
    throw InvalidConfig("combination degree too large");
  }

  using boost::multiprecision::cpp_rational;
  CombinationScheme s;
  s.base_n_ = base_n;
  s.coefficients_.reserve(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    cpp_rational c = 1;
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j == i) continue;
      c *= cpp_rational(m[i]) / (m[i] - m[j]);
    }
    s.coefficients_.push_back(c.convert_to<double>());
  }
  s.multipliers_ = std::move(m);
  return s;
}

double combo_apply(const CombinationScheme& s, const FunctionHandle& f, double x) {
  long double acc = 0.0L;
  for (int i = 0; i < s.q(); ++i) {
    acc += s.coefficients()[static_cast<std::size_t>(i)] * bernstein_apply(f, s.degree(i), x);
  }
  return static_cast<double>(acc);
}

double combo_apply(const CombinationScheme& s, std::span<const std::vector<double>> samples,
                   double x) {
  if (static_cast<int>(samples.size()) != s.q()) {
    throw InvalidConfig("one sample vector per combination term expected");
  }
  long double acc = 0.0L;
  for (int i = 0; i < s.q(); ++i) {
    const auto& row = samples[static_cast<std::size_t>(i)];
    if (static_cast<int>(row.size()) != s.degree(i) + 1) {
      throw InvalidConfig("sample vector length does not match n_i + 1");
    }
    acc += s.coefficients()[static_cast<std::size_t>(i)] * bernstein_apply(row, x);
  }
  return static_cast<double>(acc);
}

double moment_residual(const CombinationScheme& s, int k, double x) {
  if (k < 1) throw InvalidConfig("moment order must be >= 1");
  const FunctionHandle power([x, k](double t) { return std::pow(t - x, k); });
  return combo_apply(s, power, x);
}

double coefficient_abs_sum(const CombinationScheme& s) {
  double acc = 0.0;
  for (double c : s.coefficients()) acc += std::abs(c);
  return acc;
}

}  // namespace innerbern

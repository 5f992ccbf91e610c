#include "innerbern/modifier.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "innerbern/errors.hpp"

namespace innerbern {
namespace {

using boost::multiprecision::cpp_int;

// p (p-1) ... (p-m+1)
cpp_int falling(int p, int m) {
  cpp_int v = 1;
  for (int t = 0; t < m; ++t) v *= (p - t);
  return v;
}

cpp_int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  cpp_int v = 1;
  for (int j = 1; j <= k; ++j) v = v * (n - k + j) / j;
  return v;
}

Rational pow_rational(const Rational& t, int e) {
  Rational v = 1;
  for (int j = 0; j < e; ++j) v *= t;
  return v;
}

double de_casteljau(std::vector<double> b, double t) {
  const double s = 1.0 - t;
  for (std::size_t level = 1; level < b.size(); ++level) {
    for (std::size_t i = 0; i + level < b.size(); ++i) b[i] = s * b[i] + t * b[i + 1];
  }
  return b.front();
}

void check_order(int r) {
  if (r < 1 || r > kMaxSmootherOrder) {
    throw InvalidConfig("smoother order r must lie in [1," + std::to_string(kMaxSmootherOrder) +
                        "], got " + std::to_string(r));
  }
}

}  // namespace

Rational SmootherPoly::exact_derivative(int order, const Rational& t) const {
  if (order < 0) throw InvalidConfig("derivative order must be >= 0");
  Rational acc = 0;
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    const int p = lowest_power() + static_cast<int>(j);
    if (order > p) continue;
    acc += coeffs_[j] * Rational(falling(p, order)) * pow_rational(t, p - order);
  }
  return acc;
}

double SmootherPoly::derivative(double t) const {
  if (!(t > 0.0 && t < 1.0)) return 0.0;
  std::vector<double> diff(control_.size() - 1);
  for (std::size_t k = 0; k + 1 < control_.size(); ++k) diff[k] = control_[k + 1] - control_[k];
  return static_cast<double>(degree()) * de_casteljau(std::move(diff), t);
}

RationalMatrix smoother_system(int r) {
  check_order(r);
  const int size = 2 * r + 1;
  RationalMatrix m(static_cast<std::size_t>(size), std::vector<Rational>(static_cast<std::size_t>(size)));
  for (int row = 0; row < size; ++row) {
    for (int j = 0; j < size; ++j) {
      m[row][j] = Rational(falling(2 * r + 1 + j, row));
    }
  }
  return m;
}

Rational exact_determinant(RationalMatrix m) {
  const std::size_t size = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < size; ++col) {
    std::size_t pivot = col;
    while (pivot < size && m[pivot][col] == 0) ++pivot;
    if (pivot == size) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t row = col + 1; row < size; ++row) {
      if (m[row][col] == 0) continue;
      const Rational factor = m[row][col] / m[col][col];
      for (std::size_t j = col; j < size; ++j) m[row][j] -= factor * m[col][j];
    }
  }
  return det;
}

Rational smoother_determinant_formula(int r) {
  cpp_int product = 1;
  cpp_int factorial = 1;
  for (int j = 2; j <= 2 * r; ++j) {
    factorial *= j;
    product *= factorial;
  }
  return Rational(product);
}

SmootherPoly solve_smoother(int r) {
  RationalMatrix a = smoother_system(r);
  const std::size_t size = a.size();
  std::vector<Rational> rhs(size, Rational(0));
  rhs[0] = 1;

  // Gauss-Jordan over the rationals.
  for (std::size_t col = 0; col < size; ++col) {
    std::size_t pivot = col;
    while (pivot < size && a[pivot][col] == 0) ++pivot;
    if (pivot == size) throw Error("smoother system is singular");
    std::swap(a[pivot], a[col]);
    std::swap(rhs[pivot], rhs[col]);
    const Rational inv = 1 / a[col][col];
    for (std::size_t j = col; j < size; ++j) a[col][j] *= inv;
    rhs[col] *= inv;
    for (std::size_t row = 0; row < size; ++row) {
      if (row == col || a[row][col] == 0) continue;
      const Rational factor = a[row][col];
      for (std::size_t j = col; j < size; ++j) a[row][j] -= factor * a[col][j];
      rhs[row] -= factor * rhs[col];
    }
  }

  SmootherPoly p;
  p.r_ = r;
  p.coeffs_ = std::move(rhs);

  // Power -> Bernstein: b_k = sum_{j<=k} C(k,j)/C(N,j) c_j.
  const int degree = p.degree();
  std::vector<Rational> power(static_cast<std::size_t>(degree) + 1, Rational(0));
  for (std::size_t j = 0; j < p.coeffs_.size(); ++j) {
    power[static_cast<std::size_t>(p.lowest_power()) + j] = p.coeffs_[j];
  }
  p.control_.resize(static_cast<std::size_t>(degree) + 1);
  for (int k = 0; k <= degree; ++k) {
    Rational b = 0;
    for (int j = 0; j <= k; ++j) {
      if (power[j] == 0) continue;
      b += Rational(binomial(k, j)) / Rational(binomial(degree, j)) * power[j];
    }
    p.control_[static_cast<std::size_t>(k)] = b.convert_to<double>();
  }
  return p;
}

double smoother_eval(const SmootherPoly& p, double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return de_casteljau(p.control_, t);
}

std::vector<double> interp_nodes(int n, const WeightParams& w, int r) {
  if (n < 1) throw InvalidConfig("n must be >= 1");
  if (r < 1) throw InvalidConfig("r must be >= 1");
  const double centre = static_cast<double>(n) * w.xi();
  const double shift = 0.5 * static_cast<double>(r - 1);
  std::vector<double> nodes;
  nodes.reserve(static_cast<std::size_t>(r) + 1);
  for (int i = 1; i <= r + 1; ++i) {
    const long long index = snapped_floor(centre - (shift + i));
    if (index <= 0) {
      throw DomainTooSmall("interpolation node " + std::to_string(i) + " at index " +
                           std::to_string(index) + " is not inside (0,1); increase n");
    }
    nodes.push_back(static_cast<double>(index) / n);
  }
  return nodes;
}

std::array<double, 4> knots(int n, const WeightParams& w) {
  if (n < 1) throw InvalidConfig("n must be >= 1");
  const double centre = static_cast<double>(n) * w.xi();
  const double root = std::sqrt(static_cast<double>(n));
  const std::array<double, 4> offsets{-2.0 * root, -root, root, 2.0 * root};
  std::array<double, 4> k{};
  for (std::size_t i = 0; i < 4; ++i) {
    k[i] = static_cast<double>(snapped_floor(centre + offsets[i])) / n;
  }
  if (!(k[0] > 0.0) || !(k[3] < 1.0)) {
    throw DomainTooSmall("knots for n=" + std::to_string(n) + " leave (0,1); need n >= max(4/xi^2, 4/(1-xi)^2)");
  }
  if (!(k[0] < k[1] && k[1] < k[2] && k[2] < k[3])) {
    throw DomainTooSmall("knots for n=" + std::to_string(n) + " are not strictly increasing");
  }
  return k;
}

SingularModifier::SingularModifier(int n, const WeightParams& w, int r, const FunctionHandle& f)
    : n_(n),
      w_(w),
      r_(r),
      nodes_(interp_nodes(n, w, r)),
      knots_(innerbern::knots(n, w)),
      smoother_(solve_smoother(r)) {
  node_values_.reserve(nodes_.size());
  denominators_.reserve(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    node_values_.push_back(f(nodes_[i]));
    long double d = 1.0L;
    for (std::size_t j = 0; j < nodes_.size(); ++j) {
      if (j != i) d *= static_cast<long double>(nodes_[i]) - nodes_[j];
    }
    denominators_.push_back(d);
  }
}

double SingularModifier::patch(double x) const {
  // The cardinal functions reach ~(sqrt n)^r in size over the band and
  // alternate in sign; extended precision keeps their cancellation quiet.
  long double acc = 0.0L;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    long double num = 1.0L;
    for (std::size_t j = 0; j < nodes_.size(); ++j) {
      if (j != i) num *= static_cast<long double>(x) - nodes_[j];
    }
    acc += node_values_[i] * (num / denominators_[i]);
  }
  return static_cast<double>(acc);
}

double SingularModifier::lower_blend(double x) const {
  return smoother_eval(smoother_, (x - knots_[0]) / (knots_[1] - knots_[0]));
}

double SingularModifier::upper_blend(double x) const {
  return smoother_eval(smoother_, (x - knots_[2]) / (knots_[3] - knots_[2]));
}

double lagrange_eval(const SingularModifier& m, double x) { return m.patch(x); }

double modified_eval(const SingularModifier& m, const FunctionHandle& f, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("modified_eval needs x in [0,1]");
  const auto& k = m.knots();
  if (x <= k[0] || x >= k[3]) return f(x);
  if (x >= k[1] && x <= k[2]) return m.patch(x);
  const double psi1 = m.lower_blend(x);
  const double psi2 = m.upper_blend(x);
  return f(x) * (1.0 - psi1 + psi1 * psi2) + psi1 * (1.0 - psi2) * m.patch(x);
}

}  // namespace innerbern

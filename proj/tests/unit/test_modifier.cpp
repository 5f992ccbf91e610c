#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "../support/oracle.hpp"
#include "innerbern/errors.hpp"
#include "innerbern/modifier.hpp"

using namespace innerbern;

TEST_CASE("smoother coefficients for r=1") {
  const auto p = solve_smoother(1);
  REQUIRE(p.coefficients().size() == 3);
  CHECK(p.coefficients()[0] == 10);
  CHECK(p.coefficients()[1] == -15);
  CHECK(p.coefficients()[2] == 6);
  CHECK(p.lowest_power() == 3);
  CHECK(p.degree() == 5);
}

TEST_CASE("smoother coefficients match the closed form") {
  for (int r = 1; r <= kMaxSmootherOrder; ++r) {
    const auto p = solve_smoother(r);
    const auto closed = oracle::smoothstep(r);
    REQUIRE(p.coefficients().size() == closed.size());
    for (std::size_t j = 0; j < closed.size(); ++j) CHECK(p.coefficients()[j] == Rational(closed[j]));
  }
  CHECK_THROWS_AS((void)solve_smoother(0), InvalidConfig);
  CHECK_THROWS_AS((void)solve_smoother(kMaxSmootherOrder + 1), InvalidConfig);
}

TEST_CASE("system determinant equals the factorial product") {
  CHECK(exact_determinant(smoother_system(1)) == 2);
  CHECK(exact_determinant(smoother_system(2)) == 288);
  CHECK(smoother_determinant_formula(3) == Rational(2 * 6 * 24 * 120 * 720));
  for (int r = 1; r <= 4; ++r) {
    CHECK(exact_determinant(smoother_system(r)) == smoother_determinant_formula(r));
  }
}

TEST_CASE("boundary derivatives are exact") {
  for (int r = 1; r <= 6; ++r) {
    const auto p = solve_smoother(r);
    CHECK(p.exact_derivative(0, Rational(1)) == 1);
    for (int i = 1; i <= 2 * r; ++i) CHECK(p.exact_derivative(i, Rational(1)) == 0);
    for (int i = 0; i <= 2 * r; ++i) CHECK(p.exact_derivative(i, Rational(0)) == 0);
    CHECK(p.exact_derivative(2 * r + 1, Rational(0)) != 0);
  }
}

TEST_CASE("smoother evaluation") {
  for (int r = 1; r <= kMaxSmootherOrder; ++r) {
    const auto p = solve_smoother(r);
    CHECK(smoother_eval(p, -0.5) == 0.0);
    CHECK(smoother_eval(p, 1.0) == 1.0);
    CHECK(smoother_eval(p, 2.0) == 1.0);
    for (int j = 1; j < 20; ++j) {
      const double t = j / 20.0;
      const double exact = oracle::smoothstep_eval(r, oracle::Big(t)).convert_to<double>();
      CHECK(smoother_eval(p, t) == doctest::Approx(exact).epsilon(1e-14));
    }
  }
  CHECK(smoother_eval(solve_smoother(1), 0.5) == doctest::Approx(0.5));
}

TEST_CASE("smoother is monotone") {
  for (int r = 1; r <= kMaxSmootherOrder; ++r) {
    const auto p = solve_smoother(r);
    for (int j = 0; j <= 1000; ++j) CHECK(p.derivative(j / 1000.0) >= -1e-12);
  }
}

TEST_CASE("interpolation nodes") {
  const auto a = interp_nodes(100, WeightParams(0.3, 1), 2);
  REQUIRE(a.size() == 3);
  CHECK(a[0] == doctest::Approx(0.28));
  CHECK(a[1] == doctest::Approx(0.27));
  CHECK(a[2] == doctest::Approx(0.26));
  const auto b = interp_nodes(100, WeightParams(0.3, 1), 1);
  REQUIRE(b.size() == 2);
  CHECK(b[0] == doctest::Approx(0.29));
  CHECK(b[1] == doctest::Approx(0.28));
  CHECK_THROWS_AS((void)interp_nodes(20, WeightParams(0.05, 1), 3), DomainTooSmall);
}

TEST_CASE("knots") {
  const auto a = knots(100, WeightParams(0.3, 1));
  CHECK(a[0] == doctest::Approx(0.1));
  CHECK(a[1] == doctest::Approx(0.2));
  CHECK(a[2] == doctest::Approx(0.4));
  CHECK(a[3] == doctest::Approx(0.5));
  const auto b = knots(100, WeightParams(0.5, 1));
  CHECK(b[0] == doctest::Approx(0.3));
  CHECK(b[1] == doctest::Approx(0.4));
  CHECK(b[2] == doctest::Approx(0.6));
  CHECK(b[3] == doctest::Approx(0.7));
  CHECK_THROWS_AS((void)knots(10, WeightParams(0.3, 1)), DomainTooSmall);
}

TEST_CASE("patch interpolates and reproduces polynomials") {
  const WeightParams w(0.3, 1);
  for (int r = 1; r <= 4; ++r) {
    const FunctionHandle poly([r](double t) { return std::pow(t - 0.2, r) + 3 * t - 1; });
    const SingularModifier m(400, w, r, poly);
    for (std::size_t i = 0; i < m.nodes().size(); ++i) CHECK(m.patch(m.nodes()[i]) == m.node_values()[i]);
    for (int j = 0; j <= 20; ++j) {
      const double x = j / 20.0;
      // extrapolating a quartic from nodes 1/400 apart out to x=1 amplifies
      // the rounding of f(x_i) past 1e-9, so r=4 is checked near the nodes
      if (r < 4 || std::abs(x - 0.3) <= 0.2) CHECK(lagrange_eval(m, x) == doctest::Approx(poly(x)).epsilon(1e-9));
      CHECK(modified_eval(m, poly, x) == doctest::Approx(poly(x)).epsilon(1e-9));
    }
  }
}

TEST_CASE("patch at the singularity is the two-point extrapolation") {
  const WeightParams w(0.3, 1);
  const FunctionHandle cusp([](double t) { return std::sqrt(std::abs(t - 0.3)); }, 0.3);
  const SingularModifier m(400, w, 1, cusp);
  const double x1 = m.nodes()[0], x2 = m.nodes()[1];
  const double expected = cusp(x1) * (0.3 - x2) / (x1 - x2) + cusp(x2) * (0.3 - x1) / (x2 - x1);
  CHECK(std::isfinite(lagrange_eval(m, 0.3)));
  CHECK(lagrange_eval(m, 0.3) == doctest::Approx(expected).epsilon(1e-13));
  CHECK(modified_eval(m, cusp, 0.3) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("modified function at the knots and outside the band") {
  const WeightParams w(0.5, 1);
  const FunctionHandle f([](double t) { return std::exp(t) * std::sin(7 * t); });
  const SingularModifier m(256, w, 2, f);
  const auto k = m.knots();
  CHECK(modified_eval(m, f, k[0]) == f(k[0]));
  CHECK(modified_eval(m, f, k[3]) == f(k[3]));
  CHECK(modified_eval(m, f, 0.5) == doctest::Approx(m.patch(0.5)).epsilon(1e-15));
  for (int j = 0; j <= 200; ++j) {
    const double x = j / 200.0;
    if (x <= k[0] || x >= k[3]) CHECK(modified_eval(m, f, x) == f(x));
    if (x >= k[1] && x <= k[2]) CHECK(modified_eval(m, f, x) == m.patch(x));
  }
}

TEST_CASE("modified function matches the literal blend formula") {
  const FunctionHandle f([](double t) { return std::pow(std::abs(t - 0.5), 1.5); }, 0.5);
  const SingularModifier m(256, WeightParams(0.5, 1), 2, f);
  const oracle::Modified ref{256, 2, 1, 2, [](const oracle::Big& t) { return pow(abs(t - oracle::Big(0.5)), oracle::Big(1.5)); }};
  for (int j = 0; j <= 100; ++j) {
    const double x = 0.25 + 0.5 * j / 100.0;
    if (std::abs(x - 0.5) < 1e-9) continue;
    CHECK(modified_eval(m, f, x) == doctest::Approx(ref(oracle::Big(x)).convert_to<double>()).epsilon(1e-12));
  }
}

namespace {

// Fornberg weights for the derivatives of order 0..top at z from the points xs.
std::vector<std::vector<double>> fornberg(double z, const std::vector<double>& xs, int top) {
  const std::size_t n = xs.size();
  std::vector<std::vector<double>> c(n, std::vector<double>(static_cast<std::size_t>(top) + 1, 0.0));
  double c1 = 1.0, c4 = xs[0] - z;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const int mn = std::min<int>(static_cast<int>(i), top);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = xs[i] - z;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = xs[i] - xs[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  return c;
}

template <class G>
double one_sided(G&& g, double x, int order, double h, int direction) {
  std::vector<double> xs;
  for (int j = 0; j < 10; ++j) xs.push_back(x + direction * j * h);
  const auto w = fornberg(x, xs, order);
  double acc = 0.0;
  for (std::size_t j = 0; j < xs.size(); ++j) acc += w[j][static_cast<std::size_t>(order)] * g(xs[j]);
  return acc;
}

}  // namespace

TEST_CASE("one-sided difference weights recover polynomial derivatives") {
  auto p = [](double t) { return t * t * t * t - 2 * t; };
  CHECK(one_sided(p, 0.3, 1, 1e-2, 1) == doctest::Approx(4 * 0.027 - 2).epsilon(1e-9));
  CHECK(one_sided(p, 0.3, 4, 1e-2, -1) == doctest::Approx(24).epsilon(1e-4));
}

// Difference between the one-sided derivative estimates at x. A derivative
// that is continuous at x gives a gap made of truncation error only, which
// drops by 2^(10 - order) when h is halved; a real jump does not drop.
template <class G>
double jump(G&& g, double x, int order, double h) {
  return std::abs(one_sided(g, x, order, h, 1) - one_sided(g, x, order, h, -1));
}

template <class G>
bool continuous(G&& g, double x, int order) {
  const double coarse = jump(g, x, order, 2e-3);
  const double fine = jump(g, x, order, 5e-4);
  const double scale = std::max(1.0, std::abs(one_sided(g, x, order, 5e-4, -1)));
  return fine <= 1e-4 * scale || fine <= coarse / 16;
}

TEST_CASE("gluing is smooth across the knots") {
  const FunctionHandle f([](double t) { return std::sin(std::numbers::pi * t); });
  for (int r = 1; r <= 3; ++r) {
    const SingularModifier m(400, WeightParams(0.5, 1), r, f);
    auto g = [&](double x) { return modified_eval(m, f, x); };
    for (double knot : m.knots()) {
      for (int order = 1; order <= std::min(2 * r, 4); ++order) CHECK(continuous(g, knot, order));
    }
  }
}

TEST_CASE("the jump test detects real jumps") {
  const FunctionHandle kink([](double t) { return std::abs(t - 0.4); });
  CHECK_FALSE(continuous([&](double x) { return kink(x); }, 0.4, 1));
  // with r = 1 the smoother is only C^2, so the third derivative jumps
  const FunctionHandle f([](double t) { return std::sin(std::numbers::pi * t); });
  const SingularModifier m(400, WeightParams(0.5, 1), 1, f);
  CHECK_FALSE(continuous([&](double x) { return modified_eval(m, f, x); }, m.knots()[0], 3));
}

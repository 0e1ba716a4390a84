#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <random>

#include "bosepol/errors.hpp"
#include "bosepol/numerics.hpp"

using namespace bosepol;

namespace {

// integral z^{2k} exp(-a z^2) dz = sqrt(pi/a) (2k-1)!! / (2a)^k
double gaussian_moment(int k, double a) {
  double value = std::sqrt(std::numbers::pi / a);
  for (int j = 1; j <= k; ++j) value *= (2.0 * j - 1.0) / (2.0 * a);
  return value;
}

}  // namespace

TEST_CASE("gauss-hermite integrates gaussian moments exactly") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> alpha_dist(0.3, 9.0);
  for (int n : {3, 9, 24, 81}) {
    const auto rule = numerics::gauss_hermite(n);
    REQUIRE(rule.nodes.size() == static_cast<std::size_t>(n));
    const double alpha = alpha_dist(rng);
    const double root = std::sqrt(alpha);
    for (int k = 0; 2 * k <= 2 * n - 2; k += std::max(1, n / 4)) {
      double sum = 0.0;
      for (int i = 0; i < n; ++i) {
        const double z = rule.nodes[i] / root;
        sum += rule.weights[i] * std::pow(z, 2 * k) * std::exp(-alpha * z * z);
      }
      sum /= root;
      CHECK(sum == doctest::Approx(gaussian_moment(k, alpha)).epsilon(1e-12));
    }
  }
}

TEST_CASE("gauss-hermite nodes are symmetric and weights stay finite") {
  const auto rule = numerics::gauss_hermite(301);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    CHECK(rule.nodes[i] == -rule.nodes[rule.nodes.size() - 1 - i]);
    CHECK(std::isfinite(rule.weights[i]));
    CHECK(rule.weights[i] > 0.0);
  }
  CHECK_THROWS_AS(numerics::gauss_hermite(0), ConfigError);
  CHECK_THROWS_AS(numerics::gauss_hermite(400), ConfigError);
}

TEST_CASE("gauss-legendre is exact for polynomials") {
  const auto rule = numerics::gauss_legendre(12);
  // integral of x^k on [-1, 2]
  for (int k = 0; k <= 23; ++k) {
    const double got =
        numerics::integrate_mapped(rule, -1.0, 2.0, [k](double x) { return std::pow(x, k); });
    const double expected = (std::pow(2.0, k + 1) - std::pow(-1.0, k + 1)) / (k + 1);
    CHECK(got == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("integrate_split handles kinked integrands") {
  const auto rule = numerics::gauss_legendre(40);
  // integral |x - 1/3| exp(-x) on [0, 2], closed form via antiderivatives
  auto f = [](double x) { return std::abs(x - 1.0 / 3.0) * std::exp(-x); };
  const double kink = 1.0 / 3.0;
  const double got = numerics::integrate_split(rule, 0.0, 2.0, {{kink}}, f);
  double reference = 0.0;
  const int n = 2'000'001;
  const double h = 2.0 / (n - 1);
  for (int i = 0; i < n; ++i) {
    const double x = i * h;
    const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    reference += w * f(x);
  }
  reference *= h;
  CHECK(got == doctest::Approx(reference).epsilon(1e-9));
}

TEST_CASE("tridiagonal eigensolver matches Eigen") {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 60);
    std::vector<double> diag(n), off(std::max(0, n - 1));
    for (auto& d : diag) d = 3.0 * normal(rng);
    for (auto& o : off) o = normal(rng);

    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      dense(i, i) = diag[i];
      if (i + 1 < n) {
        dense(i, i + 1) = off[i];
        dense(i + 1, i) = off[i];
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
    for (int which : {0, 1, n - 1}) {
      const double got = numerics::tridiag_eigenvalue(diag, off, which);
      CHECK(got == doctest::Approx(es.eigenvalues()(which)).epsilon(1e-12));
    }
    const auto pair = numerics::tridiag_eigenpair(diag, off, 0);
    // residual of the eigenpair
    double res = 0.0;
    for (int i = 0; i < n; ++i) {
      double hv = diag[i] * pair.vector[i];
      if (i > 0) hv += off[i - 1] * pair.vector[i - 1];
      if (i + 1 < n) hv += off[i] * pair.vector[i + 1];
      const double d = hv - pair.value * pair.vector[i];
      res += d * d;
    }
    CHECK(std::sqrt(res) < 1e-8 * std::max(1.0, std::abs(pair.value)));
  }
}

TEST_CASE("tridiag search window falls back when it does not bracket") {
  std::vector<double> diag{1.0, 2.0, 3.0};
  std::vector<double> off{0.1, 0.1};
  const double full = numerics::tridiag_eigenvalue(diag, off, 2);
  const double windowed =
      numerics::tridiag_eigenvalue(diag, off, 2, numerics::TridiagSearch{0.0, 1.5, 0.0});
  CHECK(windowed == doctest::Approx(full).epsilon(1e-14));
}

TEST_CASE("bisect_root finds the cosine root") {
  const double root =
      numerics::bisect_root([](double x) { return std::cos(x); }, 0.0, 3.0, 1e-14);
  CHECK(root == doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));
  CHECK_THROWS_AS(numerics::bisect_root([](double x) { return 1.0 + x * x; }, 0.0, 1.0),
                  std::domain_error);
}

TEST_CASE("format_double uses '.' and survives round trips") {
  CHECK(numerics::format_double(0.5) == "0.5");
  CHECK(numerics::format_double(-3.0) == "-3");
  const double v = 0.1234567890123;
  CHECK(std::stod(numerics::format_double(v)) == doctest::Approx(v).epsilon(1e-11));
}

TEST_CASE("fnv1a64 is stable") {
  CHECK(numerics::fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(numerics::fnv1a64("a") != numerics::fnv1a64("b"));
}

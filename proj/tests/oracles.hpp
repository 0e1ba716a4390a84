// Test-only oracles, kept independent of the library implementation paths
// they are used to check.
#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracles {

// Dense trapezoid integration on [a, b].
inline double trapezoid(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / (n - 1);
  double sum = 0.5 * (f(a) + f(b));
  for (int i = 1; i + 1 < n; ++i) sum += f(a + i * h);
  return sum * h;
}

// Even-parity ground energy of -1/2 d^2/dx^2 + x^2/2 + g delta(x), from the
// parabolic-cylinder boundary condition g = -2 G(3/4-E/2)/G(1/4-E/2),
// root-found by bisection on E in (1/2, 3/2).
inline double delta_origin_ground_energy(double g) {
  if (g == 0.0) return 0.5;
  auto implied = [](double e) {
    return -2.0 * std::tgamma(0.75 - 0.5 * e) / std::tgamma(0.25 - 0.5 * e);
  };
  double lo = 0.5 + 1e-13, hi = 1.5 - 1e-13;
  double flo = implied(lo) - g;
  for (int i = 0; i < 200 && hi - lo > 1e-14; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = implied(mid) - g;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Relative ground energy of two trapped particles (masses 1 and m_ba, equal
// trap frequency) with a contact interaction: reduced-mass rescaling of the
// origin-delta relation.
inline double two_body_relative_energy(double g, double mass_ratio = 1.0) {
  const double mu = mass_ratio / (1.0 + mass_ratio);
  return delta_origin_ground_energy(g * std::sqrt(mu));
}

inline double two_body_total_energy(double g, double mass_ratio = 1.0) {
  return 0.5 + two_body_relative_energy(g, mass_ratio);
}

// Deterministic random unit vector.
inline std::vector<double> random_unit_vector(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::vector<double> v(dim);
  double norm2 = 0.0;
  for (auto& x : v) {
    x = normal(rng);
    norm2 += x * x;
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& x : v) x *= inv;
  return v;
}

}  // namespace oracles

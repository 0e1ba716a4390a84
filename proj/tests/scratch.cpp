// Dev scratch: cross-checks the closed-form oracles against the solvers.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#include "bosepol/eigensolver.hpp"
#include "bosepol/fockspace.hpp"
#include "bosepol/hobasis.hpp"
#include "bosepol/numerics.hpp"
#include "bosepol/polaron.hpp"

using namespace bosepol;

// g implied by the even-parity relative energy for the unit-mass delta-in-a-trap
// (the y = 0 single-particle problem): g = -2 Gamma(3/4 - E/2) / Gamma(1/4 - E/2).
static double g_implied_mu1(double e) {
  return -2.0 * std::tgamma(0.75 - 0.5 * e) / std::tgamma(0.25 - 0.5 * e);
}

// Equal-mass two-body relative problem: reduced mass 1/2 rescales g by sqrt(2).
static double g_implied_two_body(double e) { return std::numbers::sqrt2 * g_implied_mu1(e); }

static double root_for_g(double g, double (*implied)(double)) {
  return numerics::bisect_root([&](double e) { return implied(e) - g; }, 0.5 + 1e-12,
                               1.5 - 1e-12);
}

int main() {
  // 1. basis values
  {
    double buf[2];
    hermite_functions(0.0, buf);
    std::printf("phi0(0) = %.10f   expect %.10f\n", buf[0], std::pow(std::numbers::pi, -0.25));
  }

  // 2. tensor element oracle
  {
    SPBasis a(Species::A, 1.0, 4), b(Species::B, 1.0, 4);
    auto t = build_interaction_tensor(a, b);
    std::printf("V0000(m=1) = %.10f   expect %.10f\n", t(0, 0, 0, 0),
                1.0 / std::sqrt(2.0 * std::numbers::pi));
    SPBasis b4(Species::B, 4.0, 4);
    auto t4 = build_interaction_tensor(a, b4);
    std::printf("V0000(m=4) = %.10f   expect %.10f\n", t4(0, 0, 0, 0),
                2.0 / std::sqrt(5.0 * std::numbers::pi));
  }

  // 3. FD delta solver vs closed form at y=0 for several g, plus dx ladder
  for (double g : {1.0, 5.0, 20.0}) {
    const double exact = root_for_g(g, g_implied_mu1);
    for (int n : {3201, 6401, 12801}) {
      FdGrid grid{8.0, n};
      const double eps = solve_delta_sp(0.0, g, grid).eps;
      std::printf("g=%5.1f n=%6d eps=%.9f exact=%.9f err=%+.3e\n", g, n, eps, exact,
                  eps - exact);
    }
  }

  // 4. two-body ED ladder (pure mode cutoff) vs transcendental root
  for (double g : {1.0, 5.0, 20.0}) {
    const double exact = root_for_g(g, g_implied_two_body);
    std::printf("two-body g=%.0f: E_rel exact = %.9f\n", g, exact);
    std::vector<double> energies;
    std::vector<int> rungs{24, 40, 56, 72};
    for (int n_max : rungs) {
      const auto t0 = std::chrono::steady_clock::now();
      SPBasis a(Species::A, 1.0, n_max), b(Species::B, 1.0, n_max);
      TensorLimits lim;
      lim.max_bytes = std::size_t{2} << 30;
      auto tensor = build_interaction_tensor(a, b, lim);
      FockSpace space = FockSpace::enumerate({1, n_max, n_max, std::nullopt, ParityBlock::even});
      auto h = assemble_hamiltonian(space, tensor, g, 1.0);
      auto spec = lowest_eigenpairs(h, {1, 1e-11, 800, 42});
      const double e_rel = spec.eigenvalues[0] - 0.5;
      energies.push_back(e_rel);
      const double dt =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::printf("  n_max=%3d dim=%6zu E_rel=%.9f err=%+.3e  (%.2fs, %d iters)\n", n_max,
                  space.dimension(), e_rel, e_rel - exact, dt, spec.iterations);
    }
    // two-point Richardson in 1/sqrt(n_max) on the last two rungs
    const std::size_t last = energies.size() - 1;
    const double m1 = std::sqrt(static_cast<double>(rungs[last - 1]));
    const double m2 = std::sqrt(static_cast<double>(rungs[last]));
    const double c = (energies[last - 1] - energies[last]) / (1.0 / m1 - 1.0 / m2);
    const double extrap = energies[last] - c / m2;
    std::printf("  richardson = %.9f err=%+.3e\n", extrap, extrap - exact);
  }
  return 0;
}

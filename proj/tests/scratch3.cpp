// Dev scratch: profile shapes and the mass-ratio sweep.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "bosepol/observables.hpp"
#include "bosepol/sweep.hpp"

using namespace bosepol;

static std::vector<int> local_maxima(const std::vector<double>& p) {
  std::vector<int> out;
  for (std::size_t i = 1; i + 1 < p.size(); ++i)
    if (p[i] > p[i - 1] && p[i] > p[i + 1]) out.push_back(static_cast<int>(i));
  return out;
}

int main(int argc, char** argv) {
  const int mode = argc > 1 ? std::atoi(argv[1]) : 0;

  if (mode == 0) {
    // bimodality at g = 20, m = 1
    for (int n_a : {2, 4}) {
      RunConfig config;
      config.n_a = n_a;
      config.quanta = (n_a == 2) ? 40 : 28;
      config.k_levels = 1;
      const Cutoffs cut = derive_cutoffs(config);
      SPBasis ba(Species::A, 1.0, cut.n_max_a), bb(Species::B, 1.0, cut.n_max_b);
      auto tensor = build_interaction_tensor(ba, bb);
      auto point = solve_ed_point(config, 20.0, 1.0, tensor, cut, true);
      auto rb = render_grid(*point.obdm_b, bb, 5.0, 201);
      auto ra = render_grid(*point.obdm_a, ba, 5.0, 201);
      auto peaks = local_maxima(rb.profile);
      std::printf("N=%d g=20 impurity peaks:", n_a);
      for (int i : peaks) std::printf(" (%.3f, %.6f)", rb.grid[i], rb.profile[i]);
      double trap_b = 0.0, trap_a = 0.0;
      const double h = rb.grid[1] - rb.grid[0];
      for (std::size_t i = 0; i < rb.profile.size(); ++i) {
        const double w = (i == 0 || i + 1 == rb.profile.size()) ? 0.5 : 1.0;
        trap_b += w * rb.profile[i] * h;
        trap_a += w * ra.profile[i] * h;
      }
      std::printf("  traces: B=%.8f A=%.8f\n", trap_b, trap_a);
    }
    return 0;
  }

  // mass sweep at g = 10
  const int n_a = mode;
  RunConfig config;
  config.n_a = n_a;
  config.quanta = (n_a == 2) ? 36 : (n_a == 3 ? 30 : 26);
  config.k_levels = 1;
  const Cutoffs cut = derive_cutoffs(config);
  SPBasis ba(Species::A, 1.0, cut.n_max_a);
  std::vector<double> ms, l0b, ent;
  for (double m = 1.0; m <= 8.01; m += 0.25) {
    auto t0 = std::chrono::steady_clock::now();
    SPBasis bb(Species::B, m, cut.n_max_b);
    auto tensor = build_interaction_tensor(ba, bb);
    auto point = solve_ed_point(config, 10.0, m, tensor, cut, true);
    ms.push_back(m);
    l0b.push_back(point.obdm_b->occupations[0]);
    ent.push_back(point.entropy_bits);
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("N=%d m=%.2f: l0B=%.5f S=%.5f l0A=%.5f E0=%.6f (%.1fs)\n", n_a, m,
                point.obdm_b->occupations[0], point.entropy_bits,
                point.obdm_a->occupations[0], point.even.eigenvalues[0], dt);
    if (m >= 7.99) {
      SPBasis bbm(Species::B, m, cut.n_max_b);
      auto rb = render_grid(*point.obdm_b, bbm, 5.0, 201);
      auto ra = render_grid(*point.obdm_a, ba, 5.0, 201);
      auto peaks_b = local_maxima(rb.profile);
      std::printf("  impurity peaks at m=8:");
      for (int i : peaks_b) std::printf(" (%.3f)", rb.grid[i]);
      const int c = 100;
      std::printf("\n  boson profile near 0: %.6f %.6f %.6f (dip if middle smallest)\n",
                  ra.profile[c - 8], ra.profile[c], ra.profile[c + 8]);
    }
  }
  auto scan = threshold_mass_scan(ms, l0b);
  if (scan)
    std::printf("threshold N=%d: m_grid=%.2f m_refined=%.3f\n", n_a, scan->m_grid,
                scan->m_refined);
  std::size_t smax = 0;
  for (std::size_t i = 1; i < ent.size(); ++i)
    if (ent[i] > ent[smax]) smax = i;
  std::printf("S max at m=%.2f (same grid point as lambda min: %s)\n", ms[smax],
              scan && smax == scan->index ? "yes" : "NO");
  return 0;
}

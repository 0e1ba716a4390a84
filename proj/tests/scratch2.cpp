// Dev scratch: N-body behavior, golden values, polaron agreement, timings.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "bosepol/eigensolver.hpp"
#include "bosepol/observables.hpp"
#include "bosepol/polaron.hpp"
#include "bosepol/strong_ansatz.hpp"
#include "bosepol/sweep.hpp"

using namespace bosepol;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double s() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

int main(int argc, char**) {
  RunConfig config;
  config.k_levels = 2;

  // --- ansatz golden values ---
  {
    Timer t;
    for (int n_a : {1, 2}) {
      AnsatzState state(n_a);
      auto b = ansatz_obdm(state, Species::B, 5.0, 121);
      auto a = ansatz_obdm(state, Species::A, 5.0, 121);
      std::printf("ansatz N=%d: norm=%.8f l0B=%.6f l1B=%.6f S=%.6f l0A=%.6f (%.2fs)\n", n_a,
                  state.norm_constant(), b.occupations[0], b.occupations[1], b.entropy,
                  a.occupations[0], t.s());
    }
    // grid-doubling stability of the occupations
    AnsatzState::Options opt;
    opt.quad_points = 120;
    AnsatzState state2(2, opt);
    auto b2 = ansatz_obdm(state2, Species::B, 5.0, 121);
    std::printf("ansatz N=2 @120pts: l0B=%.6f S=%.6f\n", b2.occupations[0], b2.entropy);
  }

  // --- N_A=2 equal mass: gaps and entropy across g ---
  {
    config.n_a = 2;
    config.quanta = 40;
    const Cutoffs cut = derive_cutoffs(config);
    SPBasis ba(Species::A, 1.0, cut.n_max_a), bb(Species::B, 1.0, cut.n_max_b);
    auto tensor = build_interaction_tensor(ba, bb);
    for (double g : {1.0, 5.0, 10.0, 20.0}) {
      Timer t;
      auto point = solve_ed_point(config, g, 1.0, tensor, cut, true);
      const double gap = point.odd.eigenvalues[0] - point.even.eigenvalues[0];
      std::printf(
          "N=2 Q=40 g=%5.1f: E0=%.6f gap=%.6f l0B=%.5f l1B=%.5f S=%.5f l0A=%.5f (%.1fs)\n", g,
          point.even.eigenvalues[0], gap, point.obdm_b->occupations[0],
          point.obdm_b->occupations[1], point.entropy_bits, point.obdm_a->occupations[0], t.s());
    }
  }

  // --- N_A=4: feasibility at Q=28, g=10/20 ---
  if (argc > 1) {
    config.n_a = 4;
    for (int q : {24, 28}) {
      config.quanta = q;
      const Cutoffs cut = derive_cutoffs(config);
      SPBasis ba(Species::A, 1.0, cut.n_max_a), bb(Species::B, 1.0, cut.n_max_b);
      auto tensor = build_interaction_tensor(ba, bb);
      for (double g : {5.0, 10.0, 20.0}) {
        Timer t;
        auto point = solve_ed_point(config, g, 1.0, tensor, cut, true);
        FockSpace::Params params{4, cut.n_max_a, cut.n_max_b, cut.e_cut, ParityBlock::even};
        auto dim = FockSpace::enumerate(params).dimension();
        std::printf("N=4 Q=%d g=%5.1f: dim=%zu E0=%.6f gap=%.6f S=%.5f l0B=%.5f (%.1fs)\n", q, g,
                    dim, point.even.eigenvalues[0],
                    point.odd.eigenvalues[0] - point.even.eigenvalues[0], point.entropy_bits,
                    point.obdm_b->occupations[0], t.s());
      }
    }
    // polaron vs ED
    for (double g : {5.0, 10.0}) {
      Timer t;
      auto pol = solve_effective(4, g, 1.0);
      std::printf("polaron N=4 g=%.0f: E=%.6f (%.1fs)\n", g, pol.energy, t.s());
    }
    {
      Timer t;
      auto pol = solve_effective(9, 10.0, 1.0);
      std::printf("polaron N=9 g=10: E=%.6f per-atom=%.6f (%.1fs)\n", pol.energy,
                  pol.energy / 10.0, t.s());
    }
  }
  return 0;
}

#include "bosepol/contact.hpp"

#include <cmath>
#include <stdexcept>

#include "bosepol/eigensolver.hpp"
#include "bosepol/errors.hpp"
#include "bosepol/numerics.hpp"

namespace bosepol {

double contact_coupling_from_energy(double e) {
  return -2.0 * std::tgamma(0.75 - 0.5 * e) / std::tgamma(0.25 - 0.5 * e);
}

double contact_relative_energy(double g) {
  if (g < 0.0) throw std::domain_error("contact_relative_energy: g must be >= 0");
  if (g == 0.0) return 0.5;
  return numerics::bisect_root(
      [g](double e) { return contact_coupling_from_energy(e) - g; }, 0.5 + 1e-13,
      1.5 - 1e-13);
}

double two_body_ground_energy(double g, double mass_ratio) {
  if (mass_ratio <= 0.0)
    throw std::domain_error("two_body_ground_energy: mass_ratio must be > 0");
  const double mu = mass_ratio / (1.0 + mass_ratio);
  return 0.5 + contact_relative_energy(g * std::sqrt(mu));
}

double effective_coupling(double g, double mass_ratio, const InteractionTensor& tensor,
                          int n_max_a, int n_max_b, std::optional<double> quanta,
                          double tol) {
  if (g == 0.0) return 0.0;
  const double target = two_body_ground_energy(g, mass_ratio);

  std::optional<double> e_cut;
  if (quanta) e_cut = *quanta + 1.0;  // two-body vacuum sits at 1
  const FockSpace space =
      FockSpace::enumerate({1, n_max_a, n_max_b, e_cut, ParityBlock::even});
  auto truncated_energy = [&](double coupling) {
    const auto h = assemble_hamiltonian(space, tensor, coupling, mass_ratio);
    return lowest_eigenpairs(h, {1, 1e-11, 800, 0xeffULL}).eigenvalues[0];
  };

  // E_trunc(g) >= target by the variational principle, so g* <= g.
  double hi = g;
  double lo = 0.5 * g;
  for (int i = 0; i < 12 && truncated_energy(lo) > target; ++i) {
    hi = lo;
    lo *= 0.5;
  }
  if (truncated_energy(lo) > target)
    throw ConvergenceError("effective_coupling: could not bracket g*");
  return numerics::bisect_root([&](double c) { return truncated_energy(c) - target; }, lo,
                               hi, tol, 80);
}

}  // namespace bosepol

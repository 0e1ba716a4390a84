#pragma once

#include <optional>

#include "bosepol/fockspace.hpp"

namespace bosepol {

/// Coupling implied by the even-parity relative energy e of the unit-mass
/// problem -1/2 d^2/dx^2 + x^2/2 + g delta(x): g = -2 G(3/4 - e/2)/G(1/4 - e/2).
double contact_coupling_from_energy(double e);

/// Relative ground energy for that problem at coupling g >= 0, in (1/2, 3/2).
double contact_relative_energy(double g);

/// Exact ground energy of one A atom and the impurity in the common trap:
/// the center of mass separates for any mass ratio, contributing 1/2, and the
/// relative problem maps onto the unit-mass relation at coupling g sqrt(mu)
/// with mu = m_BA/(1 + m_BA).
double two_body_ground_energy(double g, double mass_ratio);

/// Renormalized coupling g* <= g such that the two-body problem solved in the
/// given truncation reproduces two_body_ground_energy(g, m); using g* in the
/// N-body assembly removes the leading contact-interaction truncation error.
double effective_coupling(double g, double mass_ratio, const InteractionTensor& tensor,
                          int n_max_a, int n_max_b, std::optional<double> quanta,
                          double tol = 1e-9);

}  // namespace bosepol

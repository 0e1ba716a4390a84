#pragma once

#include <string>
#include <vector>

#include "bosepol/numerics.hpp"

namespace bosepol {

/// Uniform finite-difference grid on [-box_half_width, box_half_width].
struct FdGrid {
  double box_half_width = 8.0;
  int n_points = 6401;  // step 1/400

  double step() const { return 2.0 * box_half_width / (n_points - 1); }
  double position(int i) const { return -box_half_width + i * step(); }
  int nearest_index(double x) const;
};

/// Lowest eigenstate of h0 + g delta(x - y) on the bath coordinate, with the
/// impurity frozen at y.  hard_core selects the 1/g -> 0 branch (node at y).
struct DeltaBoundarySolution {
  double y = 0.0;
  double g = 0.0;
  bool hard_core = false;
  double eps = 0.0;        // lowest eigenvalue, units of hbar omega
  std::vector<double> f;   // eigenfunction on the grid, trapezoid-normalized
  FdGrid grid;
};

DeltaBoundarySolution solve_delta_sp(double y, double g, const FdGrid& grid = {});
DeltaBoundarySolution solve_delta_sp_hardcore(double y, const FdGrid& grid = {});

/// Diagonal adiabatic coupling Q11(y) = -(N_A/2) <(df/dy)^2>, from a central
/// difference with sign alignment against f(x|y).  Always <= 0.
double q11(double y, double g, int n_a, const FdGrid& grid = {}, double h_y = 0.0125);

/// Tabulated adiabatic potential and the solved effective impurity equation.
struct AdiabaticPotential {
  std::vector<double> y;
  std::vector<double> eps;        // single-particle eps(y); band energy is N_A * eps
  std::vector<double> q11;        // diagonal coupling, <= 0
  std::vector<double> potential;  // W(y) = N_A eps(y) - Q11(y)/m_BA + m_BA y^2/2
  std::vector<double> phi;        // ground solution, trapezoid-normalized
  double energy = 0.0;            // variational upper bound on the exact energy
  int n_a = 0;
  double g = 0.0;
  double mass_ratio = 1.0;
};

struct EffectiveOptions {
  double y_half_width = 6.0;
  int y_points = 481;  // step 0.025
  FdGrid x_grid{};
  double h_y = 0.0125;
};

AdiabaticPotential solve_effective(int n_a, double g, double mass_ratio,
                                   const EffectiveOptions& options = {});

/// Advisory check for the known strong-coupling weakness: the derivative term
/// builds a wall at y = 0 which is unphysical once the impurity actually
/// wants to sit there.
struct ValidityReport {
  bool valid = true;
  double barrier = 0.0;         // -Q11(0)/m_BA
  double central_weight = 0.0;  // impurity weight within |y| < 0.5
  std::string message;
};

ValidityReport validity_check(const AdiabaticPotential& potential);
ValidityReport validity_check(int n_a, double g, double mass_ratio,
                              const EffectiveOptions& options = {});

}  // namespace bosepol

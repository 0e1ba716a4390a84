#pragma once

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <vector>

#include "bosepol/fockspace.hpp"

namespace bosepol {

/// One-body density matrix in the oscillator-mode basis, with natural
/// occupations (descending, normalized to sum 1) and orbitals.  trace_raw is
/// N_A for species A and 1 for the impurity.
struct ObdmResult {
  Species species = Species::B;
  Eigen::MatrixXd mode_matrix;
  std::vector<double> occupations;
  Eigen::MatrixXd natural_orbitals;  // columns, mode basis
  double trace_raw = 0.0;
};

/// rho(x, x') sampled on a uniform symmetric grid.  Positions are in the
/// species' own oscillator length (identical to a_ho for species A; shrunk by
/// 1/sqrt(m_BA) for the impurity), so the diagonal integrates to trace_raw.
struct GridRendering {
  std::vector<double> grid;
  Eigen::MatrixXd values;
  std::vector<double> profile;
  double trace_raw = 0.0;
};

/// Impurity OBDM rho^B_{mn} = sum_S C_{S,m} C_{S,n} over A configurations S.
ObdmResult obdm_B(const FockSpace& space, std::span<const double> v);

/// Boson OBDM rho^A_{pq} = <v| a+_p a_q |v>; occupations reported as fractions
/// of N_A.
ObdmResult obdm_A(const FockSpace& space, std::span<const double> v);

/// Von Neumann entropy -sum lambda_i log2 lambda_i in bits; occupations below
/// 1e-14 are treated as zero.
double entanglement_entropy(const ObdmResult& obdm);
double entropy_bits(std::span<const double> occupations);

GridRendering render_grid(const ObdmResult& obdm, const SPBasis& basis, double box_half_width,
                          int n_points);

struct ThresholdScan {
  double m_grid = 0.0;      // grid argmin of lambda_0^B
  double m_refined = 0.0;   // parabolic refinement over the bracketing points
  std::size_t index = 0;
};

/// Threshold mass ratio: location of the interior minimum of lambda_0^B over
/// an ascending m_BA sweep; nullopt when the sequence has no interior minimum.
std::optional<ThresholdScan> threshold_mass_scan(std::span<const double> mass_ratios,
                                                 std::span<const double> lambda0_b);

}  // namespace bosepol

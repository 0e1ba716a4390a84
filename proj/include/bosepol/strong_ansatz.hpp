#pragma once

#include <span>
#include <vector>

#include "bosepol/observables.hpp"

namespace bosepol {

/// Hard-core (1/g = 0) reference state for N_A equal-mass bosons plus the
/// impurity: a Gaussian times the product of |x_i - y| factors, normalized
/// numerically.  Serves as the infinite-coupling oracle; limited to N_A <= 4.
class AnsatzState {
 public:
  struct Options {
    double box_half_width = 6.0;  // integration window per coordinate
    int quad_points = 60;         // Gauss-Legendre points per smooth panel
  };

  explicit AnsatzState(int n_a) : AnsatzState(n_a, Options{}) {}
  AnsatzState(int n_a, Options options);

  int n_a() const { return n_a_; }
  const Options& options() const { return options_; }
  double norm_constant() const { return norm_; }

  /// Normalized amplitude at (x_1..x_{N_A}, y).
  double amplitude(std::span<const double> xs, double y) const;

  /// Kernel K(y, y') = integral exp(-x^2) |x-y| |x-y'| dx over the window.
  double pair_kernel(double y, double yp) const;

 private:
  int n_a_;
  Options options_;
  numerics::QuadratureRule rule_;
  double norm_ = 0.0;  // multiplies the bare Gaussian-product form
};

struct AnsatzObdm {
  GridRendering rendering;
  std::vector<double> occupations;  // descending, normalized to sum 1
  double entropy = 0.0;             // bits
};

/// OBDM of the ansatz for either species by deterministic quadrature;
/// occupations and entropy from the symmetrically discretized kernel.
AnsatzObdm ansatz_obdm(const AnsatzState& state, Species species, double box_half_width,
                       int n_points);

}  // namespace bosepol

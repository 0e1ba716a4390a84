#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bosepol/numerics.hpp"

namespace bosepol {

enum class Species { A, B };

/// Orthonormal harmonic-oscillator eigenfunctions at unit mass and frequency,
/// phi_0..phi_{out.size()-1} evaluated at x.  Stable up to n >= 200.
void hermite_functions(double x, std::span<double> out);

/// Single-particle oscillator basis for one species.  Species A has unit mass;
/// species B carries the mass ratio m_BA, so phi^B_n(y) = m_BA^{1/4}
/// phi_n(sqrt(m_BA) y).  Owns a Gauss-Hermite table sized to integrate
/// products of four basis functions exactly at the cutoff.
class SPBasis {
 public:
  SPBasis(Species species, double mass_ratio, int n_max);
  SPBasis(Species species, double mass_ratio, int n_max, int quad_points);

  Species species() const { return species_; }
  double mass_ratio() const { return mass_ratio_; }
  int n_max() const { return n_max_; }

  /// phi_n(x) in this species' length scale; throws std::domain_error if n is
  /// out of [0, n_max).
  double wavefunction(int n, double x) const;

  /// phi_0..phi_{out.size()-1}(x); out.size() may not exceed n_max.
  void wavefunctions(double x, std::span<double> out) const;

  const numerics::QuadratureRule& quadrature() const { return quad_; }

 private:
  Species species_;
  double mass_ratio_;
  int n_max_;
  numerics::QuadratureRule quad_;
};

double ho_wavefunction(int n, double x, const SPBasis& basis);

struct TensorLimits {
  std::size_t max_bytes = std::size_t{1} << 30;
};

/// Contact-interaction overlap integrals
///   V[m][n][p][q] = integral phi^A_m(z) phi^B_n(z) phi^A_p(z) phi^B_q(z) dz
/// stored as a symmetric matrix over composite (A mode, B mode) pairs.
class InteractionTensor {
 public:
  int n_max_a() const { return n_max_a_; }
  int n_max_b() const { return n_max_b_; }
  double mass_ratio() const { return mass_ratio_; }
  std::size_t pair_dim() const { return static_cast<std::size_t>(n_max_a_) * n_max_b_; }

  double operator()(int m, int n, int p, int q) const {
    return values_[pair_index(m, n) * pair_dim() + pair_index(p, q)];
  }

  /// Contiguous row over all (p, q) destination pairs for a fixed source pair;
  /// entry p * n_max_b + q equals V[p][q'][...] with the source indices fixed.
  std::span<const double> pair_row(int a_mode, int b_mode) const {
    return {values_.data() + pair_index(a_mode, b_mode) * pair_dim(), pair_dim()};
  }

  std::size_t pair_index(int a_mode, int b_mode) const {
    return static_cast<std::size_t>(a_mode) * n_max_b_ + b_mode;
  }

 private:
  friend InteractionTensor build_interaction_tensor(const SPBasis&, const SPBasis&,
                                                    const TensorLimits&);
  int n_max_a_ = 0;
  int n_max_b_ = 0;
  double mass_ratio_ = 1.0;
  std::vector<double> values_;
};

InteractionTensor build_interaction_tensor(const SPBasis& basis_a, const SPBasis& basis_b,
                                           const TensorLimits& limits = {});

}  // namespace bosepol

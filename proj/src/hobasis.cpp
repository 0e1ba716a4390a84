#include "bosepol/hobasis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "bosepol/errors.hpp"

namespace bosepol {

void hermite_functions(double x, std::span<double> out) {
  const std::size_t count = out.size();
  if (count == 0) return;
  const double h0 = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  out[0] = h0;
  if (count == 1) return;
  out[1] = std::numbers::sqrt2 * x * h0;
  for (std::size_t k = 2; k < count; ++k) {
    const double kd = static_cast<double>(k);
    out[k] = std::sqrt(2.0 / kd) * x * out[k - 1] - std::sqrt((kd - 1.0) / kd) * out[k - 2];
  }
}

SPBasis::SPBasis(Species species, double mass_ratio, int n_max)
    : SPBasis(species, mass_ratio, n_max, 2 * n_max + 1) {}

SPBasis::SPBasis(Species species, double mass_ratio, int n_max, int quad_points)
    : species_(species), mass_ratio_(mass_ratio), n_max_(n_max) {
  if (mass_ratio_ <= 0.0) throw ConfigError("SPBasis: mass_ratio must be positive");
  if (n_max_ < 1) throw ConfigError("SPBasis: n_max must be at least 1");
  if (species_ == Species::A && mass_ratio_ != 1.0)
    throw ConfigError("SPBasis: species A has unit mass by convention");
  quad_ = numerics::gauss_hermite(quad_points);
}

double SPBasis::wavefunction(int n, double x) const {
  if (n < 0 || n >= n_max_)
    throw std::domain_error("SPBasis::wavefunction: mode index " + std::to_string(n) +
                            " outside [0, " + std::to_string(n_max_) + ")");
  std::vector<double> buf(static_cast<std::size_t>(n) + 1);
  wavefunctions(x, buf);
  return buf.back();
}

void SPBasis::wavefunctions(double x, std::span<double> out) const {
  if (out.size() > static_cast<std::size_t>(n_max_))
    throw std::domain_error("SPBasis::wavefunctions: request exceeds n_max");
  if (mass_ratio_ == 1.0) {
    hermite_functions(x, out);
    return;
  }
  const double root = std::sqrt(mass_ratio_);
  hermite_functions(root * x, out);
  const double scale = std::pow(mass_ratio_, 0.25);
  for (auto& v : out) v *= scale;
}

double ho_wavefunction(int n, double x, const SPBasis& basis) {
  return basis.wavefunction(n, x);
}

InteractionTensor build_interaction_tensor(const SPBasis& basis_a, const SPBasis& basis_b,
                                           const TensorLimits& limits) {
  const int na = basis_a.n_max();
  const int nb = basis_b.n_max();
  const int needed = 2 * std::max(na, nb) + 1;
  const auto& quad = (basis_a.quadrature().nodes.size() >= basis_b.quadrature().nodes.size())
                         ? basis_a.quadrature()
                         : basis_b.quadrature();
  if (static_cast<int>(quad.nodes.size()) < needed)
    throw ConfigError("build_interaction_tensor: quadrature table has " +
                      std::to_string(quad.nodes.size()) + " nodes, need >= " +
                      std::to_string(needed));

  const std::size_t pair_dim = static_cast<std::size_t>(na) * nb;
  const std::size_t bytes = pair_dim * pair_dim * sizeof(double);
  if (bytes > limits.max_bytes)
    throw ResourceError("build_interaction_tensor: dense tensor would take " +
                        std::to_string(bytes) + " bytes (limit " +
                        std::to_string(limits.max_bytes) + ")");

  InteractionTensor tensor;
  tensor.n_max_a_ = na;
  tensor.n_max_b_ = nb;
  tensor.mass_ratio_ = basis_b.mass_ratio();
  tensor.values_.assign(pair_dim * pair_dim, 0.0);

  // The integrand is poly(z) * exp(-(1 + m_BA) z^2); rescale the standard rule.
  const double alpha = 1.0 + basis_b.mass_ratio();
  const double inv_root = 1.0 / std::sqrt(alpha);
  const std::size_t n_nodes = quad.nodes.size();

  // Basis-function tables at the scaled nodes.
  std::vector<double> table_a(static_cast<std::size_t>(na) * n_nodes);
  std::vector<double> table_b(static_cast<std::size_t>(nb) * n_nodes);
  std::vector<double> col_a(na), col_b(nb);
  for (std::size_t i = 0; i < n_nodes; ++i) {
    const double z = quad.nodes[i] * inv_root;
    basis_a.wavefunctions(z, col_a);
    basis_b.wavefunctions(z, col_b);
    for (int m = 0; m < na; ++m) table_a[static_cast<std::size_t>(m) * n_nodes + i] = col_a[m];
    for (int n = 0; n < nb; ++n) table_b[static_cast<std::size_t>(n) * n_nodes + i] = col_b[n];
  }

  // Canonical representatives: m <= p, n <= q; odd-parity elements stay zero.
  std::vector<double> pair_weight(n_nodes);
  for (int m = 0; m < na; ++m) {
    for (int p = m; p < na; ++p) {
      const double* am = table_a.data() + static_cast<std::size_t>(m) * n_nodes;
      const double* ap = table_a.data() + static_cast<std::size_t>(p) * n_nodes;
      for (std::size_t i = 0; i < n_nodes; ++i)
        pair_weight[i] = quad.weights[i] * am[i] * ap[i] * inv_root;
      for (int n = 0; n < nb; ++n) {
        const double* bn = table_b.data() + static_cast<std::size_t>(n) * n_nodes;
        for (int q = n; q < nb; ++q) {
          if ((m + n + p + q) % 2 != 0) continue;
          const double* bq = table_b.data() + static_cast<std::size_t>(q) * n_nodes;
          double value = 0.0;
          for (std::size_t i = 0; i < n_nodes; ++i) value += pair_weight[i] * bn[i] * bq[i];
          const std::size_t mn = tensor.pair_index(m, n);
          const std::size_t mq = tensor.pair_index(m, q);
          const std::size_t pn = tensor.pair_index(p, n);
          const std::size_t pq = tensor.pair_index(p, q);
          tensor.values_[mn * pair_dim + pq] = value;
          tensor.values_[pq * pair_dim + mn] = value;
          tensor.values_[mq * pair_dim + pn] = value;
          tensor.values_[pn * pair_dim + mq] = value;
        }
      }
    }
  }
  return tensor;
}

}  // namespace bosepol

#include "bosepol/strong_ansatz.hpp"

#include <cmath>
#include <stdexcept>

#include "bosepol/errors.hpp"

namespace bosepol {

AnsatzState::AnsatzState(int n_a, Options options) : n_a_(n_a), options_(options) {
  if (n_a_ < 1) throw ConfigError("AnsatzState: n_a must be >= 1");
  if (n_a_ > 4)
    throw ResourceError("AnsatzState: n_a > 4 is unsupported (integration cost guard)");
  rule_ = numerics::gauss_legendre(options_.quad_points);

  // <Psi|Psi> = norm^2 * integral dy exp(-y^2) K(y,y)^{N_A}.
  const double l = options_.box_half_width;
  const double overlap = numerics::integrate_mapped(rule_, -l, l, [&](double y) {
    return std::exp(-y * y) * std::pow(pair_kernel(y, y), n_a_);
  });
  norm_ = 1.0 / std::sqrt(overlap);
}

double AnsatzState::pair_kernel(double y, double yp) const {
  const double l = options_.box_half_width;
  const double kinks[2] = {y, yp};
  return numerics::integrate_split(rule_, -l, l, kinks, [&](double x) {
    return std::exp(-x * x) * std::abs(x - y) * std::abs(x - yp);
  });
}

double AnsatzState::amplitude(std::span<const double> xs, double y) const {
  if (xs.size() != static_cast<std::size_t>(n_a_))
    throw std::domain_error("AnsatzState::amplitude: wrong number of A coordinates");
  double gauss = y * y;
  double jastrow = 1.0;
  for (double x : xs) {
    gauss += x * x;
    jastrow *= std::abs(x - y);
  }
  return norm_ * std::exp(-0.5 * gauss) * jastrow;
}

namespace {

std::vector<double> mirror_grid(double box_half_width, int n_points) {
  std::vector<double> grid(n_points);
  const double h = 2.0 * box_half_width / (n_points - 1);
  for (int i = 0; i < n_points / 2; ++i) {
    const double x = box_half_width - i * h;
    grid[n_points - 1 - i] = x;
    grid[i] = -x;
  }
  if (n_points % 2 == 1) grid[n_points / 2] = 0.0;
  return grid;
}

}  // namespace

AnsatzObdm ansatz_obdm(const AnsatzState& state, Species species, double box_half_width,
                       int n_points) {
  if (n_points < 2) throw std::domain_error("ansatz_obdm: need at least 2 grid points");
  const int n_a = state.n_a();
  const double n2 = state.norm_constant() * state.norm_constant();
  const auto rule = numerics::gauss_legendre(state.options().quad_points);
  const double l = state.options().box_half_width;

  // Kernel evaluated at arbitrary positions (species' own units; equal masses
  // here, so both species share a_ho).
  auto rho = [&](double u, double v) -> double {
    if (species == Species::B) {
      return n2 * std::exp(-0.5 * (u * u + v * v)) * std::pow(state.pair_kernel(u, v), n_a);
    }
    const double kinks[2] = {u, v};
    const double inner = numerics::integrate_split(rule, -l, l, kinks, [&](double y) {
      return std::exp(-y * y) * std::abs(u - y) * std::abs(v - y) *
             std::pow(state.pair_kernel(y, y), n_a - 1);
    });
    return n_a * n2 * std::exp(-0.5 * (u * u + v * v)) * inner;
  };

  AnsatzObdm result;
  result.rendering.trace_raw = (species == Species::B) ? 1.0 : static_cast<double>(n_a);
  result.rendering.grid = mirror_grid(box_half_width, n_points);
  result.rendering.values.resize(n_points, n_points);
  for (int i = 0; i < n_points; ++i) {
    for (int j = i; j < n_points; ++j) {
      const double v = rho(result.rendering.grid[i], result.rendering.grid[j]);
      result.rendering.values(i, j) = v;
      result.rendering.values(j, i) = v;
    }
  }
  result.rendering.profile.resize(n_points);
  for (int i = 0; i < n_points; ++i) result.rendering.profile[i] = result.rendering.values(i, i);

  // Occupations from the kernel discretized on a Gauss-Legendre grid with the
  // weights folded in symmetrically.
  const auto occ_rule = numerics::gauss_legendre(state.options().quad_points);
  const int n_occ = static_cast<int>(occ_rule.nodes.size());
  Eigen::MatrixXd kernel(n_occ, n_occ);
  std::vector<double> nodes(n_occ), weights(n_occ);
  for (int i = 0; i < n_occ; ++i) {
    nodes[i] = occ_rule.nodes[i] * l;
    weights[i] = occ_rule.weights[i] * l;
  }
  for (int i = 0; i < n_occ; ++i) {
    for (int j = i; j < n_occ; ++j) {
      const double v = std::sqrt(weights[i] * weights[j]) * rho(nodes[i], nodes[j]);
      kernel(i, j) = v;
      kernel(j, i) = v;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(kernel, Eigen::EigenvaluesOnly);
  const double trace = kernel.trace();
  result.occupations.resize(n_occ);
  for (int i = 0; i < n_occ; ++i)
    result.occupations[i] = es.eigenvalues()(n_occ - 1 - i) / trace;
  result.entropy = entropy_bits(result.occupations);
  return result;
}

}  // namespace bosepol

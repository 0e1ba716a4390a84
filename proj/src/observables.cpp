#include "bosepol/observables.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bosepol/errors.hpp"

namespace bosepol {

namespace {

void check_normalized(std::span<const double> v) {
  double n2 = 0.0;
  for (double x : v) n2 += x * x;
  if (std::abs(n2 - 1.0) > 1e-8)
    throw std::domain_error("obdm: coefficient vector is not normalized");
}

// Eigendecompose the mode matrix; occupations descending, normalized by the
// raw trace.
void fill_naturals(ObdmResult& result) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(result.mode_matrix);
  const Eigen::Index n = result.mode_matrix.rows();
  result.occupations.resize(n);
  result.natural_orbitals.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index src = n - 1 - i;  // Eigen sorts ascending
    result.occupations[i] = es.eigenvalues()(src) / result.trace_raw;
    result.natural_orbitals.col(i) = es.eigenvectors().col(src);
  }
}

}  // namespace

ObdmResult obdm_B(const FockSpace& space, std::span<const double> v) {
  if (v.size() != space.dimension())
    throw std::domain_error("obdm_B: coefficient vector length mismatch");
  check_normalized(v);

  const int nb = space.params().n_max_b;
  ObdmResult result;
  result.species = Species::B;
  result.mode_matrix = Eigen::MatrixXd::Zero(nb, nb);

  // C_{S,m} C_{S,n} summed over occupation configurations S.
  const std::size_t n_occ = space.occ_count();
  std::vector<double> coeff(nb);
  for (std::size_t occ_id = 0; occ_id < n_occ; ++occ_id) {
    bool any = false;
    for (int m = 0; m < nb; ++m) {
      const std::int64_t idx = space.state_of(static_cast<std::int32_t>(occ_id), m);
      coeff[m] = idx >= 0 ? v[idx] : 0.0;
      any = any || coeff[m] != 0.0;
    }
    if (!any) continue;
    for (int m = 0; m < nb; ++m) {
      if (coeff[m] == 0.0) continue;
      for (int n = m; n < nb; ++n) result.mode_matrix(m, n) += coeff[m] * coeff[n];
    }
  }
  for (int m = 0; m < nb; ++m)
    for (int n = 0; n < m; ++n) result.mode_matrix(m, n) = result.mode_matrix(n, m);

  result.trace_raw = result.mode_matrix.trace();
  fill_naturals(result);
  return result;
}

ObdmResult obdm_A(const FockSpace& space, std::span<const double> v) {
  if (v.size() != space.dimension())
    throw std::domain_error("obdm_A: coefficient vector length mismatch");
  check_normalized(v);

  const int na = space.params().n_max_a;
  ObdmResult result;
  result.species = Species::A;
  result.mode_matrix = Eigen::MatrixXd::Zero(na, na);

  std::vector<std::uint8_t> occ_buf(static_cast<std::size_t>(na));
  for (std::size_t s = 0; s < space.dimension(); ++s) {
    const double c = v[s];
    if (c == 0.0) continue;
    const auto occ = space.occ_config(space.state_occ_id(s));
    const int mode_b = space.state_mode_b(s);
    std::copy(occ.begin(), occ.end(), occ_buf.begin());
    for (int q = 0; q < na; ++q) {
      if (!occ[q]) continue;
      // diagonal: <a+_q a_q> = occ[q]
      result.mode_matrix(q, q) += c * c * occ[q];
      const double sq = std::sqrt(static_cast<double>(occ[q]));
      occ_buf[q] -= 1;
      for (int p = q + 1; p < na; ++p) {
        occ_buf[p] += 1;
        const std::int32_t occ_id = space.find_occ(occ_buf);
        occ_buf[p] -= 1;
        if (occ_id < 0) continue;
        const std::int64_t t = space.state_of(occ_id, mode_b);
        if (t < 0) continue;
        const double amp = c * v[t] * sq * std::sqrt(static_cast<double>(occ[p]) + 1.0);
        result.mode_matrix(p, q) += amp;  // fill one triangle; mirror below
      }
      occ_buf[q] += 1;
    }
  }
  for (int p = 0; p < na; ++p)
    for (int q = p + 1; q < na; ++q) result.mode_matrix(p, q) = result.mode_matrix(q, p);

  result.trace_raw = result.mode_matrix.trace();
  fill_naturals(result);
  return result;
}

double entropy_bits(std::span<const double> occupations) {
  double s = 0.0;
  for (double lambda : occupations) {
    if (lambda < 1e-14) continue;
    s -= lambda * std::log2(lambda);
  }
  return s;
}

double entanglement_entropy(const ObdmResult& obdm) { return entropy_bits(obdm.occupations); }

GridRendering render_grid(const ObdmResult& obdm, const SPBasis& basis, double box_half_width,
                          int n_points) {
  if (n_points < 2) throw std::domain_error("render_grid: need at least 2 grid points");
  const int n_modes = static_cast<int>(obdm.mode_matrix.rows());
  if (n_modes > basis.n_max())
    throw std::domain_error("render_grid: OBDM has more modes than the basis");

  GridRendering rendering;
  rendering.trace_raw = obdm.trace_raw;
  rendering.grid.resize(n_points);
  // Exactly mirror-symmetric grid so parity symmetry survives in floating point.
  const double h = 2.0 * box_half_width / (n_points - 1);
  for (int i = 0; i < n_points / 2; ++i) {
    const double x = box_half_width - i * h;
    rendering.grid[n_points - 1 - i] = x;
    rendering.grid[i] = -x;
  }
  if (n_points % 2 == 1) rendering.grid[n_points / 2] = 0.0;

  // Positions are in the species' own oscillator length, where both species'
  // basis functions reduce to the unit-scale Hermite functions.
  Eigen::MatrixXd table(n_points, n_modes);
  std::vector<double> row(static_cast<std::size_t>(n_modes));
  for (int i = 0; i < n_points; ++i) {
    hermite_functions(rendering.grid[i], row);
    for (int m = 0; m < n_modes; ++m) table(i, m) = row[m];
  }
  rendering.values = table * obdm.mode_matrix * table.transpose();
  rendering.profile.resize(n_points);
  for (int i = 0; i < n_points; ++i) rendering.profile[i] = rendering.values(i, i);
  return rendering;
}

std::optional<ThresholdScan> threshold_mass_scan(std::span<const double> mass_ratios,
                                                 std::span<const double> lambda0_b) {
  if (mass_ratios.size() != lambda0_b.size())
    throw std::domain_error("threshold_mass_scan: length mismatch");
  if (mass_ratios.size() < 3)
    throw std::domain_error("threshold_mass_scan: need at least 3 sweep points");
  for (std::size_t i = 1; i < mass_ratios.size(); ++i)
    if (mass_ratios[i] <= mass_ratios[i - 1])
      throw std::domain_error("threshold_mass_scan: mass ratios must ascend");

  std::size_t best = 0;
  for (std::size_t i = 1; i < lambda0_b.size(); ++i)
    if (lambda0_b[i] < lambda0_b[best]) best = i;
  if (best == 0 || best + 1 == lambda0_b.size()) return std::nullopt;

  ThresholdScan scan;
  scan.index = best;
  scan.m_grid = mass_ratios[best];
  // Parabola through the three bracketing points.
  const double x0 = mass_ratios[best - 1], x1 = mass_ratios[best], x2 = mass_ratios[best + 1];
  const double y0 = lambda0_b[best - 1], y1 = lambda0_b[best], y2 = lambda0_b[best + 1];
  const double d01 = (y1 - y0) / (x1 - x0);
  const double d12 = (y2 - y1) / (x2 - x1);
  const double curv = (d12 - d01) / (x2 - x0);
  scan.m_refined = (curv > 0.0) ? 0.5 * (x0 + x1 - d01 / curv) : scan.m_grid;
  scan.m_refined = std::clamp(scan.m_refined, x0, x2);
  return scan;
}

}  // namespace bosepol

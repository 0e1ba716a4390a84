#include "bosepol/polaron.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>

#include "bosepol/errors.hpp"

namespace bosepol {

int FdGrid::nearest_index(double x) const {
  const int i = static_cast<int>(std::lround((x + box_half_width) / step()));
  return std::clamp(i, 0, n_points - 1);
}

namespace {

double trapezoid_norm2(std::span<const double> f, double h) {
  double s = 0.0;
  for (double v : f) s += v * v;
  s -= 0.5 * (f.front() * f.front() + f.back() * f.back());
  return s * h;
}

void normalize_trapezoid(std::vector<double>& f, double h) {
  const double n = std::sqrt(trapezoid_norm2(f, h));
  for (auto& v : f) v /= n;
}

// Deterministic sign: positive at x = y - 3 where the state has support
// there, otherwise positive at its largest-magnitude node.
void fix_sign(std::vector<double>& f, const FdGrid& grid, double y) {
  const int ref = grid.nearest_index(y - 3.0);
  double max_abs = 0.0;
  int max_at = 0;
  for (int i = 0; i < grid.n_points; ++i) {
    if (std::abs(f[i]) > max_abs) {
      max_abs = std::abs(f[i]);
      max_at = i;
    }
  }
  const double pivot = (std::abs(f[ref]) > 1e-12 * max_abs) ? f[ref] : f[max_at];
  if (pivot < 0.0)
    for (auto& v : f) v = -v;
}

}  // namespace

DeltaBoundarySolution solve_delta_sp(double y, double g, const FdGrid& grid) {
  if (y <= -grid.box_half_width || y >= grid.box_half_width)
    throw std::domain_error("solve_delta_sp: y outside the grid");
  if (g < 0.0) throw std::domain_error("solve_delta_sp: g must be >= 0");

  const int n = grid.n_points;
  const double h = grid.step();
  const double kin = 1.0 / (h * h);  // -1/2 d^2/dx^2, 3-point stencil
  std::vector<double> diag(n), off(n - 1, -0.5 * kin);
  for (int i = 0; i < n; ++i) {
    const double x = grid.position(i);
    diag[i] = kin + 0.5 * x * x;
  }
  diag[grid.nearest_index(y)] += g / h;  // delta as weight g/h at the nearest node

  // The ground level sits in [1/2, 3/2]; the window shortcut is safe because
  // the search falls back to Gershgorin when it fails to bracket.
  auto pair = numerics::tridiag_eigenpair(diag, off, 0, {0.0, 2.5, 1e-12});
  DeltaBoundarySolution sol;
  sol.y = y;
  sol.g = g;
  sol.eps = pair.value;
  sol.f = std::move(pair.vector);
  sol.grid = grid;
  normalize_trapezoid(sol.f, h);
  fix_sign(sol.f, grid, y);
  return sol;
}

DeltaBoundarySolution solve_delta_sp_hardcore(double y, const FdGrid& grid) {
  if (y <= -grid.box_half_width || y >= grid.box_half_width)
    throw std::domain_error("solve_delta_sp_hardcore: y outside the grid");

  const int n = grid.n_points;
  const double h = grid.step();
  const double kin = 1.0 / (h * h);
  const int node = grid.nearest_index(y);

  // Dirichlet node at y splits the problem into independent left/right blocks.
  auto solve_block = [&](int lo, int hi) -> numerics::TridiagEigenpair {  // [lo, hi)
    const int m = hi - lo;
    std::vector<double> diag(m), off(std::max(0, m - 1), -0.5 * kin);
    for (int i = 0; i < m; ++i) {
      const double x = grid.position(lo + i);
      diag[i] = kin + 0.5 * x * x;
    }
    return numerics::tridiag_eigenpair(diag, off, 0);
  };

  DeltaBoundarySolution sol;
  sol.y = y;
  sol.g = std::numeric_limits<double>::infinity();
  sol.hard_core = true;
  sol.grid = grid;
  sol.f.assign(n, 0.0);

  const bool has_left = node > 1;
  const bool has_right = node < n - 2;
  numerics::TridiagEigenpair left, right;
  if (has_left) left = solve_block(0, node);
  if (has_right) right = solve_block(node + 1, n);
  if (!has_left && !has_right)
    throw std::domain_error("solve_delta_sp_hardcore: grid too small");

  const bool use_left = has_left && (!has_right || left.value <= right.value);
  if (use_left) {
    sol.eps = left.value;
    std::copy(left.vector.begin(), left.vector.end(), sol.f.begin());
  } else {
    sol.eps = right.value;
    std::copy(right.vector.begin(), right.vector.end(), sol.f.begin() + node + 1);
  }
  normalize_trapezoid(sol.f, h);
  fix_sign(sol.f, grid, y);
  return sol;
}

namespace {

double q11_from_center(const DeltaBoundarySolution& center, double g, int n_a,
                       const FdGrid& grid, double h_y) {
  const double y = center.y;
  auto plus = solve_delta_sp(y + h_y, g, grid);
  auto minus = solve_delta_sp(y - h_y, g, grid);

  const double h = grid.step();
  auto align = [&](std::vector<double>& f) {
    double overlap = 0.0;
    for (int i = 0; i < grid.n_points; ++i) overlap += f[i] * center.f[i];
    overlap *= h;
    if (std::abs(overlap) < 0.5)
      throw ContinuityError("q11: eigenfunction overlap dropped below 0.5 at y = " +
                            std::to_string(y));
    if (overlap < 0.0)
      for (auto& v : f) v = -v;
  };
  align(plus.f);
  align(minus.f);

  double integral = 0.0;
  for (int i = 0; i < grid.n_points; ++i) {
    const double d = (plus.f[i] - minus.f[i]) / (2.0 * h_y);
    const double w = (i == 0 || i == grid.n_points - 1) ? 0.5 : 1.0;
    integral += w * d * d;
  }
  integral *= h;
  return -0.5 * n_a * integral;
}

}  // namespace

double q11(double y, double g, int n_a, const FdGrid& grid, double h_y) {
  if (n_a < 1) throw std::domain_error("q11: n_a must be >= 1");
  if (y - h_y <= -grid.box_half_width || y + h_y >= grid.box_half_width)
    throw std::domain_error("q11: y +- h_y outside the grid");
  const auto center = solve_delta_sp(y, g, grid);
  return q11_from_center(center, g, n_a, grid, h_y);
}

namespace {

struct EffectiveTables {
  std::vector<double> y, eps, q11v, w;
};

EffectiveTables tabulate(int n_a, double g, double mass_ratio, double y_half, int y_points,
                         const FdGrid& x_grid, double h_y) {
  EffectiveTables t;
  t.y.resize(y_points);
  t.eps.resize(y_points);
  t.q11v.resize(y_points);
  t.w.resize(y_points);
  const double dy = 2.0 * y_half / (y_points - 1);
  // eps and Q11 are even in y (parity of the trap); solve the right half and
  // mirror.  y_points is odd, so index (y_points-1)/2 sits at y = 0.
  const int center = (y_points - 1) / 2;
  for (int i = center; i < y_points; ++i) {
    const double y = (i == center) ? 0.0 : -y_half + i * dy;
    const auto sol = solve_delta_sp(y, g, x_grid);
    t.eps[i] = sol.eps;
    t.q11v[i] = (g == 0.0) ? 0.0 : q11_from_center(sol, g, n_a, x_grid, h_y);
  }
  for (int i = 0; i < y_points; ++i) {
    if (i < center) {
      t.y[i] = -(-y_half + (y_points - 1 - i) * dy);
      t.eps[i] = t.eps[y_points - 1 - i];
      t.q11v[i] = t.q11v[y_points - 1 - i];
    } else {
      t.y[i] = (i == center) ? 0.0 : -y_half + i * dy;
    }
    t.w[i] = n_a * t.eps[i] - t.q11v[i] / mass_ratio + 0.5 * mass_ratio * t.y[i] * t.y[i];
  }
  return t;
}

// Lowest eigenpair of -(1/2m) d^2/dy^2 + W(y) with Dirichlet ends.
numerics::TridiagEigenpair effective_ground(const std::vector<double>& w, double dy,
                                            double mass_ratio) {
  const int n = static_cast<int>(w.size());
  const double kin = 1.0 / (mass_ratio * dy * dy);
  std::vector<double> diag(n), off(n - 1, -0.5 * kin);
  for (int i = 0; i < n; ++i) diag[i] = kin + w[i];
  return numerics::tridiag_eigenpair(diag, off, 0);
}

}  // namespace

AdiabaticPotential solve_effective(int n_a, double g, double mass_ratio,
                                   const EffectiveOptions& options) {
  if (n_a < 1) throw std::domain_error("solve_effective: n_a must be >= 1");
  if (mass_ratio <= 0.0) throw std::domain_error("solve_effective: mass_ratio must be > 0");
  if (g < 0.0) throw std::domain_error("solve_effective: g must be >= 0");

  const int n = options.y_points;
  if (n < 5 || n % 2 == 0)
    throw ConfigError("solve_effective: y_points must be odd and >= 5");

  const auto base = tabulate(n_a, g, mass_ratio, options.y_half_width, n, options.x_grid,
                             options.h_y);
  const double dy = 2.0 * options.y_half_width / (n - 1);
  auto ground = effective_ground(base.w, dy, mass_ratio);

  // One step of Richardson extrapolation in the y step: redo on the doubled
  // grid (exact tables at the midpoints too) and combine as (4 E_half - E)/3.
  const int n_half = 2 * n - 1;
  const auto fine = tabulate(n_a, g, mass_ratio, options.y_half_width, n_half, options.x_grid,
                             options.h_y);
  const auto ground_half = effective_ground(fine.w, 0.5 * dy, mass_ratio);
  const double energy = (4.0 * ground_half.value - ground.value) / 3.0;
  if (std::abs(ground_half.value - ground.value) > 0.05 * std::max(1.0, std::abs(energy)))
    throw ConvergenceError("solve_effective: y grid too coarse (eigenvalue moved by " +
                           std::to_string(ground_half.value - ground.value) +
                           " under refinement)");

  AdiabaticPotential result;
  result.y = base.y;
  result.eps = base.eps;
  result.q11 = base.q11v;
  result.potential = base.w;
  result.phi = std::move(ground.vector);
  normalize_trapezoid(result.phi, dy);
  const auto max_it = std::max_element(result.phi.begin(), result.phi.end(),
                                       [](double a, double b) { return std::abs(a) < std::abs(b); });
  if (*max_it < 0.0)
    for (auto& v : result.phi) v = -v;
  result.energy = energy;
  result.n_a = n_a;
  result.g = g;
  result.mass_ratio = mass_ratio;
  return result;
}

ValidityReport validity_check(int n_a, double g, double mass_ratio,
                              const EffectiveOptions& options) {
  return validity_check(solve_effective(n_a, g, mass_ratio, options));
}

ValidityReport validity_check(const AdiabaticPotential& pot) {
  ValidityReport report;
  const int center = static_cast<int>(pot.y.size()) / 2;
  report.barrier = -pot.q11[center] / pot.mass_ratio;
  const double dy = pot.y[1] - pot.y[0];
  double weight = 0.0;
  for (std::size_t i = 0; i < pot.y.size(); ++i)
    if (std::abs(pot.y[i]) < 0.5) weight += pot.phi[i] * pot.phi[i] * dy;
  report.central_weight = weight;
  if (report.central_weight > 0.10 && report.barrier > 1.0) {
    report.valid = false;
    report.message =
        "impurity density sits on the derivative wall (weight " +
        std::to_string(report.central_weight) + " within |y| < 0.5, barrier " +
        std::to_string(report.barrier) + "); adiabatic energies are unreliable here";
  } else {
    report.message = "adiabatic single-band treatment applicable";
  }
  return report;
}

}  // namespace bosepol

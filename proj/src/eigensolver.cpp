#include "bosepol/eigensolver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "bosepol/errors.hpp"
#include "bosepol/numerics.hpp"

namespace bosepol {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace

SpectrumResult lowest_eigenpairs(const SparseHamiltonian& h, const LanczosOptions& opts) {
  const std::size_t dim = h.dimension();
  if (opts.k < 1) throw std::domain_error("lowest_eigenpairs: k must be >= 1");
  if (static_cast<std::size_t>(opts.k) > dim)
    throw std::domain_error("lowest_eigenpairs: k exceeds the dimension");

  const int max_steps = static_cast<int>(std::min<std::size_t>(opts.max_iter, dim));

  // Seeded random start vector.
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<std::vector<double>> basis;  // Lanczos vectors
  basis.emplace_back(dim);
  for (auto& x : basis[0]) x = uni(rng);
  {
    const double n0 = norm(basis[0]);
    for (auto& x : basis[0]) x /= n0;
  }

  std::vector<double> alpha, beta;  // T diagonal / off-diagonal
  std::vector<double> w(dim);
  double spectrum_scale = 1.0;

  // Residual bound |b * s_{m,i}| for the k lowest Ritz pairs of the current
  // m x m tridiagonal matrix, with b the norm of the next Lanczos vector.
  auto ritz_converged = [&](int steps, double b) -> bool {
    if (steps < opts.k + 2) return false;
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(steps, steps);
    for (int i = 0; i < steps; ++i) {
      t(i, i) = alpha[i];
      if (i + 1 < steps) {
        t(i, i + 1) = beta[i];
        t(i + 1, i) = beta[i];
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    for (int i = 0; i < opts.k; ++i) {
      const double bound = std::abs(b * es.eigenvectors()(steps - 1, i));
      if (bound > 0.1 * opts.tol * spectrum_scale) return false;
    }
    return true;
  };

  bool exhausted = false;
  int steps = 0;
  while (true) {
    const auto& v = basis[steps];
    h.matvec(v, w);
    if (steps > 0) {
      const double b_prev = beta[steps - 1];
      const auto& prev = basis[steps - 1];
      for (std::size_t i = 0; i < dim; ++i) w[i] -= b_prev * prev[i];
    }
    const double a = dot(w, v);
    alpha.push_back(a);
    for (std::size_t i = 0; i < dim; ++i) w[i] -= a * v[i];
    // Full reorthogonalization, two passes.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& u : basis) {
        const double c = dot(w, u);
        for (std::size_t i = 0; i < dim; ++i) w[i] -= c * u[i];
      }
    }
    ++steps;
    spectrum_scale = std::max(spectrum_scale, std::abs(a));

    const double b = norm(w);
    if (b < 1e-13 * spectrum_scale) {
      exhausted = true;  // invariant subspace; T is exact on it
      break;
    }
    if (static_cast<std::size_t>(steps) == dim) {
      exhausted = true;
      break;
    }
    if (steps == max_steps) break;
    if (steps % 10 == 0 && ritz_converged(steps, b)) break;

    beta.push_back(b);
    basis.emplace_back(dim);
    for (std::size_t i = 0; i < dim; ++i) basis[steps][i] = w[i] / b;
  }

  // Ritz pairs from the final tridiagonal matrix.
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(steps, steps);
  for (int i = 0; i < steps; ++i) {
    t(i, i) = alpha[i];
    if (i + 1 < steps) {
      t(i, i + 1) = beta[i];
      t(i + 1, i) = beta[i];
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);

  const int k_avail = std::min<int>(opts.k, steps);
  SpectrumResult result;
  result.meta = h.meta();
  result.iterations = steps;
  std::vector<double> hv(dim);
  for (int i = 0; i < k_avail; ++i) {
    std::vector<double> vec(dim, 0.0);
    for (int j = 0; j < steps; ++j) {
      const double c = es.eigenvectors()(j, i);
      const auto& u = basis[j];
      for (std::size_t r = 0; r < dim; ++r) vec[r] += c * u[r];
    }
    const double vn = norm(vec);
    for (auto& x : vec) x /= vn;
    h.matvec(vec, hv);
    const double lambda = es.eigenvalues()(i);
    double res = 0.0;
    for (std::size_t r = 0; r < dim; ++r) {
      const double d = hv[r] - lambda * vec[r];
      res += d * d;
    }
    result.eigenvalues.push_back(lambda);
    result.eigenvectors.push_back(std::move(vec));
    result.residuals.push_back(std::sqrt(res));
  }

  if (!exhausted) {
    bool ok = true;
    for (int i = 0; i < k_avail; ++i)
      if (result.residuals[i] > opts.tol * spectrum_scale) ok = false;
    if (!ok && steps >= max_steps)
      throw IterationError("lowest_eigenpairs: no convergence after " +
                               std::to_string(steps) + " iterations",
                           result.residuals);
  }
  return result;
}

SpectrumResult dense_spectrum(const SparseHamiltonian& h) {
  const std::size_t dim = h.dimension();
  if (dim > 2000)
    throw ResourceError("dense_spectrum: dimension " + std::to_string(dim) + " exceeds 2000");

  Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(dim, dim);
  const auto rp = h.row_ptr();
  const auto cols = h.cols();
  const auto vals = h.values();
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t k = rp[r]; k < rp[r + 1]; ++k) dense(r, cols[k]) = vals[k];

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
  SpectrumResult result;
  result.meta = h.meta();
  std::vector<double> hv(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<double> vec(dim);
    for (std::size_t r = 0; r < dim; ++r) vec[r] = es.eigenvectors()(r, i);
    h.matvec(vec, hv);
    const double lambda = es.eigenvalues()(i);
    double res = 0.0;
    for (std::size_t r = 0; r < dim; ++r) {
      const double d = hv[r] - lambda * vec[r];
      res += d * d;
    }
    result.eigenvalues.push_back(lambda);
    result.eigenvectors.push_back(std::move(vec));
    result.residuals.push_back(std::sqrt(res));
  }
  return result;
}

}  // namespace bosepol

#pragma once

#include <cstdint>
#include <vector>

#include "bosepol/fockspace.hpp"

namespace bosepol {

/// Lowest eigenpairs of a symmetric sparse operator, eigenvalues ascending,
/// eigenvectors unit 2-norm, explicit residuals ||Hv - Ev|| per pair.
struct SpectrumResult {
  std::vector<double> eigenvalues;
  std::vector<std::vector<double>> eigenvectors;
  std::vector<double> residuals;
  HamiltonianMeta meta;
  int iterations = 0;
};

struct LanczosOptions {
  int k = 4;
  double tol = 1e-10;
  int max_iter = 500;
  std::uint64_t seed = 0x5eedULL;
};

/// Lanczos with full reorthogonalization and a seeded random start vector.
SpectrumResult lowest_eigenpairs(const SparseHamiltonian& h, const LanczosOptions& opts = {});

/// Full dense symmetric eigendecomposition; oracle for dimensions <= 2000.
SpectrumResult dense_spectrum(const SparseHamiltonian& h);

}  // namespace bosepol

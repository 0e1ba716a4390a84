#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bosepol::numerics {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Hermite rule in "total weight" form: nodes t_i of the rule for
/// weight exp(-t^2), weights W_i = w_i * exp(t_i^2).  For any alpha > 0 and any
/// f(z) = p(z) * exp(-alpha z^2) with deg p <= 2n-1,
///
///   integral f(z) dz = (1/sqrt(alpha)) * sum_i W_i f(t_i / sqrt(alpha)).
///
/// The total-weight form never underflows for n <= 320 (guarded).
QuadratureRule gauss_hermite(int n);

/// n-point Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(int n);

/// Integrate f over [a, b] with a Gauss-Legendre rule mapped affinely.
double integrate_mapped(const QuadratureRule& rule, double a, double b,
                        const std::function<double(double)>& f);

/// Integrate f over [a, b], splitting the interval at the given interior kink
/// positions so each panel sees a smooth integrand.  Split points outside
/// (a, b) are ignored.
double integrate_split(const QuadratureRule& rule, double a, double b,
                       std::span<const double> kinks,
                       const std::function<double(double)>& f);

/// Number of eigenvalues of the symmetric tridiagonal matrix (diag, off)
/// strictly below x (Sturm count).
int tridiag_count_below(std::span<const double> diag, std::span<const double> off, double x);

/// which-th smallest eigenvalue (0-based) by bisection, to near machine precision.
double tridiag_eigenvalue(std::span<const double> diag, std::span<const double> off, int which);

/// The k smallest eigenvalues, ascending.
std::vector<double> tridiag_eigenvalues(std::span<const double> diag,
                                        std::span<const double> off, int k);

struct TridiagEigenpair {
  double value = 0.0;
  std::vector<double> vector;  // unit 2-norm
};

/// Optional search window and absolute tolerance for the bisection; a window
/// that fails to bracket the requested eigenvalue falls back to Gershgorin.
struct TridiagSearch {
  double lo = 0.0;
  double hi = 0.0;  // lo >= hi means "use Gershgorin bounds"
  double tol = 0.0; // <= 0 means "bisect to adjacent doubles"
};

double tridiag_eigenvalue(std::span<const double> diag, std::span<const double> off, int which,
                          const TridiagSearch& search);

/// which-th smallest eigenpair via bisection + inverse iteration.
TridiagEigenpair tridiag_eigenpair(std::span<const double> diag,
                                   std::span<const double> off, int which,
                                   const TridiagSearch& search = {});

/// Bisection root finder; f(lo) and f(hi) must have opposite signs.
double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   double tol = 1e-13, int max_iter = 240);

/// FNV-1a 64-bit content hash.
std::uint64_t fnv1a64(std::string_view data);

/// Locale-independent decimal formatting ('.' separator, 12 significant digits).
std::string format_double(double v);

}  // namespace bosepol::numerics

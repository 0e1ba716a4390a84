#include "bosepol/numerics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

#include "bosepol/errors.hpp"

namespace bosepol::numerics {

namespace {

// Orthonormal Hermite functions h_0..h_{count-1} at x via the stable
// three-term recurrence; h_k(x) = H_k(x) exp(-x^2/2) / sqrt(2^k k! sqrt(pi)).
void hermite_function_table(double x, std::span<double> out) {
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

}  // namespace

QuadratureRule gauss_hermite(int n) {
  if (n < 1) throw ConfigError("gauss_hermite: need at least one node");
  if (n > 320) throw ConfigError("gauss_hermite: rule size > 320 would underflow the weight sums");

  // Nodes are the eigenvalues of the Jacobi matrix (diag 0, off sqrt(k/2)).
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = std::sqrt(0.5 * k);
    jacobi(k, k - 1) = b;
    jacobi(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi, Eigen::EigenvaluesOnly);

  QuadratureRule rule;
  rule.nodes.resize(n);
  for (int i = 0; i < n; ++i) rule.nodes[i] = es.eigenvalues()(i);
  std::sort(rule.nodes.begin(), rule.nodes.end());
  // Symmetrize so odd integrands cancel exactly.
  for (int i = 0; i < n / 2; ++i) {
    const double t = 0.5 * (rule.nodes[n - 1 - i] - rule.nodes[i]);
    rule.nodes[i] = -t;
    rule.nodes[n - 1 - i] = t;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;

  // Total weight W_i = w_i exp(t_i^2) = 1 / sum_k h_k(t_i)^2, which stays in
  // range even where the bare w_i would underflow.
  rule.weights.resize(n);
  std::vector<double> h(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    hermite_function_table(rule.nodes[i], h);
    double s = 0.0;
    for (double v : h) s += v * v;
    rule.weights[i] = 1.0 / s;
  }
  return rule;
}

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw ConfigError("gauss_legendre: need at least one node");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // Newton iteration from the Chebyshev initial guess.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

double integrate_mapped(const QuadratureRule& rule, double a, double b,
                        const std::function<double(double)>& f) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return half * sum;
}

double integrate_split(const QuadratureRule& rule, double a, double b,
                       std::span<const double> kinks,
                       const std::function<double(double)>& f) {
  std::vector<double> edges{a, b};
  for (double k : kinks) {
    if (k > a && k < b) edges.push_back(k);
  }
  std::sort(edges.begin(), edges.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (edges[i + 1] > edges[i]) total += integrate_mapped(rule, edges[i], edges[i + 1], f);
  }
  return total;
}

int tridiag_count_below(std::span<const double> diag, std::span<const double> off, double x) {
  const std::size_t n = diag.size();
  int count = 0;
  double d = 1.0;
  constexpr double tiny = 1e-300;
  for (std::size_t i = 0; i < n; ++i) {
    const double off2 = (i == 0) ? 0.0 : off[i - 1] * off[i - 1];
    d = diag[i] - x - off2 / d;
    if (d == 0.0) d = -tiny;
    if (d < 0.0) ++count;
  }
  return count;
}

namespace {

std::pair<double, double> tridiag_bounds(std::span<const double> diag,
                                         std::span<const double> off) {
  const std::size_t n = diag.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(off[i - 1]) : 0.0) + (i + 1 < n ? std::abs(off[i]) : 0.0);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }
  return {lo, hi};
}

}  // namespace

double tridiag_eigenvalue(std::span<const double> diag, std::span<const double> off, int which) {
  return tridiag_eigenvalue(diag, off, which, TridiagSearch{});
}

double tridiag_eigenvalue(std::span<const double> diag, std::span<const double> off, int which,
                          const TridiagSearch& search) {
  if (which < 0 || static_cast<std::size_t>(which) >= diag.size())
    throw std::domain_error("tridiag_eigenvalue: index out of range");
  double lo, hi;
  bool use_window = search.lo < search.hi;
  if (use_window) {
    lo = search.lo;
    hi = search.hi;
    if (tridiag_count_below(diag, off, lo) > which || tridiag_count_below(diag, off, hi) <= which)
      use_window = false;
  }
  if (!use_window) {
    auto bounds = tridiag_bounds(diag, off);
    lo = bounds.first;
    hi = bounds.second;
  }
  while (!(search.tol > 0.0) || hi - lo > search.tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (tridiag_count_below(diag, off, mid) > which) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> tridiag_eigenvalues(std::span<const double> diag,
                                        std::span<const double> off, int k) {
  std::vector<double> out;
  out.reserve(k);
  for (int i = 0; i < k; ++i) out.push_back(tridiag_eigenvalue(diag, off, i));
  return out;
}

TridiagEigenpair tridiag_eigenpair(std::span<const double> diag,
                                   std::span<const double> off, int which,
                                   const TridiagSearch& search) {
  const std::size_t n = diag.size();
  TridiagEigenpair result;
  result.value = tridiag_eigenvalue(diag, off, which, search);

  // Inverse iteration on (T - sigma I) with a slightly de-tuned shift; the
  // tridiagonal solve uses partial pivoting (dgtsv style).
  const double scale = std::max(1.0, std::abs(result.value));
  const double sigma = result.value + 1e-11 * scale;
  std::vector<double> v(n, 1.0);
  for (std::size_t i = 0; i < n; i += 2) v[i] = 0.5;  // break symmetric ties deterministically

  std::vector<double> dl(n), dd(n), du(n), du2(n), rhs(n);
  std::vector<int> piv(n);
  for (int iter = 0; iter < 4; ++iter) {
    for (std::size_t i = 0; i < n; ++i) {
      dd[i] = diag[i] - sigma;
      dl[i] = (i + 1 < n) ? off[i] : 0.0;
      du[i] = (i + 1 < n) ? off[i] : 0.0;
      du2[i] = 0.0;
    }
    // LU factorization with partial pivoting.
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (std::abs(dd[i]) >= std::abs(dl[i])) {
        piv[i] = 0;
        if (dd[i] == 0.0) dd[i] = 1e-300;
        const double m = dl[i] / dd[i];
        dl[i] = m;
        dd[i + 1] -= m * du[i];
      } else {
        piv[i] = 1;
        const double m = dd[i] / dl[i];
        std::swap(dd[i], dl[i]);
        const double tmp = du[i];
        du[i] = dd[i + 1];
        dd[i + 1] = tmp - m * dd[i + 1];
        if (i + 2 < n) {
          du2[i] = du[i + 1];
          du[i + 1] = -m * du[i + 1];
        }
        dl[i] = m;
      }
    }
    if (dd[n - 1] == 0.0) dd[n - 1] = 1e-300;

    rhs = v;
    // Forward substitution.
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (piv[i] == 0) {
        rhs[i + 1] -= dl[i] * rhs[i];
      } else {
        std::swap(rhs[i], rhs[i + 1]);
        rhs[i + 1] -= dl[i] * rhs[i];
      }
    }
    // Back substitution.
    rhs[n - 1] /= dd[n - 1];
    if (n >= 2) {
      rhs[n - 2] = (rhs[n - 2] - du[n - 2] * rhs[n - 1]) / dd[n - 2];
    }
    for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(n) - 3; i >= 0; --i) {
      rhs[i] = (rhs[i] - du[i] * rhs[i + 1] - du2[i] * rhs[i + 2]) / dd[i];
    }

    double norm = 0.0;
    for (double x : rhs) norm += x * x;
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < n; ++i) v[i] = rhs[i] / norm;
  }
  result.vector = std::move(v);
  return result;
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   double tol, int max_iter) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0))
    throw std::domain_error("bisect_root: interval does not bracket a root");
  for (int i = 0; i < max_iter && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  return hash;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
  return std::string(buf, ptr);
}

}  // namespace bosepol::numerics

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bosepol/eigensolver.hpp"
#include "bosepol/observables.hpp"

namespace bosepol {

enum class SolverKind { ed, polaron, both };

/// bare: assemble with the requested g (slow ~1/sqrt(n_max) tail, Richardson
/// optional).  effective: renormalize to g* so the truncated two-body problem
/// reproduces its exact energy; converges much faster at strong coupling.
enum class CouplingScheme { bare, effective };

/// Declarative description of a run: a single point or a sweep over g and/or
/// the mass ratio, plus truncation, observable toggles, and output placement.
struct RunConfig {
  int n_a = 2;
  SolverKind solver = SolverKind::ed;
  std::vector<double> g_values{0.0};
  std::vector<double> m_values{1.0};

  // Truncation.  quanta Q sets e_cut = Q + vacuum and n_max = Q + 1 unless
  // the explicit fields override; 0 means "derive a default from n_a".
  int quanta = 0;
  int n_max_a = 0;
  int n_max_b = 0;
  std::optional<double> e_cut;
  bool use_e_cut = true;  // false: pure mode truncation (clean 1/sqrt(n_max) tail)
  CouplingScheme coupling = CouplingScheme::bare;
  bool richardson = false;
  std::vector<int> ladder;  // converge rungs, in quanta (or n_max, see use_e_cut)

  std::set<std::string> observables{"spectrum"};
  std::string out_dir;
  std::uint64_t seed = 1;
  int jobs = 1;
  int k_levels = 4;
  double grid_half_width = 5.0;
  int grid_points = 201;
  double lanczos_tol = 1e-10;
  int max_iter = 600;

  void validate() const;  // throws ConfigError
};

/// Parse "key = value" lines; '#' starts a comment; lists are comma-separated
/// and linspace(a,b,n) expands to a uniform grid.
RunConfig parse_config_file(const std::filesystem::path& path);
void apply_config_entry(RunConfig& config, const std::string& key, const std::string& value);

int default_quanta(int n_a);

struct Cutoffs {
  int n_max_a = 1;
  int n_max_b = 1;
  std::optional<double> e_cut;
};
Cutoffs derive_cutoffs(const RunConfig& config, int quanta_override = 0);

/// One solved sweep point (even/odd ED blocks and optional observables), used
/// by both the CLI driver and the test suites.
struct EdPointResult {
  SpectrumResult even;
  SpectrumResult odd;
  std::optional<ObdmResult> obdm_a;
  std::optional<ObdmResult> obdm_b;
  double entropy_bits = 0.0;
  double g_assembled = 0.0;  // equals g for the bare scheme, g* otherwise
  Cutoffs cutoffs;
};

EdPointResult solve_ed_point(const RunConfig& config, double g, double mass_ratio,
                             const InteractionTensor& tensor, const Cutoffs& cutoffs,
                             bool with_obdm);

/// run/converge/golden subcommand entry points; return the process exit code
/// (0 clean, 1 when any point errored, 2 on configuration problems).
int run_sweep(const RunConfig& config, std::ostream& log);
int run_converge(const RunConfig& config, std::ostream& log);
int run_golden(const RunConfig& config, std::ostream& log);

}  // namespace bosepol

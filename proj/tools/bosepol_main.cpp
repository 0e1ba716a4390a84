// Sweep driver for the trapped boson + impurity solvers.
//
//   bosepol run      --config sweep.cfg --out results/
//   bosepol converge --na 2 --g 20 --ladder 24,32,40 --richardson true
//   bosepol golden   --na 2 --out golden/
//
// Configuration comes from an optional "key = value" file; command-line
// flags win over file entries.  BOSEPOL_OUT sets the default output
// directory.

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "bosepol/errors.hpp"
#include "bosepol/sweep.hpp"

namespace {

struct CliOverrides {
  std::vector<std::pair<std::string, std::string>> entries;

  void add_flag(CLI::App* cmd, const std::string& flag, const std::string& key,
                const std::string& help) {
    auto handler = [this, key](const std::string& value) {
      entries.emplace_back(key, value);
      return true;
    };
    cmd->add_option_function<std::string>(flag, handler, help);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-diagonalization and adiabatic solvers for one impurity in a "
               "1D trapped ideal Bose gas"};
  app.require_subcommand(1);

  std::string config_path;
  int exit_code = 0;

  auto add_common = [&](CLI::App* cmd, CliOverrides& overrides) {
    cmd->add_option("--config", config_path, "declarative run configuration file");
    overrides.add_flag(cmd, "--na", "n_a", "number of A bosons");
    overrides.add_flag(cmd, "--solver", "solver", "ed|polaron|both");
    overrides.add_flag(cmd, "--g", "g", "coupling list or linspace(a,b,n)");
    overrides.add_flag(cmd, "--mba", "m_ba", "mass ratio list or linspace(a,b,n)");
    overrides.add_flag(cmd, "--quanta", "quanta", "excitation quanta budget Q");
    overrides.add_flag(cmd, "--nmax-a", "n_max_a", "A mode cutoff");
    overrides.add_flag(cmd, "--nmax-b", "n_max_b", "impurity mode cutoff");
    overrides.add_flag(cmd, "--ecut", "e_cut", "total-energy truncation");
    overrides.add_flag(cmd, "--use-ecut", "use_e_cut", "enable energy truncation");
    overrides.add_flag(cmd, "--coupling", "coupling", "bare|effective");
    overrides.add_flag(cmd, "--richardson", "richardson", "extrapolate in 1/sqrt(n_max)");
    overrides.add_flag(cmd, "--ladder", "ladder", "converge rungs, ascending");
    overrides.add_flag(cmd, "--observables", "observables",
                       "spectrum,obdm,entropy,profiles,threshold");
    overrides.add_flag(cmd, "--out", "out", "output directory");
    overrides.add_flag(cmd, "--seed", "seed", "start-vector seed");
    overrides.add_flag(cmd, "--jobs", "jobs", "worker pool size");
    overrides.add_flag(cmd, "--k", "k", "eigenpairs per parity block");
    overrides.add_flag(cmd, "--grid-l", "grid_l", "rendering half width");
    overrides.add_flag(cmd, "--grid-points", "grid_points", "rendering points");
  };

  CliOverrides run_overrides, converge_overrides, golden_overrides;
  CLI::App* run_cmd = app.add_subcommand("run", "solve a point or sweep and emit CSV + manifest");
  add_common(run_cmd, run_overrides);
  CLI::App* converge_cmd =
      app.add_subcommand("converge", "run a cutoff ladder and report energy shifts");
  add_common(converge_cmd, converge_overrides);
  CLI::App* golden_cmd =
      app.add_subcommand("golden", "emit the 1/g = 0 analytic reference data");
  add_common(golden_cmd, golden_overrides);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage problems exit 2
  }

  try {
    bosepol::RunConfig config;
    if (!config_path.empty()) config = bosepol::parse_config_file(config_path);
    const CliOverrides* overrides = run_cmd->parsed()        ? &run_overrides
                                    : converge_cmd->parsed() ? &converge_overrides
                                                             : &golden_overrides;
    for (const auto& [key, value] : overrides->entries)
      bosepol::apply_config_entry(config, key, value);

    if (run_cmd->parsed()) {
      exit_code = bosepol::run_sweep(config, std::cout);
    } else if (converge_cmd->parsed()) {
      exit_code = bosepol::run_converge(config, std::cout);
    } else {
      exit_code = bosepol::run_golden(config, std::cout);
    }
  } catch (const bosepol::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}

#include "bosepol/sweep.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <deque>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "bosepol/contact.hpp"
#include "bosepol/errors.hpp"
#include "bosepol/polaron.hpp"
#include "bosepol/strong_ansatz.hpp"

namespace bosepol {

namespace {

using json = nlohmann::json;
using numerics::format_double;

constexpr const char* kArtifactVersion = "0.1.0";

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(value);
  while (std::getline(ss, item, ',')) {
    const auto begin = item.find_first_not_of(" \t");
    if (begin == std::string::npos) continue;
    const auto end = item.find_last_not_of(" \t");
    out.push_back(item.substr(begin, end - begin + 1));
  }
  return out;
}

std::vector<double> parse_values(const std::string& value) {
  // linspace(a,b,n) or a comma-separated list
  const auto lp = value.find("linspace(");
  if (lp != std::string::npos) {
    const auto rp = value.find(')', lp);
    if (rp == std::string::npos) throw ConfigError("unterminated linspace in '" + value + "'");
    const auto args = split_list(value.substr(lp + 9, rp - lp - 9));
    if (args.size() != 3) throw ConfigError("linspace needs (start, stop, count)");
    const double a = std::stod(args[0]);
    const double b = std::stod(args[1]);
    const int n = std::stoi(args[2]);
    if (n < 1) throw ConfigError("linspace count must be >= 1");
    std::vector<double> out;
    for (int i = 0; i < n; ++i)
      out.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
    return out;
  }
  std::vector<double> out;
  for (const auto& item : split_list(value)) out.push_back(std::stod(item));
  return out;
}

std::string point_tag(int n_a, double g, double m) {
  return "na" + std::to_string(n_a) + "_g" + format_double(g) + "_m" + format_double(m);
}

class CsvFile {
 public:
  CsvFile(std::string name, std::string header) : name_(std::move(name)) {
    body_ = std::move(header);
    body_ += '\n';
  }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) body_ += ',';
      body_ += cells[i];
    }
    body_ += '\n';
  }

  const std::string& name() const { return name_; }
  const std::string& body() const { return body_; }

 private:
  std::string name_;
  std::string body_;
};

struct EmittedFiles {
  std::deque<CsvFile> files;  // stable references across open()

  CsvFile& open(const std::string& name, const std::string& header) {
    files.emplace_back(name, header);
    return files.back();
  }

  json write_all(const std::filesystem::path& dir) {
    json hashes = json::object();
    for (const auto& f : files) {
      std::ofstream out(dir / f.name(), std::ios::binary);
      out << f.body();
      if (!out) throw std::runtime_error("failed to write " + (dir / f.name()).string());
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%016llx",
                    static_cast<unsigned long long>(numerics::fnv1a64(f.body())));
      hashes[f.name()] = std::string("fnv1a64:") + buf;
    }
    return hashes;
  }
};

void emit_rendering(EmittedFiles& out, const std::string& tag, Species species,
                    const GridRendering& rendering, bool with_obdm_csv) {
  const std::string sp = (species == Species::A) ? "A" : "B";
  auto& profile = out.open("profile_" + sp + "_" + tag + ".csv", "species,x,density");
  for (std::size_t i = 0; i < rendering.grid.size(); ++i)
    profile.row({sp, format_double(rendering.grid[i]), format_double(rendering.profile[i])});
  if (!with_obdm_csv) return;
  auto& obdm = out.open("obdm_" + sp + "_" + tag + ".csv", "species,x,xprime,value");
  for (std::size_t i = 0; i < rendering.grid.size(); ++i)
    for (std::size_t j = 0; j < rendering.grid.size(); ++j)
      obdm.row({sp, format_double(rendering.grid[i]), format_double(rendering.grid[j]),
                format_double(rendering.values(i, j))});
}

json config_echo(const RunConfig& c) {
  json j;
  j["n_a"] = c.n_a;
  j["solver"] = c.solver == SolverKind::ed       ? "ed"
                : c.solver == SolverKind::polaron ? "polaron"
                                                  : "both";
  j["g"] = c.g_values;
  j["m_ba"] = c.m_values;
  j["quanta"] = c.quanta;
  j["n_max_a"] = c.n_max_a;
  j["n_max_b"] = c.n_max_b;
  if (c.e_cut) j["e_cut"] = *c.e_cut;
  j["use_e_cut"] = c.use_e_cut;
  j["coupling"] = c.coupling == CouplingScheme::bare ? "bare" : "effective";
  j["richardson"] = c.richardson;
  j["ladder"] = c.ladder;
  j["observables"] = std::vector<std::string>(c.observables.begin(), c.observables.end());
  j["seed"] = c.seed;
  j["jobs"] = c.jobs;
  j["k_levels"] = c.k_levels;
  j["grid_half_width"] = c.grid_half_width;
  j["grid_points"] = c.grid_points;
  j["lanczos_tol"] = c.lanczos_tol;
  j["max_iter"] = c.max_iter;
  return j;
}

std::filesystem::path prepare_out_dir(const RunConfig& config) {
  std::string dir = config.out_dir;
  if (dir.empty()) {
    if (const char* env = std::getenv("BOSEPOL_OUT")) dir = env;
  }
  if (dir.empty()) dir = "bosepol_out";
  std::filesystem::path path(dir);
  std::filesystem::create_directories(path);
  return path;
}

}  // namespace

void RunConfig::validate() const {
  if (n_a < 1) throw ConfigError("config: n_a must be >= 1");
  for (double g : g_values)
    if (g < 0.0) throw ConfigError("config: coupling g must be >= 0");
  if (g_values.empty()) throw ConfigError("config: need at least one g value");
  for (double m : m_values)
    if (m <= 0.0) throw ConfigError("config: mass ratio must be > 0");
  if (m_values.empty()) throw ConfigError("config: need at least one mass ratio");
  if (jobs < 1) throw ConfigError("config: jobs must be >= 1");
  if (k_levels < 1) throw ConfigError("config: k must be >= 1");
  if (grid_points < 2) throw ConfigError("config: grid_points must be >= 2");
  static const std::set<std::string> known{"spectrum", "obdm", "entropy", "profiles",
                                           "threshold"};
  for (const auto& o : observables)
    if (!known.count(o)) throw ConfigError("config: unknown observable '" + o + "'");
}

int default_quanta(int n_a) {
  switch (n_a) {
    case 1: return 48;
    case 2: return 40;
    case 3: return 32;
    case 4: return 28;
    default: return 20;
  }
}

Cutoffs derive_cutoffs(const RunConfig& config, int quanta_override) {
  const int q = quanta_override > 0 ? quanta_override
                                    : (config.quanta > 0 ? config.quanta : default_quanta(config.n_a));
  Cutoffs cut;
  cut.n_max_a = config.n_max_a > 0 ? config.n_max_a : q + 1;
  cut.n_max_b = config.n_max_b > 0 ? config.n_max_b : q + 1;
  if (!config.use_e_cut) {
    cut.e_cut = std::nullopt;
  } else if (config.e_cut) {
    cut.e_cut = *config.e_cut;
  } else {
    cut.e_cut = q + 0.5 * config.n_a + 0.5;  // Q quanta above the vacuum
  }
  return cut;
}

void apply_config_entry(RunConfig& config, const std::string& key, const std::string& value) {
  auto as_bool = [&](const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("config: bad boolean '" + v + "' for " + key);
  };
  try {
    if (key == "n_a") {
      config.n_a = std::stoi(value);
    } else if (key == "solver") {
      if (value == "ed") config.solver = SolverKind::ed;
      else if (value == "polaron") config.solver = SolverKind::polaron;
      else if (value == "both") config.solver = SolverKind::both;
      else throw ConfigError("config: solver must be ed|polaron|both");
    } else if (key == "g") {
      config.g_values = parse_values(value);
    } else if (key == "m_ba") {
      config.m_values = parse_values(value);
    } else if (key == "quanta") {
      config.quanta = std::stoi(value);
    } else if (key == "n_max_a") {
      config.n_max_a = std::stoi(value);
    } else if (key == "n_max_b") {
      config.n_max_b = std::stoi(value);
    } else if (key == "e_cut") {
      config.e_cut = std::stod(value);
    } else if (key == "use_e_cut") {
      config.use_e_cut = as_bool(value);
    } else if (key == "coupling") {
      if (value == "bare") config.coupling = CouplingScheme::bare;
      else if (value == "effective") config.coupling = CouplingScheme::effective;
      else throw ConfigError("config: coupling must be bare|effective");
    } else if (key == "richardson") {
      config.richardson = as_bool(value);
    } else if (key == "ladder") {
      config.ladder.clear();
      for (double v : parse_values(value)) config.ladder.push_back(static_cast<int>(v));
    } else if (key == "observables") {
      config.observables.clear();
      for (const auto& item : split_list(value)) config.observables.insert(item);
    } else if (key == "out") {
      config.out_dir = value;
    } else if (key == "seed") {
      config.seed = std::stoull(value);
    } else if (key == "jobs") {
      config.jobs = std::stoi(value);
    } else if (key == "k") {
      config.k_levels = std::stoi(value);
    } else if (key == "grid_l") {
      config.grid_half_width = std::stod(value);
    } else if (key == "grid_points") {
      config.grid_points = std::stoi(value);
    } else if (key == "lanczos_tol") {
      config.lanczos_tol = std::stod(value);
    } else if (key == "max_iter") {
      config.max_iter = std::stoi(value);
    } else {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  } catch (const std::invalid_argument&) {
    throw ConfigError("config: bad value '" + value + "' for " + key);
  } catch (const std::out_of_range&) {
    throw ConfigError("config: value '" + value + "' out of range for " + key);
  }
}

RunConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  RunConfig config;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        throw ConfigError("config: line " + std::to_string(line_no) + " is not key = value");
      continue;
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("config: empty key on line " + std::to_string(line_no));
    apply_config_entry(config, key, value);
  }
  return config;
}

EdPointResult solve_ed_point(const RunConfig& config, double g, double mass_ratio,
                             const InteractionTensor& tensor, const Cutoffs& cutoffs,
                             bool with_obdm) {
  EdPointResult result;
  result.cutoffs = cutoffs;

  double g_assemble = g;
  if (config.coupling == CouplingScheme::effective && g > 0.0) {
    std::optional<double> quanta;
    if (cutoffs.e_cut) quanta = *cutoffs.e_cut - 0.5 * config.n_a - 0.5;
    g_assemble = effective_coupling(g, mass_ratio, tensor, cutoffs.n_max_a, cutoffs.n_max_b,
                                    quanta);
  }
  result.g_assembled = g_assemble;

  LanczosOptions opts;
  opts.k = config.k_levels;
  opts.tol = config.lanczos_tol;
  opts.max_iter = config.max_iter;
  opts.seed = config.seed;

  for (ParityBlock block : {ParityBlock::even, ParityBlock::odd}) {
    FockSpace::Params params{config.n_a, cutoffs.n_max_a, cutoffs.n_max_b, cutoffs.e_cut, block};
    const FockSpace space = FockSpace::enumerate(params);
    const SparseHamiltonian h = assemble_hamiltonian(space, tensor, g_assemble, mass_ratio);
    LanczosOptions block_opts = opts;
    block_opts.k = std::min<std::size_t>(opts.k, space.dimension());
    SpectrumResult spectrum = lowest_eigenpairs(h, block_opts);
    if (block == ParityBlock::even) {
      if (with_obdm) {
        result.obdm_a = obdm_A(space, spectrum.eigenvectors[0]);
        result.obdm_b = obdm_B(space, spectrum.eigenvectors[0]);
        result.entropy_bits = entanglement_entropy(*result.obdm_b);
      }
      result.even = std::move(spectrum);
    } else {
      result.odd = std::move(spectrum);
    }
  }
  return result;
}

namespace {

struct PointOutcome {
  int n_a = 0;
  double g = 0.0;
  double m = 0.0;
  std::string status = "ok";
  std::string error;
  double wall_seconds = 0.0;
  std::optional<EdPointResult> ed;
  std::optional<AdiabaticPotential> polaron;
  std::optional<ValidityReport> polaron_validity;
};

PointOutcome solve_point(const RunConfig& config, double g, double m,
                         const InteractionTensor* tensor, const Cutoffs& cutoffs,
                         bool with_obdm) {
  PointOutcome outcome;
  outcome.n_a = config.n_a;
  outcome.g = g;
  outcome.m = m;
  const auto start = std::chrono::steady_clock::now();
  try {
    if (config.solver != SolverKind::polaron) {
      outcome.ed = solve_ed_point(config, g, m, *tensor, cutoffs, with_obdm);
    }
    if (config.solver != SolverKind::ed) {
      outcome.polaron = solve_effective(config.n_a, g, m);
      outcome.polaron_validity = validity_check(config.n_a, g, m);
      if (!outcome.polaron_validity->valid) outcome.status = "warn";
    }
  } catch (const std::exception& e) {
    outcome.status = "error";
    outcome.error = e.what();
  }
  outcome.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return outcome;
}

}  // namespace

int run_sweep(const RunConfig& config, std::ostream& log) {
  config.validate();
  const auto out_dir = prepare_out_dir(config);
  const Cutoffs cutoffs = derive_cutoffs(config);

  const bool want_spectrum = config.observables.count("spectrum") > 0;
  const bool want_entropy = config.observables.count("entropy") > 0;
  const bool want_obdm = config.observables.count("obdm") > 0;
  const bool want_profiles = config.observables.count("profiles") > 0;
  const bool want_threshold = config.observables.count("threshold") > 0;
  const bool with_obdm = want_entropy || want_obdm || want_profiles || want_threshold;

  // Interaction tensors are built once per mass ratio, single-threaded, and
  // shared read-only across the worker pool.
  std::map<double, InteractionTensor> tensors;
  if (config.solver != SolverKind::polaron) {
    for (double m : config.m_values)
      if (!tensors.count(m)) {
        SPBasis basis_a(Species::A, 1.0, cutoffs.n_max_a);
        SPBasis basis_b(Species::B, m, cutoffs.n_max_b);
        tensors.emplace(m, build_interaction_tensor(basis_a, basis_b));
      }
  }

  struct PointSpec {
    double g, m;
  };
  std::vector<PointSpec> points;
  for (double m : config.m_values)
    for (double g : config.g_values) points.push_back({g, m});

  std::vector<PointOutcome> outcomes(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= points.size()) break;
      const auto& p = points[i];
      const InteractionTensor* tensor =
          (config.solver != SolverKind::polaron) ? &tensors.at(p.m) : nullptr;
      outcomes[i] = solve_point(config, p.g, p.m, tensor, cutoffs, with_obdm);
    }
  };
  {
    const int n_workers = std::min<int>(config.jobs, static_cast<int>(points.size()));
    std::vector<std::thread> pool;
    for (int t = 1; t < n_workers; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
  }

  // Emit files in deterministic config order.
  EmittedFiles files;
  CsvFile* spectrum_csv = nullptr;
  if (want_spectrum)
    spectrum_csv = &files.open("spectrum.csv", "N_A,g,m_BA,parity,level,E,E_per_atom");
  CsvFile* entropy_csv = nullptr;
  if (want_entropy)
    entropy_csv = &files.open(
        "entropy.csv", "N_A,g,m_BA,S_bits,lambda0_B,lambda1_B,lambda0_A,lambda1_A");

  const double atoms = config.n_a + 1.0;
  for (const auto& outcome : outcomes) {
    if (outcome.status == "error") continue;
    const std::string tag = point_tag(outcome.n_a, outcome.g, outcome.m);
    if (outcome.ed && spectrum_csv) {
      auto emit_block = [&](const SpectrumResult& s, const char* parity) {
        for (std::size_t level = 0; level < s.eigenvalues.size(); ++level) {
          spectrum_csv->row({std::to_string(outcome.n_a), format_double(outcome.g),
                             format_double(outcome.m), parity, std::to_string(level),
                             format_double(s.eigenvalues[level]),
                             format_double(s.eigenvalues[level] / atoms)});
        }
      };
      emit_block(outcome.ed->even, "even");
      emit_block(outcome.ed->odd, "odd");
    }
    if (outcome.polaron && spectrum_csv) {
      spectrum_csv->row({std::to_string(outcome.n_a), format_double(outcome.g),
                         format_double(outcome.m), "polaron", "0",
                         format_double(outcome.polaron->energy),
                         format_double(outcome.polaron->energy / atoms)});
    }
    if (outcome.ed && entropy_csv && outcome.ed->obdm_b) {
      const auto& la = outcome.ed->obdm_a->occupations;
      const auto& lb = outcome.ed->obdm_b->occupations;
      entropy_csv->row({std::to_string(outcome.n_a), format_double(outcome.g),
                        format_double(outcome.m), format_double(outcome.ed->entropy_bits),
                        format_double(lb[0]), format_double(lb.size() > 1 ? lb[1] : 0.0),
                        format_double(la[0]), format_double(la.size() > 1 ? la[1] : 0.0)});
    }
    if (outcome.ed && (want_profiles || want_obdm) && outcome.ed->obdm_a) {
      SPBasis basis_a(Species::A, 1.0, cutoffs.n_max_a);
      SPBasis basis_b(Species::B, outcome.m, cutoffs.n_max_b);
      const auto rendering_a = render_grid(*outcome.ed->obdm_a, basis_a,
                                           config.grid_half_width, config.grid_points);
      const auto rendering_b = render_grid(*outcome.ed->obdm_b, basis_b,
                                           config.grid_half_width, config.grid_points);
      emit_rendering(files, tag, Species::A, rendering_a, want_obdm);
      emit_rendering(files, tag, Species::B, rendering_b, want_obdm);
    }
    if (outcome.polaron) {
      auto& pol = files.open("polaron_" + tag + ".csv", "y,eps,q11,W,phi");
      for (std::size_t i = 0; i < outcome.polaron->y.size(); ++i)
        pol.row({format_double(outcome.polaron->y[i]), format_double(outcome.polaron->eps[i]),
                 format_double(outcome.polaron->q11[i]),
                 format_double(outcome.polaron->potential[i]),
                 format_double(outcome.polaron->phi[i])});
    }
  }

  // Threshold scan per g over the mass sweep.
  if (want_threshold) {
    auto& threshold_csv = files.open("threshold.csv", "N_A,g,m_BA_th,S_max");
    for (double g : config.g_values) {
      std::vector<double> ms, lambda0, entropies;
      for (const auto& outcome : outcomes) {
        if (outcome.status == "error" || !outcome.ed || !outcome.ed->obdm_b) continue;
        if (outcome.g != g) continue;
        ms.push_back(outcome.m);
        lambda0.push_back(outcome.ed->obdm_b->occupations[0]);
        entropies.push_back(outcome.ed->entropy_bits);
      }
      if (ms.size() < 3) continue;
      const auto scan = threshold_mass_scan(ms, lambda0);
      if (!scan) {
        log << "threshold: no interior minimum of lambda0_B at g = " << format_double(g)
            << "\n";
        continue;
      }
      const double s_max = *std::max_element(entropies.begin(), entropies.end());
      threshold_csv.row({std::to_string(config.n_a), format_double(g),
                         format_double(scan->m_refined), format_double(s_max)});
    }
  }

  // Manifest.
  json manifest;
  manifest["artifact_version"] = kArtifactVersion;
  manifest["command"] = "run";
  manifest["config"] = config_echo(config);
  manifest["cutoffs"] = {{"n_max_a", cutoffs.n_max_a},
                         {"n_max_b", cutoffs.n_max_b},
                         {"e_cut", cutoffs.e_cut ? json(*cutoffs.e_cut) : json()}};
  json points_json = json::array();
  int n_errors = 0;
  for (const auto& outcome : outcomes) {
    json p;
    p["n_a"] = outcome.n_a;
    p["g"] = outcome.g;
    p["m_ba"] = outcome.m;
    p["status"] = outcome.status;
    p["wall_time_s"] = outcome.wall_seconds;
    if (!outcome.error.empty()) p["error"] = outcome.error;
    if (outcome.ed) {
      p["e0_even"] = outcome.ed->even.eigenvalues[0];
      p["e0_odd"] = outcome.ed->odd.eigenvalues[0];
      p["g_assembled"] = outcome.ed->g_assembled;
      p["lanczos_iterations"] = {outcome.ed->even.iterations, outcome.ed->odd.iterations};
      p["max_residual"] = std::max(
          *std::max_element(outcome.ed->even.residuals.begin(), outcome.ed->even.residuals.end()),
          *std::max_element(outcome.ed->odd.residuals.begin(), outcome.ed->odd.residuals.end()));
    }
    if (outcome.polaron) {
      p["e_polaron"] = outcome.polaron->energy;
      p["polaron_valid"] = outcome.polaron_validity->valid;
    }
    if (outcome.status == "error") ++n_errors;
    points_json.push_back(std::move(p));
  }
  manifest["points"] = std::move(points_json);
  manifest["files"] = files.write_all(out_dir);
  {
    std::ofstream out(out_dir / "manifest.json");
    out << manifest.dump(2) << "\n";
  }

  log << "run: " << points.size() - n_errors << "/" << points.size() << " points ok, output in "
      << out_dir.string() << "\n";
  return n_errors == 0 ? 0 : 1;
}

int run_converge(const RunConfig& config, std::ostream& log) {
  config.validate();
  std::vector<int> ladder = config.ladder;
  if (ladder.empty()) {
    const int q = config.quanta > 0 ? config.quanta : default_quanta(config.n_a);
    ladder = {std::max(4, q - 12), std::max(6, q - 6), q};
  }
  if (ladder.size() < 2) throw ConfigError("converge: need at least 2 ladder rungs");
  for (std::size_t i = 1; i < ladder.size(); ++i)
    if (ladder[i] <= ladder[i - 1]) throw ConfigError("converge: ladder must ascend");

  const auto out_dir = prepare_out_dir(config);
  EmittedFiles files;
  auto& csv = files.open("converge.csv",
                         "N_A,g,m_BA,rung,n_max,e_cut,dimension,E0,shift,E_extrapolated");

  json points_json = json::array();
  int n_errors = 0;
  bool variational_warning = false;
  for (double m : config.m_values) {
    for (double g : config.g_values) {
      json pj;
      pj["n_a"] = config.n_a;
      pj["g"] = g;
      pj["m_ba"] = m;
      const auto start = std::chrono::steady_clock::now();
      try {
        std::vector<double> energies;
        std::vector<std::size_t> dims;
        std::vector<Cutoffs> cuts;
        for (int rung : ladder) {
          const Cutoffs cutoffs = derive_cutoffs(config, rung);
          SPBasis basis_a(Species::A, 1.0, cutoffs.n_max_a);
          SPBasis basis_b(Species::B, m, cutoffs.n_max_b);
          const auto tensor = build_interaction_tensor(basis_a, basis_b);
          const auto point = solve_ed_point(config, g, m, tensor, cutoffs, false);
          energies.push_back(std::min(point.even.eigenvalues[0], point.odd.eigenvalues[0]));
          FockSpace::Params params{config.n_a, cutoffs.n_max_a, cutoffs.n_max_b, cutoffs.e_cut,
                                   ParityBlock::none};
          dims.push_back(FockSpace::enumerate(params).dimension());
          cuts.push_back(cutoffs);
        }
        // Two-point Richardson in 1/sqrt(n_max) on the top rungs.
        std::optional<double> extrapolated;
        if (config.richardson) {
          const std::size_t last = energies.size() - 1;
          const double m1 = std::sqrt(static_cast<double>(cuts[last - 1].n_max_a));
          const double m2 = std::sqrt(static_cast<double>(cuts[last].n_max_a));
          const double c = (energies[last - 1] - energies[last]) / (1.0 / m1 - 1.0 / m2);
          extrapolated = energies[last] - c / m2;
        }
        for (std::size_t i = 0; i < energies.size(); ++i) {
          const double shift = i == 0 ? 0.0 : energies[i] - energies[i - 1];
          if (i > 0 && shift > config.lanczos_tol * 100) variational_warning = true;
          csv.row({std::to_string(config.n_a), format_double(g), format_double(m),
                   std::to_string(ladder[i]), std::to_string(cuts[i].n_max_a),
                   cuts[i].e_cut ? format_double(*cuts[i].e_cut) : "none",
                   std::to_string(dims[i]), format_double(energies[i]), format_double(shift),
                   (extrapolated && i + 1 == energies.size()) ? format_double(*extrapolated)
                                                              : ""});
        }
        pj["status"] = variational_warning ? "warn" : "ok";
        pj["energies"] = energies;
        if (extrapolated) pj["e_extrapolated"] = *extrapolated;
        if (variational_warning)
          pj["warning"] = "ground energy rose with the cutoff (variational violation)";
      } catch (const std::exception& e) {
        pj["status"] = "error";
        pj["error"] = e.what();
        ++n_errors;
      }
      pj["wall_time_s"] =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      points_json.push_back(std::move(pj));
    }
  }

  json manifest;
  manifest["artifact_version"] = kArtifactVersion;
  manifest["command"] = "converge";
  manifest["config"] = config_echo(config);
  manifest["ladder"] = ladder;
  manifest["points"] = std::move(points_json);
  manifest["files"] = files.write_all(out_dir);
  {
    std::ofstream out(out_dir / "manifest.json");
    out << manifest.dump(2) << "\n";
  }
  log << "converge: ladder of " << ladder.size() << " rungs written to " << out_dir.string()
      << "\n";
  return n_errors == 0 ? 0 : 1;
}

int run_golden(const RunConfig& config, std::ostream& log) {
  config.validate();
  const auto out_dir = prepare_out_dir(config);

  EmittedFiles files;
  json points_json = json::array();
  int n_errors = 0;
  const auto start = std::chrono::steady_clock::now();
  try {
    AnsatzState state(config.n_a);
    const auto obdm_a = ansatz_obdm(state, Species::A, config.grid_half_width,
                                    config.grid_points);
    const auto obdm_b = ansatz_obdm(state, Species::B, config.grid_half_width,
                                    config.grid_points);
    const std::string tag = "na" + std::to_string(config.n_a) + "_ginf";
    emit_rendering(files, tag, Species::A, obdm_a.rendering, true);
    emit_rendering(files, tag, Species::B, obdm_b.rendering, true);
    auto& csv = files.open("golden.csv",
                           "N_A,lambda0_B,lambda1_B,lambda0_A,lambda1_A,S_bits");
    csv.row({std::to_string(config.n_a), format_double(obdm_b.occupations[0]),
             format_double(obdm_b.occupations[1]), format_double(obdm_a.occupations[0]),
             format_double(obdm_a.occupations[1]), format_double(obdm_b.entropy)});
    json pj;
    pj["n_a"] = config.n_a;
    pj["status"] = "ok";
    pj["lambda0_B"] = obdm_b.occupations[0];
    pj["entropy_bits"] = obdm_b.entropy;
    points_json.push_back(std::move(pj));
  } catch (const std::exception& e) {
    json pj;
    pj["n_a"] = config.n_a;
    pj["status"] = "error";
    pj["error"] = e.what();
    points_json.push_back(std::move(pj));
    ++n_errors;
  }

  json manifest;
  manifest["artifact_version"] = kArtifactVersion;
  manifest["command"] = "golden";
  manifest["config"] = config_echo(config);
  manifest["points"] = std::move(points_json);
  manifest["points"][0]["wall_time_s"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  manifest["files"] = files.write_all(out_dir);
  {
    std::ofstream out(out_dir / "manifest.json");
    out << manifest.dump(2) << "\n";
  }
  log << "golden: 1/g = 0 reference data for N_A = " << config.n_a << " written to "
      << out_dir.string() << "\n";
  return n_errors == 0 ? 0 : 1;
}

}  // namespace bosepol

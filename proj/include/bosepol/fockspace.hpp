#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "bosepol/hobasis.hpp"

namespace bosepol {

enum class ParityBlock { none, even, odd };

/// One many-body basis state: bosonic occupations of the A modes plus the
/// impurity mode index.
struct FockState {
  std::vector<std::uint8_t> occ;  // size n_max_a, sum = N_A
  int mode_b = 0;

  int parity() const;  // +1 or -1, from total excitation quanta
  double noninteracting_energy() const;
};

/// Truncated product basis: symmetric A occupations tensored with one impurity
/// mode, optionally restricted by total noninteracting energy and parity.
class FockSpace {
 public:
  struct Params {
    int n_a = 1;
    int n_max_a = 1;
    int n_max_b = 1;
    std::optional<double> e_cut;  // total noninteracting energy cap
    ParityBlock block = ParityBlock::none;
  };

  static FockSpace enumerate(const Params& params);

  std::size_t dimension() const { return states_.size(); }
  const Params& params() const { return params_; }

  FockState state(std::size_t i) const;
  int state_mode_b(std::size_t i) const { return states_[i].second; }
  std::int32_t state_occ_id(std::size_t i) const { return states_[i].first; }
  std::span<const std::uint8_t> occ_config(std::int32_t occ_id) const;
  std::size_t occ_count() const { return occ_offsets_.size(); }

  /// Ordinal of (occ_id, mode_b), or -1 when the state is outside the space.
  std::int64_t state_of(std::int32_t occ_id, int mode_b) const {
    if (mode_b < 0 || mode_b >= params_.n_max_b) return -1;
    return table_[static_cast<std::size_t>(occ_id) * params_.n_max_b + mode_b];
  }

  /// occ_id for an occupation vector, or -1 if it never appears in the space.
  std::int32_t find_occ(std::span<const std::uint8_t> occ) const;

  std::optional<std::size_t> index_of(const FockState& state) const;

 private:
  Params params_;
  std::vector<std::uint8_t> occ_storage_;           // concatenated occupation vectors
  std::vector<std::size_t> occ_offsets_;            // occ_id -> offset into occ_storage_
  std::vector<std::pair<std::int32_t, std::int32_t>> states_;  // (occ_id, mode_b)
  std::vector<std::int64_t> table_;                 // (occ_id, mode_b) -> ordinal
  std::unordered_map<std::string, std::int32_t> occ_index_;
};

struct HamiltonianMeta {
  int n_a = 0;
  int n_max_a = 0;
  int n_max_b = 0;
  std::optional<double> e_cut;
  ParityBlock block = ParityBlock::none;
  double g = 0.0;
  double mass_ratio = 1.0;
};

struct AssemblyLimits {
  std::size_t max_nonzeros = 300'000'000;
};

/// Symmetric sparse Hamiltonian in CSR form (both triangles stored).
class SparseHamiltonian {
 public:
  std::size_t dimension() const { return dim_; }
  std::size_t nonzeros() const { return values_.size(); }
  const HamiltonianMeta& meta() const { return meta_; }

  std::span<const std::size_t> row_ptr() const { return row_ptr_; }
  std::span<const std::uint32_t> cols() const { return cols_; }
  std::span<const double> values() const { return values_; }

  void matvec(std::span<const double> in, std::span<double> out) const;
  std::vector<double> matvec(std::span<const double> in) const;

 private:
  friend SparseHamiltonian assemble_hamiltonian(const FockSpace&, const InteractionTensor&,
                                                double, double, const AssemblyLimits&);
  friend SparseHamiltonian load_hamiltonian(const std::filesystem::path&);
  std::size_t dim_ = 0;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::uint32_t> cols_;
  std::vector<double> values_;
  HamiltonianMeta meta_;
};

/// H = H0 + g V with bosonic ladder rules on the A modes and first-quantized
/// impurity transitions; see InteractionTensor for the integrals.
SparseHamiltonian assemble_hamiltonian(const FockSpace& space, const InteractionTensor& tensor,
                                       double g, double mass_ratio,
                                       const AssemblyLimits& limits = {});

/// Versioned little-endian binary cache of an assembled Hamiltonian.
void save_hamiltonian(const std::filesystem::path& path, const SparseHamiltonian& h);
SparseHamiltonian load_hamiltonian(const std::filesystem::path& path);

}  // namespace bosepol

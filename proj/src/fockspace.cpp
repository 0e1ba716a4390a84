#include "bosepol/fockspace.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "bosepol/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "hamiltonian cache format assumes a little-endian host");

namespace bosepol {

int FockState::parity() const {
  int quanta = mode_b;
  for (std::size_t n = 0; n < occ.size(); ++n) quanta += static_cast<int>(n) * occ[n];
  return (quanta % 2 == 0) ? 1 : -1;
}

double FockState::noninteracting_energy() const {
  double e = mode_b + 0.5;
  for (std::size_t n = 0; n < occ.size(); ++n)
    e += occ[n] * (static_cast<double>(n) + 0.5);
  return e;
}

namespace {

std::string occ_key(std::span<const std::uint8_t> occ) {
  return std::string(reinterpret_cast<const char*>(occ.data()), occ.size());
}

}  // namespace

FockSpace FockSpace::enumerate(const Params& params) {
  if (params.n_a < 1) throw ConfigError("FockSpace: n_a must be >= 1");
  if (params.n_max_a < 1 || params.n_max_b < 1)
    throw ConfigError("FockSpace: mode cutoffs must be >= 1");
  const double vacuum = 0.5 * params.n_a + 0.5;
  if (params.e_cut && *params.e_cut < vacuum)
    throw EmptySpaceError("FockSpace: e_cut below the vacuum energy " +
                          std::to_string(vacuum));

  FockSpace space;
  space.params_ = params;

  // Enumerate occupation vectors as non-decreasing mode tuples (recursive
  // descent), which fixes a deterministic ordering; impurity modes attach as
  // the faster-varying index per occupation below.
  std::vector<std::uint8_t> occ(static_cast<std::size_t>(params.n_max_a), 0);
  std::vector<std::pair<int, double>> occ_meta;  // (parity quanta, A energy)

  auto emit = [&](double energy_a) {
    const std::int32_t id = static_cast<std::int32_t>(space.occ_offsets_.size());
    space.occ_offsets_.push_back(space.occ_storage_.size());
    space.occ_storage_.insert(space.occ_storage_.end(), occ.begin(), occ.end());
    int quanta = 0;
    for (int n = 0; n < params.n_max_a; ++n) quanta += n * occ[n];
    occ_meta.emplace_back(quanta, energy_a);
    space.occ_index_.emplace(occ_key(occ), id);
  };

  // place particles in modes >= mode, lowest remaining mode first
  auto recurse = [&](auto&& self, int mode, int remaining, double energy_a) -> void {
    if (remaining == 0) {
      emit(energy_a);
      return;
    }
    if (mode >= params.n_max_a) return;
    const double mode_energy = mode + 0.5;
    for (int count = remaining; count >= 0; --count) {
      const double e = energy_a + count * mode_energy;
      // cheapest completion: all remaining particles in the next mode
      const double floor_e = e + (remaining - count) * (mode + 1.5);
      if (params.e_cut && floor_e + 0.5 > *params.e_cut + 1e-12) break;
      occ[mode] = static_cast<std::uint8_t>(count);
      self(self, mode + 1, remaining - count, e);
      occ[mode] = 0;
    }
  };
  recurse(recurse, 0, params.n_a, 0.0);

  // States ordered by impurity mode first, then by the occupation's sorted
  // mode tuple (the emission order above).
  const std::size_t n_occ = space.occ_offsets_.size();
  space.table_.assign(n_occ * params.n_max_b, -1);
  for (int m = 0; m < params.n_max_b; ++m) {
    for (std::size_t occ_id = 0; occ_id < n_occ; ++occ_id) {
      const auto [quanta, energy_a] = occ_meta[occ_id];
      const double total = energy_a + m + 0.5;
      if (params.e_cut && total > *params.e_cut + 1e-12) continue;
      const bool even = (quanta + m) % 2 == 0;
      if (params.block == ParityBlock::even && !even) continue;
      if (params.block == ParityBlock::odd && even) continue;
      space.table_[occ_id * params.n_max_b + m] =
          static_cast<std::int64_t>(space.states_.size());
      space.states_.emplace_back(static_cast<std::int32_t>(occ_id), m);
    }
  }
  if (space.states_.empty())
    throw EmptySpaceError("FockSpace: truncation admits no states");
  return space;
}

FockState FockSpace::state(std::size_t i) const {
  const auto [occ_id, mode_b] = states_[i];
  auto span = occ_config(occ_id);
  FockState s;
  s.occ.assign(span.begin(), span.end());
  s.mode_b = mode_b;
  return s;
}

std::span<const std::uint8_t> FockSpace::occ_config(std::int32_t occ_id) const {
  return {occ_storage_.data() + occ_offsets_[occ_id],
          static_cast<std::size_t>(params_.n_max_a)};
}

std::int32_t FockSpace::find_occ(std::span<const std::uint8_t> occ) const {
  auto it = occ_index_.find(occ_key(occ));
  return it == occ_index_.end() ? -1 : it->second;
}

std::optional<std::size_t> FockSpace::index_of(const FockState& s) const {
  if (s.occ.size() != static_cast<std::size_t>(params_.n_max_a)) return std::nullopt;
  const std::int32_t occ_id = find_occ(s.occ);
  if (occ_id < 0) return std::nullopt;
  const std::int64_t idx = state_of(occ_id, s.mode_b);
  if (idx < 0) return std::nullopt;
  return static_cast<std::size_t>(idx);
}

SparseHamiltonian assemble_hamiltonian(const FockSpace& space, const InteractionTensor& tensor,
                                       double g, double mass_ratio,
                                       const AssemblyLimits& limits) {
  const auto& params = space.params();
  if (tensor.n_max_a() < params.n_max_a || tensor.n_max_b() < params.n_max_b)
    throw ConfigError("assemble_hamiltonian: tensor cutoffs below space cutoffs");
  if (tensor.mass_ratio() != mass_ratio)
    throw ConfigError("assemble_hamiltonian: tensor built for a different mass ratio");

  const std::size_t dim = space.dimension();
  SparseHamiltonian h;
  h.dim_ = dim;
  h.meta_ = {params.n_a, params.n_max_a, params.n_max_b,
             params.e_cut, params.block, g, mass_ratio};

  const int nb = params.n_max_b;
  const int na = params.n_max_a;

  // Two passes: count row lengths, then fill.  Rows are independent.
  std::vector<std::uint8_t> occ_buf(static_cast<std::size_t>(na));
  std::vector<std::pair<std::uint32_t, double>> entries;

  auto build_row = [&](std::size_t row, auto&& sink) {
    const std::int32_t occ_id = space.state_occ_id(row);
    const int mode_b = space.state_mode_b(row);
    const auto occ = space.occ_config(occ_id);

    // Diagonal oscillator part; the scaled impurity oscillator has unit
    // frequency for every mass ratio.
    double diag = mode_b + 0.5;
    for (int n = 0; n < na; ++n)
      if (occ[n]) diag += occ[n] * (n + 0.5);

    // A-diagonal block: impurity transitions m -> m' with amplitude
    // g * sum_q occ[q] V[q][m'][q][m].
    {
      entries.clear();
      for (int mp = 0; mp < nb; ++mp) {
        const std::int64_t target = space.state_of(occ_id, mp);
        if (target < 0) continue;
        double amp = 0.0;
        for (int q = 0; q < na; ++q) {
          if (!occ[q]) continue;
          amp += occ[q] * tensor(q, mp, q, mode_b);
        }
        amp *= g;
        if (mp == mode_b) {
          sink(static_cast<std::uint32_t>(target), diag + amp);
        } else if (amp != 0.0) {
          sink(static_cast<std::uint32_t>(target), amp);
        }
      }
    }

    // Move one A particle q -> p (p != q), impurity m -> m'.
    std::copy(occ.begin(), occ.end(), occ_buf.begin());
    for (int q = 0; q < na; ++q) {
      if (!occ[q]) continue;
      const double sq = std::sqrt(static_cast<double>(occ[q]));
      occ_buf[q] -= 1;
      for (int p = 0; p < na; ++p) {
        if (p == q) continue;
        occ_buf[p] += 1;
        const std::int32_t target_occ = space.find_occ(occ_buf);
        occ_buf[p] -= 1;
        if (target_occ < 0) continue;
        const double amp_a = g * sq * std::sqrt(static_cast<double>(occ[p]) + 1.0);
        const auto vrow = tensor.pair_row(q, mode_b);
        const std::size_t prow = static_cast<std::size_t>(p) * tensor.n_max_b();
        for (int mp = 0; mp < nb; ++mp) {
          const std::int64_t target = space.state_of(target_occ, mp);
          if (target < 0) continue;
          const double value = amp_a * vrow[prow + mp];
          if (value != 0.0) sink(static_cast<std::uint32_t>(target), value);
        }
      }
      occ_buf[q] += 1;
    }
  };

  std::vector<std::size_t> row_len(dim, 0);
  for (std::size_t row = 0; row < dim; ++row) {
    std::size_t count = 0;
    build_row(row, [&](std::uint32_t, double) { ++count; });
    row_len[row] = count;
  }
  h.row_ptr_.assign(dim + 1, 0);
  for (std::size_t row = 0; row < dim; ++row) h.row_ptr_[row + 1] = h.row_ptr_[row] + row_len[row];
  const std::size_t nnz_upper = h.row_ptr_[dim];
  if (nnz_upper > limits.max_nonzeros)
    throw ResourceError("assemble_hamiltonian: " + std::to_string(nnz_upper) +
                        " nonzeros exceed the limit " + std::to_string(limits.max_nonzeros));

  h.cols_.resize(nnz_upper);
  h.values_.resize(nnz_upper);
  std::vector<std::pair<std::uint32_t, double>> row_entries;
  for (std::size_t row = 0; row < dim; ++row) {
    row_entries.clear();
    build_row(row, [&](std::uint32_t c, double v) { row_entries.emplace_back(c, v); });
    std::sort(row_entries.begin(), row_entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::size_t at = h.row_ptr_[row];
    for (const auto& [c, v] : row_entries) {
      h.cols_[at] = c;
      h.values_[at] = v;
      ++at;
    }
  }
  return h;
}

void SparseHamiltonian::matvec(std::span<const double> in, std::span<double> out) const {
  if (in.size() != dim_ || out.size() != dim_)
    throw std::domain_error("SparseHamiltonian::matvec: vector length mismatch");
  for (std::size_t row = 0; row < dim_; ++row) {
    double sum = 0.0;
    for (std::size_t k = row_ptr_[row]; k < row_ptr_[row + 1]; ++k)
      sum += values_[k] * in[cols_[k]];
    out[row] = sum;
  }
}

std::vector<double> SparseHamiltonian::matvec(std::span<const double> in) const {
  std::vector<double> out(dim_);
  matvec(in, out);
  return out;
}

namespace {

constexpr char kMagic[8] = {'B', 'P', 'O', 'L', 'H', 'A', 'M', '1'};

template <typename T>
void write_pod(std::ofstream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
void read_pod(std::ifstream& in, T& v) {
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
}

}  // namespace

void save_hamiltonian(const std::filesystem::path& path, const SparseHamiltonian& h) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_hamiltonian: cannot open " + path.string());
  out.write(kMagic, sizeof(kMagic));
  write_pod(out, std::uint32_t{1});
  write_pod(out, static_cast<std::uint64_t>(h.dimension()));
  write_pod(out, static_cast<std::uint64_t>(h.nonzeros()));
  const auto& m = h.meta();
  write_pod(out, m.g);
  write_pod(out, m.mass_ratio);
  write_pod(out, std::int32_t{m.n_a});
  write_pod(out, std::int32_t{m.n_max_a});
  write_pod(out, std::int32_t{m.n_max_b});
  write_pod(out, m.e_cut.value_or(std::nan("")));
  write_pod(out, static_cast<std::int8_t>(m.block));
  std::vector<std::uint64_t> rp(h.row_ptr().begin(), h.row_ptr().end());
  out.write(reinterpret_cast<const char*>(rp.data()),
            static_cast<std::streamsize>(rp.size() * sizeof(std::uint64_t)));
  out.write(reinterpret_cast<const char*>(h.cols().data()),
            static_cast<std::streamsize>(h.cols().size() * sizeof(std::uint32_t)));
  out.write(reinterpret_cast<const char*>(h.values().data()),
            static_cast<std::streamsize>(h.values().size() * sizeof(double)));
  if (!out) throw std::runtime_error("save_hamiltonian: write failed for " + path.string());
}

SparseHamiltonian load_hamiltonian(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_hamiltonian: cannot open " + path.string());
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw std::runtime_error("load_hamiltonian: bad magic in " + path.string());
  std::uint32_t version = 0;
  read_pod(in, version);
  if (version != 1) throw std::runtime_error("load_hamiltonian: unsupported version");
  std::uint64_t dim = 0, nnz = 0;
  read_pod(in, dim);
  read_pod(in, nnz);
  SparseHamiltonian h;
  h.dim_ = dim;
  read_pod(in, h.meta_.g);
  read_pod(in, h.meta_.mass_ratio);
  std::int32_t n_a = 0, n_max_a = 0, n_max_b = 0;
  read_pod(in, n_a);
  read_pod(in, n_max_a);
  read_pod(in, n_max_b);
  h.meta_.n_a = n_a;
  h.meta_.n_max_a = n_max_a;
  h.meta_.n_max_b = n_max_b;
  double e_cut = 0.0;
  read_pod(in, e_cut);
  h.meta_.e_cut = std::isnan(e_cut) ? std::nullopt : std::optional<double>(e_cut);
  std::int8_t block = 0;
  read_pod(in, block);
  h.meta_.block = static_cast<ParityBlock>(block);
  std::vector<std::uint64_t> rp(dim + 1);
  in.read(reinterpret_cast<char*>(rp.data()),
          static_cast<std::streamsize>(rp.size() * sizeof(std::uint64_t)));
  h.row_ptr_.assign(rp.begin(), rp.end());
  h.cols_.resize(nnz);
  h.values_.resize(nnz);
  in.read(reinterpret_cast<char*>(h.cols_.data()),
          static_cast<std::streamsize>(nnz * sizeof(std::uint32_t)));
  in.read(reinterpret_cast<char*>(h.values_.data()),
          static_cast<std::streamsize>(nnz * sizeof(double)));
  if (!in) throw std::runtime_error("load_hamiltonian: truncated file " + path.string());
  return h;
}

}  // namespace bosepol

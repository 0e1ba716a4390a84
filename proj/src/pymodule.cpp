#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "bosepol/eigensolver.hpp"
#include "bosepol/observables.hpp"
#include "bosepol/polaron.hpp"
#include "bosepol/strong_ansatz.hpp"
#include "bosepol/sweep.hpp"

namespace py = pybind11;
using namespace bosepol;

namespace {

std::vector<double> as_vector(const py::array_t<double, py::array::c_style>& arr) {
  return std::vector<double>(arr.data(), arr.data() + arr.size());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Impurity in a 1D trapped ideal Bose gas: exact diagonalization and "
            "adiabatic polaron solvers";

  py::enum_<Species>(m, "Species").value("A", Species::A).value("B", Species::B);
  py::enum_<ParityBlock>(m, "ParityBlock")
      .value("none", ParityBlock::none)
      .value("even", ParityBlock::even)
      .value("odd", ParityBlock::odd);

  py::class_<SPBasis>(m, "SPBasis")
      .def(py::init<Species, double, int>(), py::arg("species"), py::arg("mass_ratio"),
           py::arg("n_max"))
      .def_property_readonly("n_max", &SPBasis::n_max)
      .def_property_readonly("mass_ratio", &SPBasis::mass_ratio)
      .def("wavefunction", &SPBasis::wavefunction, py::arg("n"), py::arg("x"));

  m.def("ho_wavefunction", &ho_wavefunction, py::arg("n"), py::arg("x"), py::arg("basis"));

  py::class_<InteractionTensor>(m, "InteractionTensor")
      .def_property_readonly("n_max_a", &InteractionTensor::n_max_a)
      .def_property_readonly("n_max_b", &InteractionTensor::n_max_b)
      .def_property_readonly("mass_ratio", &InteractionTensor::mass_ratio)
      .def("__call__", &InteractionTensor::operator(), py::arg("m"), py::arg("n"),
           py::arg("p"), py::arg("q"));

  m.def("build_interaction_tensor",
        [](const SPBasis& a, const SPBasis& b) { return build_interaction_tensor(a, b); },
        py::arg("basis_a"), py::arg("basis_b"));

  py::class_<FockState>(m, "FockState")
      .def_property_readonly("occ",
                             [](const FockState& s) {
                               return std::vector<int>(s.occ.begin(), s.occ.end());
                             })
      .def_readonly("mode_b", &FockState::mode_b)
      .def("parity", &FockState::parity)
      .def("noninteracting_energy", &FockState::noninteracting_energy);

  py::class_<FockSpace>(m, "FockSpace")
      .def_static(
          "enumerate",
          [](int n_a, int n_max_a, int n_max_b, std::optional<double> e_cut,
             ParityBlock block) {
            return FockSpace::enumerate({n_a, n_max_a, n_max_b, e_cut, block});
          },
          py::arg("n_a"), py::arg("n_max_a"), py::arg("n_max_b"),
          py::arg("e_cut") = std::nullopt, py::arg("block") = ParityBlock::none)
      .def_property_readonly("dimension", &FockSpace::dimension)
      .def("state", &FockSpace::state, py::arg("i"));

  py::class_<SparseHamiltonian>(m, "SparseHamiltonian")
      .def_property_readonly("dimension", &SparseHamiltonian::dimension)
      .def_property_readonly("nonzeros", &SparseHamiltonian::nonzeros)
      .def("matvec",
           [](const SparseHamiltonian& h, const py::array_t<double, py::array::c_style>& v) {
             return h.matvec(as_vector(v));
           })
      .def("save", [](const SparseHamiltonian& h, const std::filesystem::path& p) {
        save_hamiltonian(p, h);
      });

  m.def("load_hamiltonian", &load_hamiltonian, py::arg("path"));
  m.def(
      "assemble_hamiltonian",
      [](const FockSpace& space, const InteractionTensor& tensor, double g, double mass_ratio) {
        return assemble_hamiltonian(space, tensor, g, mass_ratio);
      },
      py::arg("space"), py::arg("tensor"), py::arg("g"), py::arg("mass_ratio"));

  py::class_<SpectrumResult>(m, "SpectrumResult")
      .def_readonly("eigenvalues", &SpectrumResult::eigenvalues)
      .def_readonly("residuals", &SpectrumResult::residuals)
      .def_readonly("iterations", &SpectrumResult::iterations)
      .def("eigenvector", [](const SpectrumResult& s, std::size_t i) {
        return s.eigenvectors.at(i);
      });

  m.def(
      "lowest_eigenpairs",
      [](const SparseHamiltonian& h, int k, double tol, int max_iter, std::uint64_t seed) {
        return lowest_eigenpairs(h, {k, tol, max_iter, seed});
      },
      py::arg("h"), py::arg("k") = 4, py::arg("tol") = 1e-10, py::arg("max_iter") = 500,
      py::arg("seed") = 0x5eedULL);
  m.def("dense_spectrum", &dense_spectrum, py::arg("h"));

  py::class_<ObdmResult>(m, "ObdmResult")
      .def_readonly("mode_matrix", &ObdmResult::mode_matrix)
      .def_readonly("occupations", &ObdmResult::occupations)
      .def_readonly("natural_orbitals", &ObdmResult::natural_orbitals)
      .def_readonly("trace_raw", &ObdmResult::trace_raw);

  m.def("obdm_A",
        [](const FockSpace& space, const py::array_t<double, py::array::c_style>& v) {
          const auto vec = as_vector(v);
          return obdm_A(space, vec);
        });
  m.def("obdm_B",
        [](const FockSpace& space, const py::array_t<double, py::array::c_style>& v) {
          const auto vec = as_vector(v);
          return obdm_B(space, vec);
        });
  m.def("entanglement_entropy", &entanglement_entropy, py::arg("obdm"));

  py::class_<GridRendering>(m, "GridRendering")
      .def_readonly("grid", &GridRendering::grid)
      .def_readonly("values", &GridRendering::values)
      .def_readonly("profile", &GridRendering::profile)
      .def_readonly("trace_raw", &GridRendering::trace_raw);

  m.def("render_grid", &render_grid, py::arg("obdm"), py::arg("basis"),
        py::arg("box_half_width") = 5.0, py::arg("n_points") = 201);

  py::class_<ThresholdScan>(m, "ThresholdScan")
      .def_readonly("m_grid", &ThresholdScan::m_grid)
      .def_readonly("m_refined", &ThresholdScan::m_refined)
      .def_readonly("index", &ThresholdScan::index);

  m.def(
      "threshold_mass_scan",
      [](const std::vector<double>& ms, const std::vector<double>& lb) {
        return threshold_mass_scan(ms, lb);
      },
      py::arg("mass_ratios"), py::arg("lambda0_b"));

  py::class_<AnsatzState>(m, "AnsatzState")
      .def(py::init<int>(), py::arg("n_a"))
      .def_property_readonly("norm_constant", &AnsatzState::norm_constant)
      .def("amplitude",
           [](const AnsatzState& s, const std::vector<double>& xs, double y) {
             return s.amplitude(xs, y);
           },
           py::arg("xs"), py::arg("y"));

  py::class_<AnsatzObdm>(m, "AnsatzObdm")
      .def_readonly("rendering", &AnsatzObdm::rendering)
      .def_readonly("occupations", &AnsatzObdm::occupations)
      .def_readonly("entropy", &AnsatzObdm::entropy);

  m.def("ansatz_obdm", &ansatz_obdm, py::arg("state"), py::arg("species"),
        py::arg("box_half_width") = 5.0, py::arg("n_points") = 201);

  py::class_<DeltaBoundarySolution>(m, "DeltaBoundarySolution")
      .def_readonly("y", &DeltaBoundarySolution::y)
      .def_readonly("eps", &DeltaBoundarySolution::eps)
      .def_readonly("f", &DeltaBoundarySolution::f);

  m.def("solve_delta_sp",
        [](double y, double g) { return solve_delta_sp(y, g); }, py::arg("y"), py::arg("g"));
  m.def("solve_delta_sp_hardcore",
        [](double y) { return solve_delta_sp_hardcore(y); }, py::arg("y"));
  m.def("q11", [](double y, double g, int n_a) { return q11(y, g, n_a); }, py::arg("y"),
        py::arg("g"), py::arg("n_a"));

  py::class_<AdiabaticPotential>(m, "AdiabaticPotential")
      .def_readonly("y", &AdiabaticPotential::y)
      .def_readonly("eps", &AdiabaticPotential::eps)
      .def_readonly("q11", &AdiabaticPotential::q11)
      .def_readonly("potential", &AdiabaticPotential::potential)
      .def_readonly("phi", &AdiabaticPotential::phi)
      .def_readonly("energy", &AdiabaticPotential::energy);

  m.def("solve_effective",
        [](int n_a, double g, double mass_ratio) { return solve_effective(n_a, g, mass_ratio); },
        py::arg("n_a"), py::arg("g"), py::arg("mass_ratio") = 1.0);

  py::class_<ValidityReport>(m, "ValidityReport")
      .def_readonly("valid", &ValidityReport::valid)
      .def_readonly("barrier", &ValidityReport::barrier)
      .def_readonly("central_weight", &ValidityReport::central_weight)
      .def_readonly("message", &ValidityReport::message);

  m.def("validity_check",
        [](int n_a, double g, double mass_ratio) { return validity_check(n_a, g, mass_ratio); },
        py::arg("n_a"), py::arg("g"), py::arg("mass_ratio"));

  m.attr("__version__") = "0.1.0";
}

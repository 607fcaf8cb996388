#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "becmerge/observables.hpp"
#include "becmerge/propagator.hpp"
#include "becmerge/run.hpp"
#include "becmerge/schedule.hpp"
#include "becmerge/spectrum.hpp"
#include "becmerge/spin_core.hpp"
#include "becmerge/states.hpp"

namespace py = pybind11;
using namespace becmerge;

namespace {

py::dict record_dict(const TrajectoryRecord& r) {
    py::dict d;
    d["t"] = r.t;
    d["u"] = r.u;
    d["j"] = r.j;
    d["eta"] = r.eta;
    d["theta"] = r.theta;
    d["phi"] = r.phi;
    d["energy"] = r.energy;
    d["norm_drift"] = r.norm_drift;
    d["spread90"] = r.spread90;
    return d;
}

}  // namespace

PYBIND11_MODULE(becmerge, m) {
    m.doc() = "Two-mode simulator for merging independent Bose condensates";

    py::class_<SectorBasis>(m, "SectorBasis")
        .def(py::init<int>(), py::arg("n_total"))
        .def_property_readonly("n_total", &SectorBasis::n_total)
        .def_property_readonly("dim", &SectorBasis::dim)
        .def("m", &SectorBasis::m, py::arg("k"))
        .def("ladder", &SectorBasis::ladder, py::arg("k"));

    py::class_<TridiagonalHamiltonian>(m, "TridiagonalHamiltonian")
        .def_readonly("diag", &TridiagonalHamiltonian::diag)
        .def_readonly("offdiag", &TridiagonalHamiltonian::offdiag)
        .def_property_readonly("dim", &TridiagonalHamiltonian::dim);

    m.def("build_hamiltonian", &build_hamiltonian, py::arg("basis"), py::arg("u"),
          py::arg("j"));
    m.def(
        "apply",
        [](const TridiagonalHamiltonian& h, const std::vector<Complex>& psi) {
            return becmerge::apply(h, psi);
        },
        py::arg("h"), py::arg("psi"));
    m.def(
        "spin_expectations",
        [](const SectorBasis& b, const std::vector<Complex>& psi) {
            const SpinExpectations e = spin_expectations(b, psi);
            return py::make_tuple(e.sx, e.sy, e.sz);
        },
        py::arg("basis"), py::arg("psi"));

    py::enum_<MergeDirection>(m, "MergeDirection")
        .value("Radial", MergeDirection::Radial)
        .value("Axial", MergeDirection::Axial);

    py::class_<TrapGeometry>(m, "TrapGeometry")
        .def(py::init<>())
        .def_readwrite("sigma_r", &TrapGeometry::sigma_r)
        .def_readwrite("sigma_z", &TrapGeometry::sigma_z)
        .def_readwrite("separation0", &TrapGeometry::separation0)
        .def_readwrite("direction", &TrapGeometry::direction)
        .def_readwrite("t_merge", &TrapGeometry::t_merge)
        .def_property_readonly("sigma_merge", &TrapGeometry::sigma_merge)
        .def("weak_initial_separation", &TrapGeometry::weak_initial_separation);

    m.def("make_geometry", &make_geometry, py::arg("direction"), py::arg("t_merge"),
          py::arg("sep0_in_sigma_m") = 6.0, py::arg("sigma_ratio") = 10.0);
    m.def("separation", &separation, py::arg("geometry"), py::arg("t"));
    m.def("raw_u_shape", &raw_u_shape, py::arg("geometry"), py::arg("d"));
    m.def("raw_j_shape", &raw_j_shape, py::arg("geometry"), py::arg("d"));

    py::class_<MergeSchedule>(m, "MergeSchedule")
        .def_property_readonly("u0", &MergeSchedule::u0)
        .def_property_readonly("j0", &MergeSchedule::j0)
        .def_property_readonly("n_cal", &MergeSchedule::n_cal)
        .def_property_readonly("ratio", &MergeSchedule::ratio)
        .def_property_readonly("t_merge", &MergeSchedule::t_merge)
        .def_property_readonly("separation_warning", &MergeSchedule::separation_warning)
        .def("u_at", &MergeSchedule::u_at, py::arg("t"))
        .def("j_at", &MergeSchedule::j_at, py::arg("t"));

    m.def("calibrate", &calibrate, py::arg("geometry"), py::arg("n"), py::arg("ratio") = 4.0);
    m.def(
        "sample",
        [](const MergeSchedule& s, double t) {
            const Coefficients c = sample(s, t);
            return py::make_tuple(c.u, c.j);
        },
        py::arg("schedule"), py::arg("t"));

    py::class_<SectorState>(m, "SectorState")
        .def_readonly("basis", &SectorState::basis)
        .def_readonly("amplitudes", &SectorState::amplitudes)
        .def_readonly("weight", &SectorState::weight);

    py::class_<MixtureState>(m, "MixtureState")
        .def_readonly("sectors", &MixtureState::sectors)
        .def_readonly("n_mean", &MixtureState::n_mean);

    m.def("make_sector_state", &make_sector_state, py::arg("basis"), py::arg("amplitudes"),
          py::arg("weight") = 1.0);
    m.def("fock_basis_state", &fock_basis_state, py::arg("n1"), py::arg("n2"));
    m.def("fock_fock", &fock_fock, py::arg("n1"), py::arg("n2"));
    m.def("fock_coherent", &fock_coherent, py::arg("n1"), py::arg("alpha_sq"),
          py::arg("tail_mass") = 1e-8, py::arg("max_sectors") = 4096);

    py::class_<OneBodyDensityMatrix>(m, "OneBodyDensityMatrix")
        .def_readonly("n11", &OneBodyDensityMatrix::n11)
        .def_readonly("n22", &OneBodyDensityMatrix::n22)
        .def_readonly("c12", &OneBodyDensityMatrix::c12)
        .def_property_readonly("trace", &OneBodyDensityMatrix::trace);

    m.def("density_matrix",
          py::overload_cast<const SectorState&>(&density_matrix), py::arg("state"));
    m.def("density_matrix",
          py::overload_cast<const MixtureState&>(&density_matrix), py::arg("mixture"));

    py::class_<CondensateReading>(m, "CondensateReading")
        .def_readonly("eta", &CondensateReading::eta)
        .def_readonly("theta", &CondensateReading::theta)
        .def_readonly("phi", &CondensateReading::phi);

    m.def("condensate_reading", &condensate_reading, py::arg("rho"), py::arg("total"));

    py::class_<LevelPopulations>(m, "LevelPopulations")
        .def_readonly("populations", &LevelPopulations::populations)
        .def_readonly("spread90", &LevelPopulations::spread90);

    m.def("level_populations", &level_populations, py::arg("state"), py::arg("u"),
          py::arg("j"), py::arg("max_dim") = 2001);
    m.def("spread90", py::overload_cast<const SectorState&, double, double>(&spread90),
          py::arg("state"), py::arg("u"), py::arg("j"));
    m.def("spread90", py::overload_cast<const MixtureState&, double, double>(&spread90),
          py::arg("mixture"), py::arg("u"), py::arg("j"));
    m.def("energy", py::overload_cast<const SectorState&, double, double>(&energy),
          py::arg("state"), py::arg("u"), py::arg("j"));
    m.def("energy", py::overload_cast<const MixtureState&, double, double>(&energy),
          py::arg("mixture"), py::arg("u"), py::arg("j"));

    py::class_<EvolutionConfig>(m, "EvolutionConfig")
        .def(py::init<>())
        .def_readwrite("steps_per_unit_time", &EvolutionConfig::steps_per_unit_time)
        .def_readwrite("sample_count", &EvolutionConfig::sample_count)
        .def_readwrite("norm_tolerance", &EvolutionConfig::norm_tolerance)
        .def_readwrite("threads", &EvolutionConfig::threads)
        .def_readwrite("track_levels", &EvolutionConfig::track_levels);

    py::class_<SectorEvolution>(m, "SectorEvolution")
        .def_readonly("final_state", &SectorEvolution::final_state)
        .def_readonly("times", &SectorEvolution::times)
        .def_readonly("samples", &SectorEvolution::samples)
        .def_readonly("norm_drift", &SectorEvolution::norm_drift);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("times", &Trajectory::times)
        .def("record", [](const Trajectory& t, std::size_t i) {
            return record_dict(t.records.at(i));
        })
        .def("__len__", [](const Trajectory& t) { return t.records.size(); })
        .def("records", [](const Trajectory& t) {
            py::list out;
            for (const auto& r : t.records) out.append(record_dict(r));
            return out;
        });

    m.def("evolve_sector", &evolve_sector, py::arg("state"), py::arg("schedule"),
          py::arg("config") = EvolutionConfig{});
    m.def("evolve_constant", &evolve_constant, py::arg("state"), py::arg("u"), py::arg("j"),
          py::arg("t_final"), py::arg("config") = EvolutionConfig{});
    m.def("evolve_mixture", &evolve_mixture, py::arg("mixture"), py::arg("schedule"),
          py::arg("config") = EvolutionConfig{},
          py::call_guard<py::gil_scoped_release>());
    m.def("dense_reference_evolve", &dense_reference_evolve, py::arg("state"), py::arg("u"),
          py::arg("j"), py::arg("t"));

    m.def("eigenvalues", &eigenvalues, py::arg("n"), py::arg("u"), py::arg("j"));
    m.def(
        "spectrum_sweep",
        [](int n, const std::vector<double>& grid) { return spectrum_sweep(n, grid); },
        py::arg("n"), py::arg("ratio_grid"));
    m.def("default_ratio_grid", &default_ratio_grid, py::arg("n"));

    py::class_<SpectrumTable>(m, "SpectrumTable")
        .def_readonly("n_total", &SpectrumTable::n_total)
        .def_readonly("ratios", &SpectrumTable::ratios)
        .def_readonly("levels", &SpectrumTable::levels);

    py::enum_<Regime>(m, "Regime")
        .value("Fock", Regime::Fock)
        .value("Josephson", Regime::Josephson)
        .value("Rabi", Regime::Rabi);

    m.def("regime_classify", &regime_classify, py::arg("n"), py::arg("u"), py::arg("j"),
          py::arg("fock_boundary") = 1.0, py::arg("rabi_boundary") = 1.0);

    py::register_exception<PropagationError>(m, "PropagationError", PyExc_RuntimeError);
}

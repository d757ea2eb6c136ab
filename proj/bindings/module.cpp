#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "trimode/config.hpp"
#include "trimode/constants.hpp"
#include "trimode/dynamics.hpp"
#include "trimode/errors.hpp"
#include "trimode/entanglement.hpp"
#include "trimode/model.hpp"
#include "trimode/sweep.hpp"

namespace py = pybind11;
using namespace trimode;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Steady-state covariance and Gaussian entanglement of the "
              "coupled mirror-field-atoms model";

    py::register_exception<InvalidParameter>(m, "InvalidParameter", PyExc_ValueError);
    py::register_exception<ValidityError>(m, "ValidityError", PyExc_ValueError);
    py::register_exception<UnstableWorkingPoint>(m, "UnstableWorkingPoint", PyExc_RuntimeError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

    py::class_<PhysicalParams>(m, "PhysicalParams")
        .def(py::init<>())
        .def_readwrite("omega_m", &PhysicalParams::omega_m)
        .def_readwrite("quality_factor", &PhysicalParams::quality_factor)
        .def_readwrite("mass", &PhysicalParams::mass)
        .def_readwrite("cavity_length", &PhysicalParams::cavity_length)
        .def_readwrite("finesse", &PhysicalParams::finesse)
        .def_readwrite("kappa", &PhysicalParams::kappa)
        .def_readwrite("laser_wavelength", &PhysicalParams::laser_wavelength)
        .def_readwrite("laser_power", &PhysicalParams::laser_power)
        .def_readwrite("detuning_f", &PhysicalParams::detuning_f)
        .def_readwrite("atom_coupling", &PhysicalParams::atom_coupling)
        .def_readwrite("atom_linewidth", &PhysicalParams::atom_linewidth)
        .def_readwrite("detuning_a", &PhysicalParams::detuning_a)
        .def_readwrite("temperature", &PhysicalParams::temperature)
        .def_readwrite("single_atom_g", &PhysicalParams::single_atom_g)
        .def("validate", &PhysicalParams::validate);

    py::class_<DerivedConstants>(m, "DerivedConstants")
        .def_readonly("omega_c", &DerivedConstants::omega_c)
        .def_readonly("omega_l", &DerivedConstants::omega_l)
        .def_readonly("coupling_g0", &DerivedConstants::coupling_g0)
        .def_readonly("drive_amplitude", &DerivedConstants::drive_amplitude)
        .def_readonly("kappa", &DerivedConstants::kappa)
        .def_readonly("gamma_m", &DerivedConstants::gamma_m);

    py::class_<WorkingPoint>(m, "WorkingPoint")
        .def_readonly("alpha_s", &WorkingPoint::alpha_s)
        .def_readonly("photon_number", &WorkingPoint::photon_number)
        .def_readonly("q_s", &WorkingPoint::q_s)
        .def_readonly("c_s", &WorkingPoint::c_s)
        .def_readonly("coupling_gm", &WorkingPoint::coupling_gm)
        .def_readonly("detuning", &WorkingPoint::detuning)
        .def_readonly("bistable", &WorkingPoint::bistable)
        .def_readonly("all_roots", &WorkingPoint::all_roots)
        .def_readonly("excitation_probability", &WorkingPoint::excitation_probability)
        .def_readonly("warning", &WorkingPoint::warning);

    py::class_<EffectiveParams>(m, "EffectiveParams")
        .def(py::init<>())
        .def_readwrite("omega_m", &EffectiveParams::omega_m)
        .def_readwrite("gamma_m", &EffectiveParams::gamma_m)
        .def_readwrite("kappa", &EffectiveParams::kappa)
        .def_readwrite("detuning", &EffectiveParams::detuning)
        .def_readwrite("coupling_gm", &EffectiveParams::coupling_gm)
        .def_readwrite("atom_coupling", &EffectiveParams::atom_coupling)
        .def_readwrite("atom_linewidth", &EffectiveParams::atom_linewidth)
        .def_readwrite("detuning_a", &EffectiveParams::detuning_a)
        .def_readwrite("nbar", &EffectiveParams::nbar);

    m.def("derive_constants", &derive_constants);
    m.def("thermal_occupation", &thermal_occupation,
          py::arg("temperature"), py::arg("omega_m"));
    m.def("solve_working_point", &solve_working_point);
    m.def("working_point_at_detuning", &working_point_at_detuning,
          py::arg("params"), py::arg("effective_detuning"));
    m.def("effective_params", &effective_params);
    m.def("build_drift", &build_drift);
    m.def("build_diffusion", &build_diffusion);

    py::class_<StabilityResult>(m, "StabilityResult")
        .def_readonly("stable", &StabilityResult::stable)
        .def_readonly("max_real_part", &StabilityResult::max_real_part);

    py::class_<LyapunovSolution>(m, "LyapunovSolution")
        .def_readonly("value", &LyapunovSolution::value)
        .def_readonly("ill_conditioned", &LyapunovSolution::ill_conditioned);

    m.def("is_stable", &is_stable);
    m.def("solve_lyapunov", &solve_lyapunov, py::arg("drift"), py::arg("diffusion"));
    m.def("integrate_covariance", &integrate_covariance,
          py::arg("drift"), py::arg("diffusion"), py::arg("initial"), py::arg("time"));

    m.def("symplectic_form", &symplectic_form, py::arg("n_modes"));
    m.def("reduce", &reduce, py::arg("cm"), py::arg("modes"));
    m.def("symplectic_eigenvalues", &symplectic_eigenvalues);
    m.def("partial_transpose", &partial_transpose, py::arg("cm"), py::arg("mode"));
    m.def("is_physical", &is_physical, py::arg("cm"), py::arg("tol") = 1e-9);
    m.def("log_negativity_2mode", &log_negativity_2mode);
    m.def("log_negativity_1v2", &log_negativity_1v2, py::arg("cm"), py::arg("mode"));
    m.def("effective_occupation", &effective_occupation);

    py::enum_<TripartiteClass>(m, "TripartiteClass")
        .value("fully_inseparable", TripartiteClass::fully_inseparable)
        .value("one_mode_biseparable", TripartiteClass::one_mode_biseparable)
        .value("two_mode_biseparable", TripartiteClass::two_mode_biseparable)
        .value("not_class_1_3", TripartiteClass::not_class_1_3);

    py::class_<TripartiteResult>(m, "TripartiteResult")
        .def_readonly("cls", &TripartiteResult::cls)
        .def_readonly("separable_mode", &TripartiteResult::separable_mode)
        .def_readonly("min_pt_eigenvalue", &TripartiteResult::min_pt_eigenvalue)
        .def("__str__", [](const TripartiteResult& r) { return to_string(r); });

    m.def("tripartite_class", &tripartite_class);

    py::class_<EntanglementReport>(m, "EntanglementReport")
        .def_readonly("e_mirror_field", &EntanglementReport::e_mirror_field)
        .def_readonly("e_mirror_atoms", &EntanglementReport::e_mirror_atoms)
        .def_readonly("e_atoms_field", &EntanglementReport::e_atoms_field)
        .def_readonly("n_eff", &EntanglementReport::n_eff)
        .def_readonly("tripartite", &EntanglementReport::tripartite)
        .def_readonly("stable", &EntanglementReport::stable);

    m.def("report", &report, py::arg("cm"), py::arg("stability"));

    py::enum_<InputMode>(m, "InputMode")
        .value("physical", InputMode::physical)
        .value("effective", InputMode::effective);

    py::enum_<SweepAxis>(m, "SweepAxis")
        .value("delta", SweepAxis::delta)
        .value("delta_a", SweepAxis::delta_a)
        .value("temperature", SweepAxis::temperature);

    py::class_<SweepSpec>(m, "SweepSpec")
        .def_readonly("mode", &SweepSpec::mode)
        .def_readonly("physical", &SweepSpec::physical)
        .def_readonly("effective", &SweepSpec::effective)
        .def_readonly("axis", &SweepSpec::axis)
        .def_readonly("start", &SweepSpec::start)
        .def_readonly("stop", &SweepSpec::stop)
        .def_readonly("count", &SweepSpec::count);

    py::class_<ResolvedPoint>(m, "ResolvedPoint")
        .def_readonly("effective", &ResolvedPoint::effective)
        .def_readonly("working_point", &ResolvedPoint::working_point);

    m.def("parse_config", &parse_config, py::arg("text"));
    m.def("resolve_point", &resolve_point,
          py::arg("spec"), py::arg("axis_value") = std::nullopt);
    m.def("preset_text", &preset_text, py::arg("name"),
          py::return_value_policy::copy);
    m.def("preset_names", &preset_names);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("axis_value", &SweepRow::axis_value)
        .def_readonly("stable", &SweepRow::stable)
        .def_readonly("max_real_part", &SweepRow::max_real_part)
        .def_readonly("report", &SweepRow::report)
        .def_readonly("error", &SweepRow::error);

    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("rows", &SweepResult::rows)
        .def_readonly("metadata", &SweepResult::metadata)
        .def_readonly("failed_points", &SweepResult::failed_points);

    py::enum_<EmitFormat>(m, "EmitFormat")
        .value("csv", EmitFormat::csv)
        .value("json", EmitFormat::json);

    m.def("run_sweep", &run_sweep, py::arg("spec"), py::arg("workers") = 1,
          py::call_guard<py::gil_scoped_release>());
    m.def("emit", &emit, py::arg("result"), py::arg("format"));

    m.attr("hbar") = consts::hbar;
    m.attr("k_boltzmann") = consts::k_boltzmann;
    m.attr("c_light") = consts::c_light;
    m.attr("constants_table") = consts::table_version;
}

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tunnelgate/analysis.hpp"
#include "tunnelgate/approx.hpp"
#include "tunnelgate/oracle.hpp"
#include "tunnelgate/verify.hpp"

namespace py = pybind11;

using namespace tunnelgate;

PYBIND11_MODULE(_tunnelgate, m) {
  m.doc() =
      "Exact and transparent-limit phase times for relativistic tunneling "
      "through two successive square barriers, cross-checked against a Dirac "
      "transfer-matrix oracle";
  m.attr("__version__") = "0.1.0";

  py::register_exception<TunnelError>(m, "TunnelError", PyExc_ValueError);

  py::enum_<SolutionBranch>(m, "SolutionBranch")
      .value("A", SolutionBranch::A)
      .value("B", SolutionBranch::B)
      .value("Degenerate", SolutionBranch::Degenerate);

  py::enum_<TimeMethod>(m, "TimeMethod")
      .value("Exact", TimeMethod::Exact)
      .value("BranchA", TimeMethod::BranchA)
      .value("BranchB", TimeMethod::BranchB)
      .value("Oracle", TimeMethod::Oracle)
      .value("FreeReference", TimeMethod::FreeReference);

  py::enum_<DiffScheme>(m, "DiffScheme")
      .value("Central2", DiffScheme::Central2)
      .value("Richardson4", DiffScheme::Richardson4);

  py::enum_<PhaseConvention>(m, "PhaseConvention")
      .value("NoSpan", PhaseConvention::None)
      .value("Gap", PhaseConvention::Gap)
      .value("FullSpan", PhaseConvention::FullSpan);

  py::enum_<Region>(m, "Region")
      .value("Superluminal", Region::Superluminal)
      .value("Subluminal", Region::Subluminal)
      .value("OnCurve", Region::OnCurve);

  py::enum_<UnitMode>(m, "UnitMode")
      .value("Natural", UnitMode::Natural)
      .value("Si", UnitMode::Si);

  py::class_<UnitSystem>(m, "UnitSystem")
      .def_static("natural", &UnitSystem::natural)
      .def_static("si", &UnitSystem::si, py::arg("mass_kg"))
      .def_readonly("mode", &UnitSystem::mode)
      .def_readonly("mass_kg", &UnitSystem::mass_kg)
      .def("energy_to_natural", &UnitSystem::energy_to_natural)
      .def("energy_from_natural", &UnitSystem::energy_from_natural)
      .def("length_to_natural", &UnitSystem::length_to_natural)
      .def("length_from_natural", &UnitSystem::length_from_natural)
      .def("time_to_natural", &UnitSystem::time_to_natural)
      .def("time_from_natural", &UnitSystem::time_from_natural);

  py::class_<BarrierSystem>(m, "BarrierSystem")
      .def(py::init([](double mass, double energy, double potential,
                       double width, double gap) {
             BarrierSystem sys;
             sys.mass = mass;
             sys.energy = energy;
             sys.potential = potential;
             sys.width = width;
             sys.gap = gap;
             return sys;
           }),
           py::arg("mass") = 1.0, py::arg("energy") = 0.0,
           py::arg("potential") = 0.0, py::arg("width") = 0.0,
           py::arg("gap") = 0.0)
      .def_readwrite("mass", &BarrierSystem::mass)
      .def_readwrite("energy", &BarrierSystem::energy)
      .def_readwrite("potential", &BarrierSystem::potential)
      .def_readwrite("width", &BarrierSystem::width)
      .def_readwrite("gap", &BarrierSystem::gap)
      .def("__repr__", [](const BarrierSystem& s) {
        return "BarrierSystem(mass=" + std::to_string(s.mass) +
               ", energy=" + std::to_string(s.energy) +
               ", potential=" + std::to_string(s.potential) +
               ", width=" + std::to_string(s.width) +
               ", gap=" + std::to_string(s.gap) + ")";
      });

  m.def("make_si_system", &make_si_system, py::arg("mass_kg"),
        py::arg("energy_eV"), py::arg("potential_eV"), py::arg("width_m"),
        py::arg("gap_m"));

  py::class_<Kinematics>(m, "Kinematics")
      .def_readonly("k", &Kinematics::k)
      .def_readonly("q", &Kinematics::q)
      .def_readonly("phase_velocity", &Kinematics::phase_velocity)
      .def_readonly("group_velocity", &Kinematics::group_velocity)
      .def_readonly("matching_ratio", &Kinematics::matching_ratio)
      .def_readonly("branch", &Kinematics::branch);

  m.def("validate", &validate, py::arg("system"));
  m.def("derive_kinematics", &derive_kinematics, py::arg("system"));
  m.def("validate_transparency", &validate_transparency,
        py::arg("kinematics"), py::arg("width"));

  py::class_<TimeResult>(m, "TimeResult")
      .def_readonly("value", &TimeResult::value)
      .def_readonly("method", &TimeResult::method)
      .def_readonly("qa", &TimeResult::qa);

  py::class_<PhaseTimeTerms>(m, "PhaseTimeTerms")
      .def_readonly("gamma", &PhaseTimeTerms::gamma)
      .def_readonly("delta", &PhaseTimeTerms::delta)
      .def_readonly("h1", &PhaseTimeTerms::h1)
      .def_readonly("denom", &PhaseTimeTerms::denom);

  m.def("phase_time_terms", &phase_time_terms, py::arg("kinematics"),
        py::arg("system"));
  m.def("phase_time_exact", &phase_time_exact, py::arg("system"));
  m.def("free_time", &free_time, py::arg("system"));

  py::class_<TransmissionRecord>(m, "TransmissionRecord")
      .def_readonly("t", &TransmissionRecord::t)
      .def_readonly("r", &TransmissionRecord::r)
      .def_readonly("flux_residual", &TransmissionRecord::flux_residual)
      .def_readonly("phase", &TransmissionRecord::phase);

  py::class_<DifferentiationPlan>(m, "DifferentiationPlan")
      .def(py::init([](double relative_step, DiffScheme scheme) {
             return DifferentiationPlan{relative_step, scheme};
           }),
           py::arg("relative_step") = 1e-6,
           py::arg("scheme") = DiffScheme::Richardson4)
      .def_readwrite("relative_step", &DifferentiationPlan::relative_step)
      .def_readwrite("scheme", &DifferentiationPlan::scheme);

  m.def("scatter", &scatter, py::arg("system"));
  m.def(
      "phase_time_numeric",
      [](const BarrierSystem& sys, const DifferentiationPlan& plan) {
        return phase_time_numeric(sys, plan);
      },
      py::arg("system"), py::arg("plan") = DifferentiationPlan{});
  m.def("calibrate_convention", &calibrate_convention);

  py::class_<ExpansionResult>(m, "ExpansionResult")
      .def_readonly("value", &ExpansionResult::value)
      .def_readonly("qa", &ExpansionResult::qa);

  m.def("potential_for_q", &potential_for_q, py::arg("branch"),
        py::arg("energy"), py::arg("q"), py::arg("mass") = 1.0);
  m.def("expansion_first_order", &expansion_first_order,
        py::arg("kinematics"), py::arg("system"));
  m.def("phase_time_branch_a", &phase_time_branch_a, py::arg("system"));
  m.def("phase_time_branch_b", &phase_time_branch_b, py::arg("system"));

  py::class_<RatioPoint>(m, "RatioPoint")
      .def(py::init([](double beta, double width_ratio, SolutionBranch branch,
                       bool feasible) {
             return RatioPoint{beta, width_ratio, branch, feasible};
           }),
           py::arg("beta"), py::arg("width_ratio"), py::arg("branch"),
           py::arg("feasible") = true)
      .def_readonly("beta", &RatioPoint::beta)
      .def_readonly("width_ratio", &RatioPoint::width_ratio)
      .def_readonly("branch", &RatioPoint::branch)
      .def_readonly("feasible", &RatioPoint::feasible);

  py::class_<RegionVerdict>(m, "RegionVerdict")
      .def_readonly("verdict", &RegionVerdict::verdict)
      .def_readonly("margin", &RegionVerdict::margin);

  m.def("time_gain", &time_gain, py::arg("system"), py::arg("branch"));
  m.def("traversal_velocity", &traversal_velocity, py::arg("system"),
        py::arg("branch"));
  m.def(
      "threshold_curve",
      [](SolutionBranch branch, const std::vector<double>& betas) {
        return threshold_curve(branch, betas);
      },
      py::arg("branch"), py::arg("betas"));
  m.def("critical_beta", &critical_beta, py::arg("branch"));
  m.def("gain_threshold_beta", &gain_threshold_beta);
  m.def("classify", &classify, py::arg("point"));

  py::class_<SuiteResult>(m, "SuiteResult")
      .def_readonly("name", &SuiteResult::name)
      .def_readonly("passed", &SuiteResult::passed)
      .def_readonly("statistic", &SuiteResult::statistic)
      .def_readonly("detail", &SuiteResult::detail);

  m.def(
      "run_verification",
      [](bool corrupt_h1) {
        VerifyOptions options;
        options.corrupt_h1 = corrupt_h1;
        return run_verification(options);
      },
      py::arg("corrupt_h1") = false);
}

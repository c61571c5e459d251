#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "xxzbath/entanglement.hpp"
#include "xxzbath/errors.hpp"
#include "xxzbath/experiments.hpp"
#include "xxzbath/legacy_forms.hpp"
#include "xxzbath/model.hpp"
#include "xxzbath/oracle.hpp"

namespace py = pybind11;
using namespace xxzbath;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Concurrence dynamics of a two-qubit XXZ+DM chain coupled to a single-mode "
              "thermal bosonic bath";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<NumericalFailure>(m, "NumericalFailure", PyExc_RuntimeError);
    py::register_exception<FallbackToGeneric>(m, "FallbackToGeneric", PyExc_ArithmeticError);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init<>())
        .def_readwrite("mu0", &ModelParams::mu0)
        .def_readwrite("omega", &ModelParams::omega)
        .def_readwrite("gamma_z", &ModelParams::gamma_z)
        .def_readwrite("dz_sys", &ModelParams::dz_sys)
        .def_readwrite("g0", &ModelParams::g0)
        .def_readwrite("g_bath", &ModelParams::g_bath)
        .def_readwrite("gamma_bath", &ModelParams::gamma_bath)
        .def_readwrite("dz_bath", &ModelParams::dz_bath)
        .def_readwrite("temperature", &ModelParams::temperature)
        .def("__repr__", [](const ModelParams& p) {
            return "ModelParams(mu0=" + format_double(p.mu0) + ", omega=" +
                   format_double(p.omega) + ", gamma_z=" + format_double(p.gamma_z) +
                   ", dz_sys=" + format_double(p.dz_sys) + ", g0=" + format_double(p.g0) +
                   ", g_bath=" + format_double(p.g_bath) + ", gamma_bath=" +
                   format_double(p.gamma_bath) + ", dz_bath=" + format_double(p.dz_bath) +
                   ", temperature=" + format_double(p.temperature) + ")";
        });

    m.def("validate", [](const ModelParams& p) {
        std::vector<std::tuple<std::string, std::string, std::string>> out;
        for (const auto& issue : validate(p)) {
            out.emplace_back(issue.severity == ValidationIssue::Severity::Error ? "error"
                                                                                : "warning",
                             issue.code, issue.message);
        }
        return out;
    });
    m.def("is_resonant", &is_resonant);

    py::class_<InitialQubitState>(m, "InitialQubitState")
        .def(py::init<std::complex<double>, std::complex<double>>(), py::arg("alpha"),
             py::arg("beta"))
        .def_static("normalized", &InitialQubitState::normalized, py::arg("alpha"),
                    py::arg("beta"))
        .def_readonly("alpha", &InitialQubitState::alpha)
        .def_readonly("beta", &InitialQubitState::beta);

    py::class_<ThermalDistribution>(m, "ThermalDistribution")
        .def_readonly("weights", &ThermalDistribution::weights)
        .def_readonly("cutoff", &ThermalDistribution::cutoff)
        .def_readonly("tail_epsilon", &ThermalDistribution::tail_epsilon)
        .def_readonly("ratio", &ThermalDistribution::ratio);
    m.def("thermal_weights", &thermal_weights, py::arg("g_bath"), py::arg("temperature"),
          py::arg("tail_epsilon") = 1e-10);

    py::enum_<Branch>(m, "Branch")
        .value("Eleven", Branch::Eleven)
        .value("ZeroZero", Branch::ZeroZero);

    py::class_<BranchCoefficients>(m, "BranchCoefficients")
        .def_readonly("branch", &BranchCoefficients::branch)
        .def_readonly("n", &BranchCoefficients::n)
        .def_readonly("c_double_flip", &BranchCoefficients::c_double_flip)
        .def_readonly("c_single_a", &BranchCoefficients::c_single_a)
        .def_readonly("c_single_b", &BranchCoefficients::c_single_b)
        .def_readonly("c_stay", &BranchCoefficients::c_stay)
        .def_readonly("time", &BranchCoefficients::time);

    py::class_<EigenFrequencies>(m, "EigenFrequencies")
        .def_readonly("l_plus", &EigenFrequencies::l_plus)
        .def_readonly("l_minus", &EigenFrequencies::l_minus);
    m.def("eigenfrequencies", &eigenfrequencies, py::arg("gamma_z"), py::arg("omega"),
          py::arg("g0"), py::arg("n"));

    m.def("closed_form_branch11", &closed_form_branch11, py::arg("params"), py::arg("n"),
          py::arg("t"));
    m.def("closed_form_branch00", &closed_form_branch00, py::arg("params"), py::arg("n"),
          py::arg("t"));
    m.def(
        "integrate_branch",
        [](const ModelParams& p, Branch b, int n, const std::vector<double>& grid,
           double rel_tol, double abs_tol) {
            return integrate_branch(p, b, n, grid, IntegratorOptions{rel_tol, abs_tol});
        },
        py::arg("params"), py::arg("branch"), py::arg("n"), py::arg("t_grid"),
        py::arg("rel_tol") = 1e-10, py::arg("abs_tol") = 1e-12);
    m.def("sector_norm", &sector_norm);

    py::class_<TruncatedSpace>(m, "TruncatedSpace")
        .def(py::init<int>(), py::arg("fock_cutoff"))
        .def_readonly("fock_cutoff", &TruncatedSpace::fock_cutoff)
        .def_property_readonly("total_dim", &TruncatedSpace::total_dim)
        .def("index", &TruncatedSpace::index, py::arg("q1"), py::arg("q2"), py::arg("m"));

    m.def(
        "build_hamiltonian",
        [](const ModelParams& p, int fock_cutoff) {
            return build_hamiltonian(p, TruncatedSpace{fock_cutoff}).matrix;
        },
        py::arg("params"), py::arg("fock_cutoff"));

    py::class_<OraclePropagator>(m, "OraclePropagator")
        .def(py::init<const ModelParams&, int, int>(), py::arg("params"),
             py::arg("fock_cutoff"), py::arg("dim_cap") = 4096)
        .def("evolve", &OraclePropagator::evolve, py::arg("psi0"), py::arg("t"))
        .def("reduced_density", &OraclePropagator::reduced_density, py::arg("init"),
             py::arg("dist"), py::arg("t"))
        .def("branch_coefficients", &OraclePropagator::branch_coefficients, py::arg("branch"),
             py::arg("n"), py::arg("t"));

    py::class_<XStateDensity>(m, "XStateDensity")
        .def(py::init<>())
        .def_readwrite("rho11", &XStateDensity::rho11)
        .def_readwrite("rho22", &XStateDensity::rho22)
        .def_readwrite("rho33", &XStateDensity::rho33)
        .def_readwrite("rho44", &XStateDensity::rho44)
        .def_readwrite("rho14", &XStateDensity::rho14)
        .def_readwrite("rho23", &XStateDensity::rho23)
        .def_readwrite("time", &XStateDensity::time)
        .def("matrix", &XStateDensity::matrix);

    m.def("assemble_density", &assemble_density, py::arg("coeffs11"), py::arg("coeffs00"),
          py::arg("init"), py::arg("dist"), py::arg("params"), py::arg("t"));
    m.def(
        "reduced_density_oracle",
        [](const ModelParams& p, const InitialQubitState& init, const ThermalDistribution& d,
           double t) { return reduced_density_oracle(p, init, d, t).state; },
        py::arg("params"), py::arg("init"), py::arg("dist"), py::arg("t"));

    m.def("concurrence_xstate", &concurrence_xstate, py::arg("rho"));
    m.def("concurrence_generic", &concurrence_generic, py::arg("rho"));

    py::enum_<Method>(m, "Method")
        .value("ClosedForm", Method::ClosedForm)
        .value("Ode", Method::Ode)
        .value("Oracle", Method::Oracle);

    py::class_<ConcurrenceSeries>(m, "ConcurrenceSeries")
        .def_readonly("times", &ConcurrenceSeries::times)
        .def_readonly("values", &ConcurrenceSeries::values)
        .def_readonly("method", &ConcurrenceSeries::method)
        .def_readonly("params_digest", &ConcurrenceSeries::params_digest);

    m.def(
        "detect_esd",
        [](const std::vector<double>& times, const std::vector<double>& values,
           double threshold) {
            ConcurrenceSeries s;
            s.times = times;
            s.values = values;
            return detect_esd(s, threshold);
        },
        py::arg("times"), py::arg("values"), py::arg("threshold") = 1e-6);

    py::class_<Diagnostics>(m, "Diagnostics")
        .def_readonly("max_trace_error", &Diagnostics::max_trace_error)
        .def_readonly("max_hermiticity_gap", &Diagnostics::max_hermiticity_gap)
        .def_readonly("min_eigenvalue", &Diagnostics::min_eigenvalue)
        .def_readonly("max_off_pattern", &Diagnostics::max_off_pattern);

    py::class_<MethodRun>(m, "MethodRun")
        .def_readonly("method", &MethodRun::method)
        .def_readonly("series", &MethodRun::series)
        .def_readonly("states", &MethodRun::states)
        .def_readonly("diag", &MethodRun::diag);

    m.def("compute_series", &compute_series, py::arg("params"), py::arg("init"),
          py::arg("times"), py::arg("method"), py::arg("tail_epsilon") = 1e-10);
    m.def("time_grid", &time_grid, py::arg("t_max"), py::arg("steps"));

    py::enum_<MethodChoice>(m, "MethodChoice")
        .value("ClosedForm", MethodChoice::ClosedForm)
        .value("Ode", MethodChoice::Ode)
        .value("Oracle", MethodChoice::Oracle)
        .value("All", MethodChoice::All);

    py::class_<SweepSpec>(m, "SweepSpec")
        .def(py::init<>())
        .def_readwrite("field", &SweepSpec::field)
        .def_readwrite("values", &SweepSpec::values);

    py::class_<ScenarioConfig>(m, "ScenarioConfig")
        .def(py::init<>())
        .def_readwrite("params", &ScenarioConfig::params)
        .def_readwrite("init", &ScenarioConfig::init)
        .def_readwrite("t_max", &ScenarioConfig::t_max)
        .def_readwrite("steps", &ScenarioConfig::steps)
        .def_readwrite("method", &ScenarioConfig::method)
        .def_readwrite("sweep", &ScenarioConfig::sweep)
        .def_readwrite("tail_epsilon", &ScenarioConfig::tail_epsilon)
        .def_readwrite("output_path", &ScenarioConfig::output_path)
        .def_readwrite("lock_resonance", &ScenarioConfig::lock_resonance)
        .def_readwrite("jobs", &ScenarioConfig::jobs);

    py::class_<PointResult>(m, "PointResult")
        .def_readonly("params", &PointResult::params)
        .def_readonly("sweep_field", &PointResult::sweep_field)
        .def_readonly("sweep_value", &PointResult::sweep_value)
        .def_readonly("methods", &PointResult::methods)
        .def_readonly("method_disagreement", &PointResult::method_disagreement)
        .def_readonly("esd_intervals", &PointResult::esd_intervals);

    py::class_<RunResult>(m, "RunResult")
        .def_readonly("points", &RunResult::points)
        .def_readonly("csv_files", &RunResult::csv_files)
        .def_readonly("warnings", &RunResult::warnings)
        .def_readonly("invariants_ok", &RunResult::invariants_ok)
        .def_readonly("summary", &RunResult::summary);

    m.def("figure_preset", &figure_preset, py::arg("id"));
    m.def("figure_preset_ids", &figure_preset_ids);
    m.def("run_scenario", &run_scenario, py::arg("config"),
          py::call_guard<py::gil_scoped_release>());
    m.def("sweep_chi", &sweep_chi, py::arg("base"), py::arg("chi_values"),
          py::call_guard<py::gil_scoped_release>());
    m.def("config_from_json_text", &config_from_json_text, py::arg("text"));
    m.def("config_to_json_text", &config_to_json_text, py::arg("config"));

    m.def(
        "legacy_comparison_report",
        [](const ModelParams& p, int n_max, const std::vector<double>& times) {
            return legacy_comparison_report(p, n_max, times).text;
        },
        py::arg("params"), py::arg("n_max"), py::arg("times"));
}

#ifndef XXZBATH_EXPERIMENTS_HPP
#define XXZBATH_EXPERIMENTS_HPP

#include <optional>
#include <string>
#include <vector>

#include "xxzbath/entanglement.hpp"
#include "xxzbath/model.hpp"

namespace xxzbath {

struct SweepSpec {
    std::string field; // a ModelParams field name, or "chi" for |gamma_z - omega|
    std::vector<double> values;
};

enum class MethodChoice { ClosedForm, Ode, Oracle, All };

MethodChoice parse_method(const std::string& name);
std::string method_choice_name(MethodChoice m);

struct ScenarioConfig {
    ModelParams params;
    InitialQubitState init;
    double t_max = 10.0;
    int steps = 1001;
    MethodChoice method = MethodChoice::Ode;
    std::optional<SweepSpec> sweep;
    double tail_epsilon = 1e-10;
    std::string output_path = "out";
    bool lock_resonance = false; // keep mu0 = 2 g_bath while sweeping g_bath
    int jobs = 1;                // concurrent sweep points
};

/// Scenario presets for the reference figures (fig1..fig8). Sweep values and
/// grid density that the source scenarios leave open are pinned here; the
/// preset table is round-tripped against a checked-in fixtures file.
ScenarioConfig figure_preset(const std::string& id);
std::vector<std::string> figure_preset_ids();

/// Uniform grid 0..t_max with `steps` points.
std::vector<double> time_grid(double t_max, int steps);

struct Diagnostics {
    double max_trace_error = 0.0;
    double max_hermiticity_gap = 0.0;
    double min_eigenvalue = 0.0;
    double max_off_pattern = 0.0; // X-form violation; exact 0 for assembled states
};

struct MethodRun {
    Method method = Method::Ode;
    ConcurrenceSeries series;
    std::vector<XStateDensity> states;
    Diagnostics diag;
};

/// One method end to end: thermal weights, branch dynamics or exact
/// propagation, assembly, concurrence (generic Wootters on every state).
MethodRun compute_series(const ModelParams& params, const InitialQubitState& init,
                         const std::vector<double>& times, Method method, double tail_epsilon);

struct PointResult {
    ModelParams params;
    std::string sweep_field; // "none" when the scenario has no sweep
    double sweep_value = 0.0;
    std::vector<MethodRun> methods;
    double method_disagreement = 0.0; // max pairwise |C - C'| over the grid
    std::vector<std::vector<std::pair<double, double>>> esd_intervals; // per method
};

struct RunResult {
    std::vector<PointResult> points;
    std::vector<std::string> csv_files;
    std::vector<std::string> warnings;
    bool invariants_ok = true;
    std::string summary;
};

/// Executes a scenario: every sweep value x every requested method, one CSV
/// per pair under config.output_path, plus a summary with the invariant
/// gates (trace 1e-9, hermiticity 1e-10, positivity -1e-9, X pattern 1e-10
/// where d_z = 0, cross-method agreement 1e-6).
RunResult run_scenario(const ScenarioConfig& config);

/// Concurrence under a fixed effective coupling sweep: gamma_z is set to
/// omega + chi for each chi value, so |gamma_z - omega| walks the given
/// list.
RunResult sweep_chi(const ScenarioConfig& base, const std::vector<double>& chi_values);

/// CSV schema: header `t,concurrence,rho11,rho22,rho33,rho44,re_rho14,
/// im_rho14,method,sweep_param,sweep_value`, floats with 17 significant
/// digits, LF endings.
void write_series_csv(const std::string& path, const MethodRun& run,
                      const std::string& sweep_param, double sweep_value);

std::string format_double(double v); // %.17g

/// JSON round trip for configs (see README for the schema).
ScenarioConfig config_from_json_text(const std::string& text);
std::string config_to_json_text(const ScenarioConfig& config);
ScenarioConfig load_config(const std::string& path);

} // namespace xxzbath

#endif

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "xxzbath/errors.hpp"
#include "xxzbath/experiments.hpp"
#include "xxzbath/legacy_forms.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

xxzbath::SweepSpec parse_sweep_flag(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 >= text.size()) {
        throw xxzbath::ConfigError("--sweep expects key=v1,v2,... ; got '" + text + "'");
    }
    xxzbath::SweepSpec sweep;
    sweep.field = text.substr(0, eq);
    std::stringstream values(text.substr(eq + 1));
    std::string item;
    while (std::getline(values, item, ',')) {
        try {
            sweep.values.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw xxzbath::ConfigError("--sweep value '" + item + "' is not a number");
        }
    }
    if (sweep.values.empty()) throw xxzbath::ConfigError("--sweep value list is empty");
    return sweep;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "xxzbath: concurrence dynamics of a two-qubit XXZ+DM chain coupled to a "
        "single-mode thermal bosonic bath, by closed-form, ODE and exact-propagator "
        "methods"};

    std::string figure, config_path, method, out_dir, sweep_text;
    double tmax = -1.0, tail_epsilon = -1.0;
    int steps = -1, jobs = 0;
    bool legacy_report = false, list_figures = false;

    app.add_option("--figure", figure, "figure preset id (fig1..fig8)");
    app.add_option("--config", config_path, "JSON scenario config (flags override it)");
    app.add_option("--method", method, "closed_form | ode | oracle | all");
    app.add_option("--out", out_dir, "output directory for CSV files");
    app.add_option("--tmax", tmax, "end of the time grid");
    app.add_option("--steps", steps, "number of grid points (>= 2)");
    app.add_option("--tail-epsilon", tail_epsilon, "thermal tail truncation, in (0, 1)");
    app.add_option("--sweep", sweep_text, "parameter sweep, key=v1,v2,...");
    app.add_option("--jobs", jobs, "concurrent sweep points (default 1)");
    app.add_flag("--legacy-report", legacy_report,
                 "also write a comparison of the legacy closed forms against the exact "
                 "propagator (d_z = 0, resonance only)");
    app.add_flag("--list-figures", list_figures, "print the preset ids and exit");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list_figures) {
            for (const auto& id : xxzbath::figure_preset_ids()) std::cout << id << "\n";
            return 0;
        }

        xxzbath::ScenarioConfig config;
        if (!figure.empty()) {
            config = xxzbath::figure_preset(figure);
            if (!config_path.empty()) {
                throw xxzbath::ConfigError("--figure and --config are mutually exclusive");
            }
        } else if (!config_path.empty()) {
            config = xxzbath::load_config(config_path);
        } else {
            throw xxzbath::ConfigError("one of --figure or --config is required");
        }

        if (!method.empty()) config.method = xxzbath::parse_method(method);
        if (!out_dir.empty()) config.output_path = out_dir;
        if (tmax > 0.0) config.t_max = tmax;
        if (steps > 0) config.steps = steps;
        if (tail_epsilon > 0.0) config.tail_epsilon = tail_epsilon;
        if (!sweep_text.empty()) config.sweep = parse_sweep_flag(sweep_text);
        if (jobs > 0) {
            config.jobs = jobs;
#ifdef _OPENMP
            if (jobs > 1) omp_set_num_threads(1); // sweep-level workers own the cores
#endif
        }

        const auto result = xxzbath::run_scenario(config);
        for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
        std::cout << result.summary;
        for (const auto& f : result.csv_files) std::cout << "wrote " << f << "\n";

        if (legacy_report) {
            const auto dist = xxzbath::thermal_weights(
                config.params.g_bath, config.params.temperature, config.tail_epsilon);
            const auto report = xxzbath::legacy_comparison_report(
                config.params, std::min(dist.cutoff, 8), xxzbath::time_grid(config.t_max, 101));
            const auto path =
                (std::filesystem::path(config.output_path) / "legacy_comparison.txt").string();
            std::ofstream out(path, std::ios::binary);
            out << report.text;
            std::cout << "wrote " << path << "\n";
        }

        return result.invariants_ok ? 0 : 2;
    } catch (const xxzbath::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const xxzbath::InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 2;
    } catch (const xxzbath::NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}

#include "xxzbath/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <json.hpp>
#include <sstream>

#include "xxzbath/errors.hpp"
#include "xxzbath/oracle.hpp"

namespace xxzbath {

namespace {

using nlohmann::json;

std::string sanitize_for_filename(std::string s) {
    for (char& c : s) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                        (c >= '0' && c <= '9') || c == '.' || c == '-' || c == '+';
        if (!ok) c = '_';
    }
    return s;
}

std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string params_digest(const ModelParams& p, const InitialQubitState& init,
                          double tail_epsilon) {
    std::ostringstream s;
    s << format_double(p.mu0) << '|' << format_double(p.omega) << '|'
      << format_double(p.gamma_z) << '|' << format_double(p.dz_sys) << '|'
      << format_double(p.g0) << '|' << format_double(p.g_bath) << '|'
      << format_double(p.gamma_bath) << '|' << format_double(p.dz_bath) << '|'
      << format_double(p.temperature) << '|' << format_double(init.alpha.real()) << '|'
      << format_double(init.alpha.imag()) << '|' << format_double(init.beta.real()) << '|'
      << format_double(init.beta.imag()) << '|' << format_double(tail_epsilon);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a(s.str())));
    return buf;
}

bool closed_form_applicable(const ModelParams& p) {
    return p.dz_sys == 0.0 && is_resonant(p);
}

void set_param_field(ModelParams& p, const std::string& field, double value) {
    if (field == "mu0") p.mu0 = value;
    else if (field == "omega") p.omega = value;
    else if (field == "gamma_z") p.gamma_z = value;
    else if (field == "dz_sys") p.dz_sys = value;
    else if (field == "g0") p.g0 = value;
    else if (field == "g_bath") p.g_bath = value;
    else if (field == "gamma_bath") p.gamma_bath = value;
    else if (field == "dz_bath") p.dz_bath = value;
    else if (field == "temperature") p.temperature = value;
    else if (field == "chi") {
        if (value < 0.0) throw ConfigError("chi sweep values must be >= 0");
        p.gamma_z = p.omega + value;
    } else {
        throw ConfigError("unknown sweep field '" + field + "'");
    }
}

ModelParams sweep_point_params(const ScenarioConfig& config, const std::string& field,
                               double value) {
    ModelParams p = config.params;
    set_param_field(p, field, value);
    if (config.lock_resonance) p.mu0 = 2.0 * p.g_bath;
    return p;
}

Diagnostics diagnostics_from_matrix(const Eigen::Matrix4cd& rho, Diagnostics acc) {
    const std::complex<double> tr = rho.trace();
    acc.max_trace_error = std::max(acc.max_trace_error,
                                   std::hypot(tr.real() - 1.0, tr.imag()));
    acc.max_hermiticity_gap =
        std::max(acc.max_hermiticity_gap, (rho - rho.adjoint()).cwiseAbs().maxCoeff());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(0.5 * (rho + rho.adjoint()),
                                                       Eigen::EigenvaluesOnly);
    acc.min_eigenvalue = std::min(acc.min_eigenvalue, es.eigenvalues().minCoeff());
    return acc;
}

} // namespace

MethodChoice parse_method(const std::string& name) {
    std::string s = name;
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
        return c == '-' ? '_' : static_cast<char>(std::tolower(c));
    });
    if (s == "closed_form" || s == "closedform") return MethodChoice::ClosedForm;
    if (s == "ode") return MethodChoice::Ode;
    if (s == "oracle") return MethodChoice::Oracle;
    if (s == "all") return MethodChoice::All;
    throw ConfigError("unknown method '" + name + "'");
}

std::string method_choice_name(MethodChoice m) {
    switch (m) {
        case MethodChoice::ClosedForm: return "closed_form";
        case MethodChoice::Ode: return "ode";
        case MethodChoice::Oracle: return "oracle";
        case MethodChoice::All: return "all";
    }
    return "unknown";
}

std::vector<std::string> figure_preset_ids() {
    return {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8"};
}

ScenarioConfig figure_preset(const std::string& id) {
    ScenarioConfig c;
    c.params = ModelParams{}; // mu0 = 4, g = g0 = 2, everything else 0, T = 4
    c.init = InitialQubitState(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
    c.method = MethodChoice::Ode;
    c.output_path = "out/" + id;

    if (id == "fig1") {
        c.init = InitialQubitState(1.0, 0.0); // initially disentangled
        c.params.temperature = 4.0;           // 2g
        c.sweep = SweepSpec{"dz_sys", {0.0, 1.0, 2.0}};
    } else if (id == "fig2") {
        c.params.temperature = 6.0; // 3g
        c.sweep = SweepSpec{"dz_sys", {0.0, 1.0, 2.0}};
    } else if (id == "fig3") {
        c.params.omega = 1.0;
        c.params.gamma_z = 0.5;
        c.params.temperature = 4.0; // 2g
        c.sweep = SweepSpec{"dz_sys", {0.0, 0.5, 1.0, 2.0}};
    } else if (id == "fig4") {
        c.params.dz_sys = 0.4; // 0.2 g
        c.sweep = SweepSpec{"temperature", {2.0, 4.0, 10.0, 20.0}}; // g..10g
    } else if (id == "fig5") {
        c.params.temperature = 20.0; // 10g
        c.sweep = SweepSpec{"dz_sys", {0.0, 1.0, 2.0}};
    } else if (id == "fig6") {
        c.params.temperature = 6.0; // 3g
        c.sweep = SweepSpec{"chi", {0.0, 1.0, 2.0, 4.0}};
    } else if (id == "fig7") {
        c.params.omega = 2.0;
        c.params.dz_sys = 1.0;
        c.params.gamma_z = 1.0;
        c.params.temperature = 4.0; // 2g
        c.sweep = SweepSpec{"g0", {1.0, 2.0, 4.0}};
    } else if (id == "fig8") {
        c.params.omega = 2.0;
        c.params.dz_sys = 0.2;
        c.params.gamma_z = 2.0;
        c.params.temperature = 6.0; // 3 g0
        c.sweep = SweepSpec{"g_bath", {1.0, 2.0, 4.0}};
        c.lock_resonance = true; // mu0 tracks 2g across the sweep
    } else {
        throw ConfigError("UnknownFigure: '" + id + "' (expected fig1..fig8)");
    }
    return c;
}

std::vector<double> time_grid(double t_max, int steps) {
    if (!(t_max > 0.0)) throw ConfigError("t_max must be > 0");
    if (steps < 2) throw ConfigError("steps must be >= 2");
    std::vector<double> t(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        t[static_cast<std::size_t>(i)] = t_max * static_cast<double>(i) / (steps - 1);
    }
    return t;
}

MethodRun compute_series(const ModelParams& params, const InitialQubitState& init,
                         const std::vector<double>& times, Method method, double tail_epsilon) {
    throw_if_invalid(params);
    const ThermalDistribution dist =
        thermal_weights(params.g_bath, params.temperature, tail_epsilon);
    const int n_max = dist.cutoff;
    const long nt = static_cast<long>(times.size());

    MethodRun run;
    run.method = method;
    run.series.method = method;
    run.series.times = times;
    run.series.params_digest = params_digest(params, init, tail_epsilon);
    run.series.values.resize(times.size());
    run.states.resize(times.size());
    run.diag.min_eigenvalue = 1.0;

    std::vector<Eigen::Matrix4cd> matrices(times.size());

    if (method == Method::Oracle) {
        OraclePropagator prop(params, n_max + 2);
        matrices = prop.reduced_density_series(init, dist, times);
        for (long k = 0; k < nt; ++k) {
            const auto cls = classify_xstate(matrices[static_cast<std::size_t>(k)],
                                             times[static_cast<std::size_t>(k)]);
            run.states[static_cast<std::size_t>(k)] = cls.state;
            run.diag.max_off_pattern = std::max(run.diag.max_off_pattern, cls.off_pattern_max);
        }
    } else {
        // Branch coefficients per occupation, then thermal assembly per time.
        std::vector<std::vector<BranchCoefficients>> by_n11(static_cast<std::size_t>(n_max) + 1);
        std::vector<std::vector<BranchCoefficients>> by_n00(static_cast<std::size_t>(n_max) + 1);
        if (method == Method::Ode) {
#pragma omp parallel for schedule(dynamic)
            for (int n = 0; n <= n_max; ++n) {
                by_n11[static_cast<std::size_t>(n)] =
                    integrate_branch(params, Branch::Eleven, n, times);
                by_n00[static_cast<std::size_t>(n)] =
                    integrate_branch(params, Branch::ZeroZero, n, times);
            }
        } else {
#pragma omp parallel for schedule(dynamic)
            for (int n = 0; n <= n_max; ++n) {
                auto& c11 = by_n11[static_cast<std::size_t>(n)];
                auto& c00 = by_n00[static_cast<std::size_t>(n)];
                c11.reserve(times.size());
                c00.reserve(times.size());
                for (double t : times) {
                    c11.push_back(closed_form_branch11(params, n, t));
                    c00.push_back(closed_form_branch00(params, n, t));
                }
            }
        }
        for (long k = 0; k < nt; ++k) {
            std::vector<BranchCoefficients> at_t11, at_t00;
            at_t11.reserve(static_cast<std::size_t>(n_max) + 1);
            at_t00.reserve(static_cast<std::size_t>(n_max) + 1);
            for (int n = 0; n <= n_max; ++n) {
                at_t11.push_back(by_n11[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)]);
                at_t00.push_back(by_n00[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)]);
            }
            const XStateDensity rho = assemble_density(at_t11, at_t00, init, dist, params,
                                                       times[static_cast<std::size_t>(k)]);
            run.states[static_cast<std::size_t>(k)] = rho;
            matrices[static_cast<std::size_t>(k)] = rho.matrix();
        }
    }

#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < nt; ++k) {
        const double c = concurrence_generic(matrices[static_cast<std::size_t>(k)]);
        run.series.values[static_cast<std::size_t>(k)] = std::clamp(c, 0.0, 1.0);
    }
    for (long k = 0; k < nt; ++k) {
        run.diag = diagnostics_from_matrix(matrices[static_cast<std::size_t>(k)], run.diag);
    }
    return run;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_series_csv(const std::string& path, const MethodRun& run,
                      const std::string& sweep_param, double sweep_value) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open CSV output file '" + path + "'");
    out << "t,concurrence,rho11,rho22,rho33,rho44,re_rho14,im_rho14,method,sweep_param,"
           "sweep_value\n";
    const std::string method = method_name(run.method);
    const std::string value = format_double(sweep_value);
    for (std::size_t k = 0; k < run.series.times.size(); ++k) {
        const auto& s = run.states[k];
        out << format_double(run.series.times[k]) << ',' << format_double(run.series.values[k])
            << ',' << format_double(s.rho11) << ',' << format_double(s.rho22) << ','
            << format_double(s.rho33) << ',' << format_double(s.rho44) << ','
            << format_double(s.rho14.real()) << ',' << format_double(s.rho14.imag()) << ','
            << method << ',' << sweep_param << ',' << value << '\n';
    }
}

namespace {

PointResult run_point(const ScenarioConfig& config, const ModelParams& params,
                      const std::string& sweep_field, double sweep_value,
                      const std::vector<double>& times) {
    PointResult point;
    point.params = params;
    point.sweep_field = sweep_field;
    point.sweep_value = sweep_value;

    std::vector<Method> methods;
    switch (config.method) {
        case MethodChoice::ClosedForm:
            if (!closed_form_applicable(params)) {
                throw PreconditionViolation(
                    "closed_form method requires d_z = 0 and mu0 = 2 g_bath at every sweep "
                    "point");
            }
            methods = {Method::ClosedForm};
            break;
        case MethodChoice::Ode: methods = {Method::Ode}; break;
        case MethodChoice::Oracle: methods = {Method::Oracle}; break;
        case MethodChoice::All:
            if (closed_form_applicable(params)) methods.push_back(Method::ClosedForm);
            methods.push_back(Method::Ode);
            methods.push_back(Method::Oracle);
            break;
    }

    for (Method m : methods) {
        point.methods.push_back(
            compute_series(params, config.init, times, m, config.tail_epsilon));
        point.esd_intervals.push_back(detect_esd(point.methods.back().series));
    }

    for (std::size_t a = 0; a < point.methods.size(); ++a) {
        for (std::size_t b = a + 1; b < point.methods.size(); ++b) {
            const auto& va = point.methods[a].series.values;
            const auto& vb = point.methods[b].series.values;
            for (std::size_t k = 0; k < va.size(); ++k) {
                point.method_disagreement =
                    std::max(point.method_disagreement, std::abs(va[k] - vb[k]));
            }
        }
    }
    return point;
}

} // namespace

RunResult run_scenario(const ScenarioConfig& config) {
    if (config.steps < 2) throw ConfigError("steps must be >= 2");
    if (!(config.t_max > 0.0)) throw ConfigError("t_max must be > 0");
    if (!(config.tail_epsilon > 0.0 && config.tail_epsilon < 1.0)) {
        throw ConfigError("tail_epsilon must lie in (0, 1)");
    }

    RunResult result;
    for (const auto& issue : validate(config.params)) {
        if (issue.severity == ValidationIssue::Severity::Error) {
            throw ConfigError(issue.code + ": " + issue.message);
        }
        result.warnings.push_back(issue.code + ": " + issue.message);
    }

    struct PointSpec {
        ModelParams params;
        std::string field;
        double value;
    };
    std::vector<PointSpec> specs;
    if (config.sweep) {
        if (config.sweep->values.empty()) throw ConfigError("sweep value list is empty");
        for (double v : config.sweep->values) {
            specs.push_back({sweep_point_params(config, config.sweep->field, v),
                             config.sweep->field, v});
        }
    } else {
        ModelParams p = config.params;
        if (config.lock_resonance) p.mu0 = 2.0 * p.g_bath;
        specs.push_back({p, "none", 0.0});
    }
    for (const auto& spec : specs) throw_if_invalid(spec.params);

    const std::vector<double> times = time_grid(config.t_max, config.steps);
    result.points.resize(specs.size());

    const int jobs = std::max(1, config.jobs);
    if (jobs == 1 || specs.size() == 1) {
        for (std::size_t i = 0; i < specs.size(); ++i) {
            result.points[i] =
                run_point(config, specs[i].params, specs[i].field, specs[i].value, times);
        }
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (std::size_t i = next.fetch_add(1); i < specs.size(); i = next.fetch_add(1)) {
                result.points[i] =
                    run_point(config, specs[i].params, specs[i].field, specs[i].value, times);
            }
        };
        std::vector<std::future<void>> pool;
        const std::size_t width = std::min<std::size_t>(static_cast<std::size_t>(jobs),
                                                        specs.size());
        pool.reserve(width);
        for (std::size_t w = 0; w < width; ++w) {
            pool.push_back(std::async(std::launch::async, worker));
        }
        for (auto& f : pool) f.get(); // rethrows worker exceptions
    }

    std::filesystem::create_directories(config.output_path);
    for (const auto& point : result.points) {
        for (const auto& mrun : point.methods) {
            std::string name = method_name(mrun.method);
            if (point.sweep_field != "none") {
                name += "__" + point.sweep_field + "-" +
                        sanitize_for_filename(format_double(point.sweep_value));
            }
            const auto path =
                (std::filesystem::path(config.output_path) / (name + ".csv")).string();
            write_series_csv(path, mrun, point.sweep_field, point.sweep_value);
            result.csv_files.push_back(path);
        }
    }

    // Invariant gates.
    constexpr double kTraceTol = 1e-9;
    constexpr double kHermTol = 1e-10;
    constexpr double kEigTol = -1e-9;
    constexpr double kOffPatternTol = 1e-10;
    constexpr double kAgreementTol = 1e-6;

    std::ostringstream s;
    s << "scenario summary\n";
    s << "  grid: " << config.steps << " points on [0, " << format_double(config.t_max)
      << "]\n";
    s << "  tail_epsilon: " << format_double(config.tail_epsilon) << "\n";
    std::vector<std::string> violations;
    for (const auto& point : result.points) {
        s << "  point " << point.sweep_field << " = " << format_double(point.sweep_value)
          << ":\n";
        for (std::size_t mi = 0; mi < point.methods.size(); ++mi) {
            const auto& mrun = point.methods[mi];
            const auto& d = mrun.diag;
            s << "    " << method_name(mrun.method) << ": max trace err "
              << format_double(d.max_trace_error) << ", max herm gap "
              << format_double(d.max_hermiticity_gap) << ", min eig "
              << format_double(d.min_eigenvalue) << ", max off-pattern "
              << format_double(d.max_off_pattern) << "\n";
            s << "      ESD intervals:";
            if (point.esd_intervals[mi].empty()) {
                s << " none";
            } else {
                for (const auto& [a, b] : point.esd_intervals[mi]) {
                    s << " [" << format_double(a) << ", " << format_double(b) << "]";
                }
            }
            s << "\n";
            if (d.max_trace_error > kTraceTol) violations.push_back("trace");
            if (d.max_hermiticity_gap > kHermTol) violations.push_back("hermiticity");
            if (d.min_eigenvalue < kEigTol) violations.push_back("positivity");
            if (point.params.dz_sys == 0.0 && d.max_off_pattern > kOffPatternTol) {
                violations.push_back("x-pattern");
            }
        }
        if (point.methods.size() > 1) {
            s << "    method disagreement: " << format_double(point.method_disagreement)
              << "\n";
            if (point.method_disagreement > kAgreementTol) violations.push_back("agreement");
        }
    }
    std::sort(violations.begin(), violations.end());
    violations.erase(std::unique(violations.begin(), violations.end()), violations.end());
    result.invariants_ok = violations.empty();
    s << "  invariants: ";
    if (result.invariants_ok) {
        s << "OK\n";
    } else {
        s << "VIOLATED (";
        for (std::size_t i = 0; i < violations.size(); ++i) {
            if (i) s << ", ";
            s << violations[i];
        }
        s << ")\n";
    }
    result.summary = s.str();
    return result;
}

RunResult sweep_chi(const ScenarioConfig& base, const std::vector<double>& chi_values) {
    ScenarioConfig config = base;
    config.sweep = SweepSpec{"chi", chi_values};
    return run_scenario(config);
}

ScenarioConfig config_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config JSON parse error: ") + e.what());
    }
    try {
        ScenarioConfig c;
        if (j.contains("params")) {
            const auto& p = j.at("params");
            auto get = [&](const char* key, double fallback) {
                return p.contains(key) ? p.at(key).get<double>() : fallback;
            };
            c.params.mu0 = get("mu0", c.params.mu0);
            c.params.omega = get("omega", c.params.omega);
            c.params.gamma_z = get("gamma_z", c.params.gamma_z);
            c.params.dz_sys = get("dz_sys", c.params.dz_sys);
            c.params.g0 = get("g0", c.params.g0);
            c.params.g_bath = get("g_bath", c.params.g_bath);
            c.params.gamma_bath = get("gamma_bath", c.params.gamma_bath);
            c.params.dz_bath = get("dz_bath", c.params.dz_bath);
            c.params.temperature = get("temperature", c.params.temperature);
        }
        if (j.contains("init")) {
            const auto& i = j.at("init");
            c.init = InitialQubitState(
                {i.value("alpha_re", 1.0), i.value("alpha_im", 0.0)},
                {i.value("beta_re", 0.0), i.value("beta_im", 0.0)});
        }
        c.t_max = j.value("t_max", c.t_max);
        c.steps = j.value("steps", c.steps);
        if (j.contains("method")) c.method = parse_method(j.at("method").get<std::string>());
        if (j.contains("sweep") && !j.at("sweep").is_null()) {
            SweepSpec sweep;
            sweep.field = j.at("sweep").at("field").get<std::string>();
            sweep.values = j.at("sweep").at("values").get<std::vector<double>>();
            c.sweep = sweep;
        }
        c.tail_epsilon = j.value("tail_epsilon", c.tail_epsilon);
        c.output_path = j.value("output_path", c.output_path);
        c.lock_resonance = j.value("lock_resonance", c.lock_resonance);
        return c;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config JSON schema error: ") + e.what());
    }
}

std::string config_to_json_text(const ScenarioConfig& c) {
    json j;
    j["params"] = {{"mu0", c.params.mu0},
                   {"omega", c.params.omega},
                   {"gamma_z", c.params.gamma_z},
                   {"dz_sys", c.params.dz_sys},
                   {"g0", c.params.g0},
                   {"g_bath", c.params.g_bath},
                   {"gamma_bath", c.params.gamma_bath},
                   {"dz_bath", c.params.dz_bath},
                   {"temperature", c.params.temperature}};
    j["init"] = {{"alpha_re", c.init.alpha.real()},
                 {"alpha_im", c.init.alpha.imag()},
                 {"beta_re", c.init.beta.real()},
                 {"beta_im", c.init.beta.imag()}};
    j["t_max"] = c.t_max;
    j["steps"] = c.steps;
    j["method"] = method_choice_name(c.method);
    if (c.sweep) {
        j["sweep"] = {{"field", c.sweep->field}, {"values", c.sweep->values}};
    } else {
        j["sweep"] = nullptr;
    }
    j["tail_epsilon"] = c.tail_epsilon;
    j["output_path"] = c.output_path;
    j["lock_resonance"] = c.lock_resonance;
    return j.dump(2);
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return config_from_json_text(buf.str());
}

} // namespace xxzbath

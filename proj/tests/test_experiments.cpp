#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "xxzbath/errors.hpp"
#include "xxzbath/experiments.hpp"

using namespace xxzbath;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::filesystem::path temp_dir(const std::string& tag) {
    auto dir = std::filesystem::temp_directory_path() / ("xxzbath_test_" + tag);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("figure presets match the checked-in fixtures") {
    const std::string fixture_path =
        std::string(XXZBATH_TEST_DATA_DIR) + "/figure_presets.json";
    std::ifstream in(fixture_path);
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();

    // The fixtures file stores one config JSON per preset id.
    const auto fixtures = nlohmann::json::parse(buf.str());
    for (const auto& id : figure_preset_ids()) {
        REQUIRE(fixtures.contains(id));
        const auto preset = nlohmann::json::parse(config_to_json_text(figure_preset(id)));
        CHECK(preset == fixtures.at(id));
    }
    CHECK_THROWS_AS(figure_preset("fig9"), ConfigError);
}

TEST_CASE("preset highlights from the captions") {
    const auto f1 = figure_preset("fig1");
    CHECK(f1.init.alpha == std::complex<double>(1.0, 0.0));
    CHECK(f1.init.beta == std::complex<double>(0.0, 0.0));
    CHECK(f1.sweep->field == "dz_sys");
    CHECK(f1.params.temperature == 4.0);

    const auto f5 = figure_preset("fig5");
    CHECK(f5.params.temperature == 20.0); // 10 g with g = 2
    CHECK(std::abs(f5.init.alpha - 1.0 / std::sqrt(2.0)) < 1e-15);

    const auto f6 = figure_preset("fig6");
    CHECK(f6.sweep->field == "chi");
    CHECK(f6.params.omega == 0.0);

    const auto f8 = figure_preset("fig8");
    CHECK(f8.lock_resonance);
    CHECK(f8.sweep->field == "g_bath");
}

TEST_CASE("config JSON round trip") {
    ScenarioConfig c = figure_preset("fig3");
    c.method = MethodChoice::All;
    c.tail_epsilon = 1e-8;
    c.output_path = "somewhere";
    const auto parsed = config_from_json_text(config_to_json_text(c));
    CHECK(parsed.params.omega == c.params.omega);
    CHECK(parsed.params.gamma_z == c.params.gamma_z);
    CHECK(parsed.method == MethodChoice::All);
    CHECK(parsed.tail_epsilon == 1e-8);
    CHECK(parsed.output_path == "somewhere");
    REQUIRE(parsed.sweep.has_value());
    CHECK(parsed.sweep->field == "dz_sys");
    CHECK(parsed.sweep->values == c.sweep->values);

    CHECK_THROWS_AS(config_from_json_text("{not json"), ConfigError);
    CHECK_THROWS_AS(config_from_json_text(R"({"sweep": {"field": 3}})"), ConfigError);
}

TEST_CASE("method names parse both spellings") {
    CHECK(parse_method("closed_form") == MethodChoice::ClosedForm);
    CHECK(parse_method("closed-form") == MethodChoice::ClosedForm);
    CHECK(parse_method("ODE") == MethodChoice::Ode);
    CHECK(parse_method("oracle") == MethodChoice::Oracle);
    CHECK(parse_method("all") == MethodChoice::All);
    CHECK_THROWS_AS(parse_method("exact"), ConfigError);
}

TEST_CASE("run rejects invalid configs") {
    ScenarioConfig c = figure_preset("fig2");
    c.steps = 1;
    CHECK_THROWS_AS(run_scenario(c), ConfigError);
    c = figure_preset("fig2");
    c.t_max = 0.0;
    CHECK_THROWS_AS(run_scenario(c), ConfigError);
    c = figure_preset("fig2");
    c.sweep = SweepSpec{"not_a_field", {1.0}};
    CHECK_THROWS_AS(run_scenario(c), ConfigError);
    c = figure_preset("fig2");
    c.params.temperature = -1.0;
    CHECK_THROWS_AS(run_scenario(c), ConfigError);
    c = figure_preset("fig3");
    c.method = MethodChoice::ClosedForm; // d_z sweep includes nonzero values
    CHECK_THROWS_AS(run_scenario(c), ConfigError);
}

TEST_CASE("a small scenario produces the documented CSV artifacts") {
    const auto dir = temp_dir("csv");
    ScenarioConfig c = figure_preset("fig2");
    c.steps = 21;
    c.t_max = 2.0;
    c.method = MethodChoice::Ode;
    c.sweep = SweepSpec{"dz_sys", {0.0, 1.0}};
    c.output_path = dir.string();

    const auto result = run_scenario(c);
    CHECK(result.invariants_ok);
    REQUIRE(result.csv_files.size() == 2);
    CHECK(result.points[0].esd_intervals.size() == 1);

    const auto text = read_file(result.csv_files[0]);
    std::istringstream lines(text);
    std::string header;
    std::getline(lines, header);
    CHECK(header ==
          "t,concurrence,rho11,rho22,rho33,rho44,re_rho14,im_rho14,method,sweep_param,"
          "sweep_value");
    int rows = 0;
    std::string line;
    while (std::getline(lines, line)) {
        if (!line.empty()) ++rows;
        CHECK(line.find("ode") != std::string::npos);
        CHECK(line.find(",dz_sys,") != std::string::npos);
    }
    CHECK(rows == 21);
    CHECK(text.find("\r\n") == std::string::npos); // LF endings only

    // Determinism: a second run reproduces the bytes.
    const auto dir2 = temp_dir("csv_again");
    c.output_path = dir2.string();
    const auto result2 = run_scenario(c);
    CHECK(read_file(result2.csv_files[0]) == text);
}

TEST_CASE("method 'all' agrees across the board on the resonant point") {
    const auto dir = temp_dir("all");
    ScenarioConfig c = figure_preset("fig2");
    c.steps = 41;
    c.t_max = 4.0;
    c.method = MethodChoice::All;
    c.sweep.reset();
    c.output_path = dir.string();
    const auto result = run_scenario(c);
    CHECK(result.invariants_ok);
    REQUIRE(result.points.size() == 1);
    CHECK(result.points[0].methods.size() == 3); // closed_form, ode, oracle
    CHECK(result.points[0].method_disagreement < 1e-6);
    CHECK(result.csv_files.size() == 3);
}

TEST_CASE("sweep points can run concurrently without changing the output") {
    const auto dir_serial = temp_dir("jobs1");
    ScenarioConfig c = figure_preset("fig1");
    c.steps = 11;
    c.t_max = 1.5;
    c.output_path = dir_serial.string();
    const auto serial = run_scenario(c);

    const auto dir_par = temp_dir("jobs4");
    c.output_path = dir_par.string();
    c.jobs = 4;
    const auto parallel = run_scenario(c);

    REQUIRE(serial.csv_files.size() == parallel.csv_files.size());
    for (std::size_t i = 0; i < serial.csv_files.size(); ++i) {
        CHECK(read_file(serial.csv_files[i]) == read_file(parallel.csv_files[i]));
    }
}

TEST_CASE("chi sweep walks gamma_z while omega stays fixed") {
    const auto dir = temp_dir("chi");
    ScenarioConfig base = figure_preset("fig6");
    base.steps = 11;
    base.t_max = 1.0;
    base.output_path = dir.string();
    const auto result = sweep_chi(base, {0.0, 2.0});
    REQUIRE(result.points.size() == 2);
    CHECK(result.points[0].params.gamma_z == 0.0);
    CHECK(result.points[1].params.gamma_z == 2.0);
    CHECK(result.points[0].params.omega == 0.0);

    CHECK_THROWS_AS(sweep_chi(base, {-1.0}), ConfigError);
}

TEST_CASE("equal couplings give identical curves for equal chi") {
    // (gamma_z, omega) = (1,1) and (3,3) share chi = 0 and must produce the
    // same concurrence curve.
    ScenarioConfig c = figure_preset("fig6");
    c.steps = 41;
    c.t_max = 4.0;
    c.output_path = temp_dir("chi_eq").string();
    c.params.omega = 1.0;
    c.sweep = SweepSpec{"chi", {0.0}};
    const auto run_a = run_scenario(c);

    c.params.omega = 3.0;
    c.output_path = temp_dir("chi_eq2").string();
    const auto run_b = run_scenario(c);

    const auto& va = run_a.points[0].methods[0].series.values;
    const auto& vb = run_b.points[0].methods[0].series.values;
    REQUIRE(va.size() == vb.size());
    for (std::size_t i = 0; i < va.size(); ++i) {
        CHECK(std::abs(va[i] - vb[i]) < 1e-8);
    }
}

TEST_CASE("late-time concurrence grows with the effective coupling") {
    ScenarioConfig base = figure_preset("fig6");
    base.steps = 501;
    base.output_path = temp_dir("chi_order").string();
    const auto result = sweep_chi(base, {0.0, 1.0, 2.0});
    REQUIRE(result.points.size() == 3);
    std::vector<double> late_means;
    for (const auto& point : result.points) {
        const auto& v = point.methods[0].series.values;
        double sum = 0.0;
        const std::size_t half = v.size() / 2;
        for (std::size_t k = half; k < v.size(); ++k) sum += v[k];
        late_means.push_back(sum / static_cast<double>(v.size() - half));
    }
    CHECK(late_means[0] < late_means[1]);
    CHECK(late_means[1] < late_means[2]);
}

TEST_CASE("a single chi value reproduces the plain run") {
    ScenarioConfig base = figure_preset("fig6");
    base.steps = 31;
    base.t_max = 3.0;
    base.output_path = temp_dir("chi_single").string();
    const auto swept = sweep_chi(base, {0.0}); // gamma_z = omega + 0 = base value

    ScenarioConfig plain = base;
    plain.sweep.reset();
    plain.output_path = temp_dir("chi_plain").string();
    const auto direct = run_scenario(plain);

    const auto& a = swept.points[0].methods[0].series.values;
    const auto& b = direct.points[0].methods[0].series.values;
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k] == b[k]);
}

TEST_CASE("fig8 sweep keeps the resonance locked") {
    ScenarioConfig c = figure_preset("fig8");
    c.steps = 5;
    c.t_max = 0.5;
    c.output_path = temp_dir("fig8").string();
    const auto result = run_scenario(c);
    REQUIRE(result.points.size() == 3);
    for (const auto& point : result.points) {
        CHECK(point.params.mu0 == 2.0 * point.params.g_bath);
    }
}

TEST_CASE("format_double prints 17 significant digits") {
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(1.0 / 3.0) == "0.33333333333333331");
    CHECK(format_double(1e-10) == "1e-10");
}

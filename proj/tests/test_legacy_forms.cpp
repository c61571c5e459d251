#include <doctest.h>

#include <cmath>

#include "xxzbath/errors.hpp"
#include "xxzbath/legacy_forms.hpp"

using namespace xxzbath;

TEST_CASE("legacy ZeroZero stay amplitude violates the initial condition") {
    ModelParams p; // resonant defaults, gamma_z = omega = d_z = 0
    const auto c = legacy_branch00(p, 0, 0.0);
    // The legacy constant evaluates to (n-2)/(2n-1) + n/(2n-1) = 2 at n = 0;
    // the true stay amplitude starts at 1.
    CHECK(std::abs(c.c_stay) == doctest::Approx(2.0).epsilon(1e-12));
    // n = 1: (n-2)/(2n-1) + n/(3+2n) = -0.8 instead of 1.
    const auto c1 = legacy_branch00(p, 1, 0.0);
    CHECK(std::abs(c1.c_stay) == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("legacy Eleven branch starts consistently but overshoots the singles") {
    ModelParams p;
    const auto c0 = legacy_branch11(p, 0, 0.0);
    CHECK(std::abs(c0.c_double_flip) < 1e-12);
    CHECK(std::abs(c0.c_stay - 1.0) < 1e-12);
    // At the quarter period the singles carry an extra factor g0 relative to
    // the unitary value 1/sqrt(6) (g0 = 2 here).
    const double t = M_PI / std::sqrt(96.0);
    const auto c = legacy_branch11(p, 0, t);
    CHECK(std::abs(c.c_single_a) ==
          doctest::Approx(2.0 / std::sqrt(6.0)).epsilon(1e-10));
}

TEST_CASE("legacy comparison report quantifies the defects") {
    ModelParams p;
    p.temperature = 4.0; // the disentangled-initial-state scenario
    std::vector<double> times;
    for (int i = 0; i <= 40; ++i) times.push_back(0.25 * i);
    const auto report = legacy_comparison_report(p, 4, times);
    CHECK(report.zero_time_stay00_n0 == doctest::Approx(2.0).epsilon(1e-12));
    REQUIRE(report.rows00.size() == 5);
    REQUIRE(report.rows11.size() == 5);
    // The ZeroZero branch disagrees at order one everywhere.
    CHECK(report.rows00[0].max_abs_gap > 0.5);
    // The Eleven branch disagrees through the inflated single amplitudes.
    CHECK(report.rows11[0].max_abs_gap > 0.1);
    CHECK(!report.text.empty());
}

TEST_CASE("legacy comparison requires the closed-form domain") {
    ModelParams p;
    p.dz_sys = 1.0;
    CHECK_THROWS_AS(legacy_comparison_report(p, 2, {0.0, 1.0}), PreconditionViolation);
}

#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "xxzbath/entanglement.hpp"
#include "xxzbath/errors.hpp"
#include "xxzbath/oracle.hpp"

using namespace xxzbath;
using Complex = std::complex<double>;

namespace {

ModelParams fig2_params() {
    ModelParams p;
    p.temperature = 6.0;
    return p;
}

std::pair<std::vector<BranchCoefficients>, std::vector<BranchCoefficients>>
coefficients_at(const ModelParams& p, const ThermalDistribution& dist, double t) {
    std::vector<BranchCoefficients> c11, c00;
    const std::vector<double> grid = t == 0.0 ? std::vector<double>{0.0}
                                              : std::vector<double>{0.0, t};
    for (int n = 0; n <= dist.cutoff; ++n) {
        c11.push_back(integrate_branch(p, Branch::Eleven, n, grid).back());
        c00.push_back(integrate_branch(p, Branch::ZeroZero, n, grid).back());
    }
    return {c11, c00};
}

Eigen::Matrix4cd werner_state(double p) {
    Eigen::Vector4cd phi = Eigen::Vector4cd::Zero();
    phi(0) = 1.0 / std::sqrt(2.0);
    phi(3) = 1.0 / std::sqrt(2.0);
    return p * (phi * phi.adjoint()) + (1.0 - p) * 0.25 * Eigen::Matrix4cd::Identity();
}

} // namespace

TEST_CASE("assembly at t = 0 reproduces the initial projector") {
    ModelParams p = fig2_params();
    const auto dist = thermal_weights(p.g_bath, p.temperature, 1e-10);
    auto [c11, c00] = coefficients_at(p, dist, 0.0);

    const InitialQubitState bell(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
    const auto rho = assemble_density(c11, c00, bell, dist, p, 0.0);
    CHECK(rho.rho11 == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(rho.rho44 == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(std::abs(rho.rho14 - Complex(0.5, 0.0)) < 1e-10);
    CHECK(rho.rho22 < 1e-12);
    CHECK(rho.rho33 < 1e-12);

    const InitialQubitState ground(1.0, 0.0);
    const auto rho0 = assemble_density(c11, c00, ground, dist, p, 0.0);
    CHECK(rho0.rho11 == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(rho0.rho44 < 1e-14);
    CHECK(std::abs(rho0.rho14) < 1e-14);
}

TEST_CASE("assembly matches the exact propagator elementwise") {
    ModelParams p = fig2_params();
    SUBCASE("without DM") {}
    SUBCASE("with DM and detuning") {
        p.dz_sys = 1.3;
        p.mu0 = 4.4;
    }
    const auto dist = thermal_weights(p.g_bath, p.temperature, 1e-10);
    OraclePropagator prop(p, dist.cutoff + 2);
    const InitialQubitState init(0.6, Complex(0.0, 0.8));
    for (double t : {0.4, 1.9, 5.3}) {
        auto [c11, c00] = coefficients_at(p, dist, t);
        const auto assembled = assemble_density(c11, c00, init, dist, p, t).matrix();
        const auto exact = prop.reduced_density(init, dist, t);
        CHECK((assembled - exact).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("assembly rejects incomplete coverage") {
    ModelParams p = fig2_params();
    const auto dist = thermal_weights(p.g_bath, p.temperature, 1e-10);
    auto [c11, c00] = coefficients_at(p, dist, 0.0);
    const InitialQubitState bell(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));

    auto short11 = c11;
    short11.pop_back();
    CHECK_THROWS_AS(assemble_density(short11, c00, bell, dist, p, 0.0), ConfigError);

    auto wrong_time = c11;
    wrong_time[2].time = 0.5;
    CHECK_THROWS_AS(assemble_density(wrong_time, c00, bell, dist, p, 0.0), ConfigError);
}

TEST_CASE("special-case concurrence on reference states") {
    XStateDensity bell;
    bell.rho11 = bell.rho44 = 0.5;
    bell.rho14 = 0.5;
    CHECK(concurrence_xstate(bell) == doctest::Approx(1.0).epsilon(1e-14));

    XStateDensity separable;
    separable.rho11 = 1.0;
    CHECK(concurrence_xstate(separable) == 0.0);

    XStateDensity mixed;
    mixed.rho11 = mixed.rho44 = 0.4;
    mixed.rho22 = mixed.rho33 = 0.1;
    mixed.rho23 = 0.1;
    mixed.rho14 = 0.3;
    CHECK(concurrence_xstate(mixed) == doctest::Approx(0.4).epsilon(1e-14));
}

TEST_CASE("special-case concurrence signals the fallback") {
    XStateDensity rho;
    rho.rho11 = rho.rho44 = 0.3;
    rho.rho22 = 0.25;
    rho.rho33 = 0.15;
    CHECK_THROWS_AS(concurrence_xstate(rho), FallbackToGeneric);

    XStateDensity complex_rho23;
    complex_rho23.rho11 = complex_rho23.rho44 = 0.3;
    complex_rho23.rho22 = complex_rho23.rho33 = 0.2;
    complex_rho23.rho23 = Complex(0.1, 0.1);
    CHECK_THROWS_AS(concurrence_xstate(complex_rho23), FallbackToGeneric);
}

TEST_CASE("generic concurrence fixtures") {
    CHECK(concurrence_generic(0.25 * Eigen::Matrix4cd::Identity()) == 0.0);
    for (double p : {0.0, 1.0 / 3.0, 0.5, 1.0}) {
        const double expected = std::max(0.0, (3.0 * p - 1.0) / 2.0);
        CHECK(std::abs(concurrence_generic(werner_state(p)) - expected) < 1e-10);
    }
}

TEST_CASE("generic concurrence rejects non-density input") {
    Eigen::Matrix4cd bad = Eigen::Matrix4cd::Zero();
    bad(0, 0) = 2.0; // trace 2
    CHECK_THROWS_AS(concurrence_generic(bad), NumericalFailure);
    Eigen::Matrix4cd nonherm = 0.25 * Eigen::Matrix4cd::Identity();
    nonherm(0, 1) = Complex(0.2, 0.1); // no conjugate partner
    CHECK_THROWS_AS(concurrence_generic(nonherm), NumericalFailure);
}

TEST_CASE("generic and special-case concurrence agree on the shared domain") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int tested = 0;
    while (tested < 200) {
        // Draw the paper-pattern family: rho22 = rho33 = rho23, and require
        // the coherence family to dominate so the analytic reduction holds.
        double a = u(rng), d = u(rng), b = u(rng);
        const double norm = a + d + 2.0 * b;
        a /= norm;
        d /= norm;
        b /= norm;
        const double root = std::sqrt(a * d);
        const double r14 = u(rng) * root;
        if (root + r14 < 2.0 * b) continue;
        const double phase = 2.0 * M_PI * u(rng);
        XStateDensity x;
        x.rho11 = a;
        x.rho44 = d;
        x.rho22 = x.rho33 = b;
        x.rho23 = b;
        x.rho14 = std::polar(r14, phase);
        const double special = concurrence_xstate(x);
        const double generic = concurrence_generic(x.matrix());
        CHECK(std::abs(special - generic) < 1e-10);
        CHECK(special == doctest::Approx(std::max(0.0, 2.0 * (r14 - b))).epsilon(1e-10));
        ++tested;
    }
}

TEST_CASE("initial concurrence equals 2 |alpha| |beta|") {
    ModelParams p = fig2_params();
    // The truncated thermal sum scales the state by 1 - tail, and the
    // concurrence with it; push the tail below the 1e-12 identity target.
    const auto dist = thermal_weights(p.g_bath, p.temperature, 1e-13);
    auto [c11, c00] = coefficients_at(p, dist, 0.0);
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const Complex a{u(rng), u(rng)};
        const Complex b{u(rng), u(rng)};
        if (std::abs(a) + std::abs(b) < 1e-3) continue;
        const auto init = InitialQubitState::normalized(a, b);
        const auto rho = assemble_density(c11, c00, init, dist, p, 0.0);
        const double expected = 2.0 * std::abs(init.alpha) * std::abs(init.beta);
        CHECK(std::abs(concurrence_generic(rho.matrix()) - expected) < 1e-12);
    }
}

TEST_CASE("concurrence is invariant under global amplitude phases") {
    ModelParams p = fig2_params();
    const auto dist = thermal_weights(p.g_bath, p.temperature, 1e-10);
    auto [c11, c00] = coefficients_at(p, dist, 1.7);
    const auto init = InitialQubitState::normalized(0.6, 0.8);
    const double base =
        concurrence_generic(assemble_density(c11, c00, init, dist, p, 1.7).matrix());
    for (double phi : {0.3, 1.1, 2.9}) {
        const auto rotated = InitialQubitState::normalized(std::polar(0.6, phi),
                                                           std::polar(0.8, phi - 0.4));
        const double rot =
            concurrence_generic(assemble_density(c11, c00, rotated, dist, p, 1.7).matrix());
        CHECK(std::abs(rot - base) < 1e-12);
    }
}

TEST_CASE("esd detection on constructed series") {
    ConcurrenceSeries flat;
    flat.times = {0.0, 1.0, 2.0, 3.0};
    flat.values = {0.5, 0.5, 0.5, 0.5};
    CHECK(detect_esd(flat).empty());

    // Piecewise linear dip that sits at zero exactly on [2, 3.5].
    ConcurrenceSeries dip;
    for (int i = 0; i <= 50; ++i) {
        const double t = 0.1 * i;
        dip.times.push_back(t);
        double c = 0.0;
        if (t < 2.0) c = 0.4 * (2.0 - t) / 2.0;
        else if (t > 3.5) c = 0.4 * (t - 3.5) / 1.5;
        dip.values.push_back(c);
    }
    const auto intervals = detect_esd(dip, 0.0);
    REQUIRE(intervals.size() == 1);
    CHECK(intervals[0].first == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(intervals[0].second == doctest::Approx(3.5).epsilon(1e-12));

    // A series that starts and ends inside the dead zone.
    ConcurrenceSeries edges;
    edges.times = {0.0, 1.0, 2.0, 3.0, 4.0};
    edges.values = {0.0, 0.2, 0.0, 0.0, 0.0};
    const auto both = detect_esd(edges, 1e-6);
    REQUIRE(both.size() == 2);
    CHECK(both[0].first == 0.0);
    CHECK(both[1].second == 4.0);

    CHECK_THROWS_AS(detect_esd(flat, -1.0), ConfigError);
}

TEST_CASE("assembled coherence carries the 4 g t phase") {
    // The |00><11| element must match the exact propagator including its
    // phase, not only in magnitude.
    ModelParams p = fig2_params();
    const auto dist = thermal_weights(p.g_bath, p.temperature, 1e-10);
    OraclePropagator prop(p, dist.cutoff + 2);
    const InitialQubitState bell(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
    for (double t : {0.37, 1.234, 2.718}) {
        auto [c11, c00] = coefficients_at(p, dist, t);
        const auto assembled = assemble_density(c11, c00, bell, dist, p, t);
        const auto exact = prop.reduced_density(bell, dist, t);
        CHECK(std::abs(assembled.rho14 - exact(0, 3)) < 1e-9);
        CHECK(std::abs(assembled.rho14) > 1e-3); // non-trivial check
    }
}

#include "xxzbath/coefficients.hpp"

#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <sstream>

#include "xxzbath/errors.hpp"

namespace xxzbath {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

// Roots of l^2 + m0 l - 2 g0^2 kappa = 0, ordered l_plus >= l_minus and
// computed cancellation-free via the product of roots.
EigenFrequencies branch_frequencies(double m0, double g0, double kappa) {
    const double c = -2.0 * g0 * g0 * kappa;
    if (c == 0.0) {
        return {std::max(0.0, -m0), std::min(0.0, -m0)};
    }
    const double disc = std::sqrt(m0 * m0 - 4.0 * c);
    EigenFrequencies f;
    if (m0 <= 0.0) {
        f.l_plus = 0.5 * (-m0 + disc);
        f.l_minus = c / f.l_plus;
    } else {
        f.l_minus = 0.5 * (-m0 - disc);
        f.l_plus = c / f.l_minus;
    }
    return f;
}

// Effective transverse-Ising splitting of the single-excitation pair inside
// a branch sector, once the common sector phase is stripped.
double effective_splitting(const ModelParams& p) { return 0.5 * (p.omega - p.gamma_z); }

void require_closed_form_domain(const ModelParams& p) {
    if (p.dz_sys != 0.0 || !is_resonant(p)) {
        std::ostringstream msg;
        msg << "closed-form coefficients require d_z = 0 and mu0 = 2 g_bath; got d_z = "
            << p.dz_sys << ", mu0 = " << p.mu0 << ", 2 g_bath = " << 2.0 * p.g_bath
            << " (use the ODE path)";
        throw PreconditionViolation(msg.str());
    }
}

// Shared evaluator for the mode expansion
//   const + amp (e^{i l1 t}/l1 - e^{i l2 t}/l2)   (for the double-flip/stay slots)
//   and    -(g0/sqrt(D)) (e^{i l1 t} - e^{i l2 t}) (for the single slots).
struct ModeBasis {
    std::complex<double> phased_diff; // e^{i l1 t}/l1 - e^{i l2 t}/l2
    std::complex<double> plain_diff;  // e^{i l1 t}   - e^{i l2 t}
    double sqrt_disc;
};

ModeBasis mode_basis(const EigenFrequencies& f, double t) {
    const std::complex<double> e1 = std::exp(kI * (f.l_plus * t));
    const std::complex<double> e2 = std::exp(kI * (f.l_minus * t));
    return {e1 / f.l_plus - e2 / f.l_minus, e1 - e2, f.l_plus - f.l_minus};
}

} // namespace

EigenFrequencies eigenfrequencies(double gamma_z, double omega, double g0, int n) {
    return branch_frequencies(omega - 2.0 * gamma_z, g0, 3.0 + 2.0 * n);
}

BranchCoefficients closed_form_branch11(const ModelParams& params, int n, double t) {
    require_closed_form_domain(params);
    BranchCoefficients out;
    out.branch = Branch::Eleven;
    out.n = n;
    out.time = t;
    const double g0 = params.g0;
    if (g0 == 0.0) return out; // qubits decoupled from the bath: stay amplitude only

    const double kappa = 3.0 + 2.0 * n;
    const auto f = branch_frequencies(effective_splitting(params), g0, kappa);
    const auto mb = mode_basis(f, t);
    const double amp = 2.0 * g0 * g0 / mb.sqrt_disc;

    out.c_double_flip = -1.0 / kappa + amp * mb.phased_diff;
    out.c_single_a = -(g0 / mb.sqrt_disc) * mb.plain_diff;
    out.c_single_b = out.c_single_a;
    out.c_stay = (2.0 + n) / kappa + amp * (1.0 + n) * mb.phased_diff;
    return out;
}

BranchCoefficients closed_form_branch00(const ModelParams& params, int n, double t) {
    require_closed_form_domain(params);
    BranchCoefficients out;
    out.branch = Branch::ZeroZero;
    out.n = n;
    out.time = t;
    const double g0 = params.g0;
    // n = 0 has no lower sector states: |00,0> only picks up the stripped
    // phase. Same for g0 = 0.
    if (n == 0 || g0 == 0.0) return out;

    const double kappa = 2.0 * n - 1.0;
    const auto f = branch_frequencies(effective_splitting(params), g0, kappa);
    const auto mb = mode_basis(f, t);
    const double amp = 2.0 * g0 * g0 / mb.sqrt_disc;

    out.c_stay = (n - 1.0) / kappa + amp * n * mb.phased_diff;
    out.c_single_a = -(g0 / mb.sqrt_disc) * mb.plain_diff;
    out.c_single_b = out.c_single_a;
    out.c_double_flip = -1.0 / kappa + amp * mb.phased_diff;
    return out;
}

BranchState ode_rhs_branch11(const ModelParams& p, int n, const BranchState& s) {
    const double delta = p.mu0 - 2.0 * p.g_bath;
    const std::complex<double> cross_a = 0.5 * std::complex<double>(p.omega, -p.dz_sys);
    const std::complex<double> cross_b = std::conj(cross_a);
    const auto& [T, U, R, F] = s;
    BranchState d;
    d[0] = -kI * (-delta * T + p.g0 * (U + R));
    d[1] = -kI * (-0.5 * p.gamma_z * U + cross_a * R + p.g0 * (n + 2.0) * T + p.g0 * F);
    d[2] = -kI * (-0.5 * p.gamma_z * R + cross_b * U + p.g0 * (n + 2.0) * T + p.g0 * F);
    d[3] = -kI * (delta * F + p.g0 * (n + 1.0) * (U + R));
    return d;
}

BranchState ode_rhs_branch00(const ModelParams& p, int n, const BranchState& s) {
    const double delta = p.mu0 - 2.0 * p.g_bath;
    const std::complex<double> cross_a = 0.5 * std::complex<double>(p.omega, -p.dz_sys);
    const std::complex<double> cross_b = std::conj(cross_a);
    const auto& [L, C, S, I] = s;
    BranchState d;
    d[0] = -kI * (delta * L + p.g0 * (C + S));
    d[1] = -kI * (-0.5 * p.gamma_z * C + cross_a * S + p.g0 * I + p.g0 * (n - 1.0) * L);
    d[2] = -kI * (-0.5 * p.gamma_z * S + cross_b * C + p.g0 * I + p.g0 * (n - 1.0) * L);
    d[3] = -kI * (-delta * I + p.g0 * n * (C + S));
    return d;
}

std::vector<BranchCoefficients> integrate_branch(const ModelParams& params, Branch branch,
                                                 int n, const std::vector<double>& t_grid,
                                                 const IntegratorOptions& opts) {
    if (t_grid.empty()) throw ConfigError("integrate_branch: empty time grid");
    if (t_grid.front() != 0.0) throw ConfigError("integrate_branch: grid must start at 0");
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > t_grid[i - 1])) {
            throw ConfigError("integrate_branch: grid must be strictly increasing");
        }
    }

    namespace ode = boost::numeric::odeint;
    using Stepper = ode::runge_kutta_dopri5<BranchState>;

    auto rhs = [&](const BranchState& s, BranchState& dsdt, double /*t*/) {
        dsdt = (branch == Branch::Eleven) ? ode_rhs_branch11(params, n, s)
                                          : ode_rhs_branch00(params, n, s);
    };

    std::vector<BranchCoefficients> out;
    out.reserve(t_grid.size());
    auto observe = [&](const BranchState& s, double t) {
        BranchCoefficients c;
        c.branch = branch;
        c.n = n;
        c.time = t;
        c.c_double_flip = s[0];
        c.c_single_a = s[1];
        c.c_single_b = s[2];
        c.c_stay = s[3];
        out.push_back(c);
    };

    BranchState state{{{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}};
    observe(state, 0.0);

    // Manual step-control loop so the grid times are hit exactly and a
    // stalled controller surfaces as an error instead of spinning.
    auto stepper = ode::make_controlled(opts.abs_tol, opts.rel_tol, Stepper());
    const double span = t_grid.back();
    double t = 0.0;
    double dt = span > 0.0 ? std::min(1e-3, span / 10.0) : 1e-3;
    const double min_step = 1e-14 * std::max(1.0, span);
    std::size_t total_steps = 0;
    constexpr std::size_t kMaxSteps = 50'000'000;
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        const double target = t_grid[i];
        while (t < target) {
            if (++total_steps > kMaxSteps) {
                throw NumericalFailure("integrate_branch: step budget exhausted");
            }
            const double step = std::min(dt, target - t);
            double trial = step;
            const auto res = stepper.try_step(rhs, state, t, trial);
            if (res == ode::controlled_step_result::success) {
                // try_step advanced t by `step` and suggests `trial` next.
                dt = trial;
            } else {
                dt = trial;
                if (!(dt >= min_step)) {
                    throw NumericalFailure(
                        "integrate_branch: StepSizeUnderflow, the controller cannot meet "
                        "rel_tol " + std::to_string(opts.rel_tol) + ", abs_tol " +
                        std::to_string(opts.abs_tol));
                }
            }
        }
        observe(state, target);
    }
    return out;
}

std::array<double, 4> occupation_weights(Branch branch, int n) {
    const double nn = n;
    if (branch == Branch::Eleven) {
        return {(nn + 1.0) * (nn + 2.0), nn + 1.0, nn + 1.0, 1.0};
    }
    return {nn * (nn - 1.0), nn, nn, 1.0};
}

double sector_norm(const BranchCoefficients& c) {
    const auto w = occupation_weights(c.branch, c.n);
    return w[0] * std::norm(c.c_double_flip) + w[1] * std::norm(c.c_single_a) +
           w[2] * std::norm(c.c_single_b) + w[3] * std::norm(c.c_stay);
}

} // namespace xxzbath

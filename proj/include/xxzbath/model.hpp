#ifndef XXZBATH_MODEL_HPP
#define XXZBATH_MODEL_HPP

#include <complex>
#include <string>
#include <vector>

namespace xxzbath {

/// Physical couplings of the two-qubit XXZ chain, the single-mode bosonic
/// bath it is immersed in, and the bath temperature. Units: hbar = k_B = 1,
/// every coupling and the temperature share one energy unit, time is measured
/// in inverse energy.
struct ModelParams {
    double mu0 = 4.0;         // qubit Zeeman coupling to the external field
    double omega = 0.0;       // in-plane (XY) exchange between the two qubits
    double gamma_z = 0.0;     // z-axis Ising exchange between the two qubits
    double dz_sys = 0.0;      // z-component of the qubit-pair DM vector
    double g0 = 2.0;          // qubit-bath exchange strength
    double g_bath = 2.0;      // intra-bath coupling; the bath mode energy is 2*g_bath
    double gamma_bath = 0.0;  // bath Zeeman constant; enters only as a global phase
    double dz_bath = 0.0;     // bath DM constant; no observable effect (see docs)
    double temperature = 4.0; // bath temperature (k_B absorbed)
};

struct ValidationIssue {
    enum class Severity { Error, Warning };
    Severity severity;
    std::string code;    // e.g. "NonPositiveTemperature"
    std::string message;
};

/// Collects all invariant violations instead of stopping at the first one.
/// Errors: NonPositiveTemperature, NonPositiveBathCoupling.
/// Warning only: FerromagneticRegime (gamma_z < 0 or omega < 0), outside the
/// antiferromagnetic domain the reference scenarios assume.
std::vector<ValidationIssue> validate(const ModelParams& params);

/// Throws ConfigError listing every error-severity issue; warnings pass.
void throw_if_invalid(const ModelParams& params);

/// Resonance between the qubit gap and the bath mode: |mu0 - 2 g_bath| small
/// in relative terms. The closed-form coefficient path requires this.
bool is_resonant(const ModelParams& params);

/// Two-qubit pure initial state alpha|00> + beta|11>.
struct InitialQubitState {
    std::complex<double> alpha{1.0, 0.0};
    std::complex<double> beta{0.0, 0.0};

    InitialQubitState() = default; // |00>

    /// Validates |alpha|^2 + |beta|^2 = 1 within 1e-12.
    InitialQubitState(std::complex<double> a, std::complex<double> b);

    /// Scales (a, b) to unit norm; rejects the zero vector.
    static InitialQubitState normalized(std::complex<double> a, std::complex<double> b);
};

/// Geometric occupation probabilities p_n = (1-q) q^n of the thermal bath
/// mode, q = exp(-2 g_bath / temperature), truncated at the smallest N_max
/// with q^(N_max+1) <= tail_epsilon.
struct ThermalDistribution {
    std::vector<double> weights; // p_0 .. p_{N_max}, strictly decreasing
    int cutoff = 0;              // N_max
    double tail_epsilon = 0.0;
    double ratio = 0.0;          // q
};

ThermalDistribution thermal_weights(double g_bath, double temperature, double tail_epsilon);

} // namespace xxzbath

#endif

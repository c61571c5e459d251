#ifndef XXZBATH_COEFFICIENTS_HPP
#define XXZBATH_COEFFICIENTS_HPP

#include <array>
#include <complex>
#include <vector>

#include "xxzbath/model.hpp"

namespace xxzbath {

// The joint Hamiltonian conserves the excitation count (qubit ups + bath
// quanta), so a product state |q1 q2> ⊗ |n> evolves inside a four-dimensional
// sector. For each bath occupation n we track the sector amplitudes in a
// weighted, phase-stripped form chosen so that every coefficient starts at
// the same (0, 0, 0, 1)-style initial condition and the occupation factors
// of the reduced density matrix appear as integer weights:
//
//   branch Eleven  (start |11,n>):
//     e^{-iHt}|11,n> = e^{-i phi t} [ sqrt((n+1)(n+2)) T |00,n+2>
//                                   + sqrt(n+1) U |01,n+1> + sqrt(n+1) R |10,n+1>
//                                   + F |11,n> ],          phi = 2 g (n+1) + u
//   branch ZeroZero (start |00,n>):
//     e^{-iHt}|00,n> = e^{-i phi' t} [ I |00,n>
//                                    + sqrt(n) C |01,n-1> + sqrt(n) S |10,n-1>
//                                    + sqrt(n(n-1)) L |11,n-2> ], phi' = 2 g (n-1) + u
//
// with u = gamma_bath + gamma_z/4. The phase convention makes the |00><11|
// coherence of the assembled density matrix carry an explicit e^{4 i g t}
// factor and nothing else.
enum class Branch { Eleven, ZeroZero };

/// Sector amplitudes of one branch at one time, in the weighted convention
/// above. For Eleven: (c_double_flip, c_single_a, c_single_b, c_stay) =
/// (T, U, R, F); for ZeroZero: (L, C, S, I). Both branches start at
/// (0, 0, 0, 1). For ZeroZero with n < 2 the c_double_flip slot (and for
/// n = 0 the single slots) have zero occupation weight and carry no
/// physical content.
struct BranchCoefficients {
    Branch branch = Branch::Eleven;
    int n = 0;
    std::complex<double> c_double_flip{0.0, 0.0};
    std::complex<double> c_single_a{0.0, 0.0};
    std::complex<double> c_single_b{0.0, 0.0};
    std::complex<double> c_stay{1.0, 0.0};
    double time = 0.0;
};

/// The two nonzero mode frequencies of a branch sector. l_plus >= l_minus,
/// l_plus * l_minus = -2 g0^2 (3 + 2n).
struct EigenFrequencies {
    double l_plus = 0.0;
    double l_minus = 0.0;
};

/// Frequencies [(2 gamma_z - omega) +- sqrt((2 gamma_z - omega)^2
/// + 8 g0^2 (3 + 2n))] / 2. This is the printed-form frequency pair used by
/// the legacy closed forms; the model-consistent closed forms below use the
/// same quadratic with the effective splitting (omega - gamma_z)/2.
EigenFrequencies eigenfrequencies(double gamma_z, double omega, double g0, int n);

/// Analytic branch-Eleven coefficients on the validity domain d_z = 0 with
/// mu0 = 2 g_bath (resonance). Throws PreconditionViolation otherwise.
BranchCoefficients closed_form_branch11(const ModelParams& params, int n, double t);

/// Analytic branch-ZeroZero coefficients on the same validity domain.
BranchCoefficients closed_form_branch00(const ModelParams& params, int n, double t);

using BranchState = std::array<std::complex<double>, 4>;

/// Right-hand side of the branch-Eleven system in the weighted convention,
/// with the occupation operator replaced by its eigenvalue n. Valid for any
/// d_z and detuning.
BranchState ode_rhs_branch11(const ModelParams& params, int n, const BranchState& state);

/// Right-hand side of the branch-ZeroZero system. Derivation: insert the
/// weighted ansatz above into i d/dt psi = H psi on the sector
/// {|00,n>, |01,n-1>, |10,n-1>, |11,n-2>} and strip the phi' phase. With
/// delta = mu0 - 2 g_bath and w = (omega -+ i d_z)/2:
///   i I'  = -delta I + g0 n (C + S)
///   i C'  = -(gamma_z/2) C + w- S + g0 I + g0 (n-1) L
///   i S'  = -(gamma_z/2) S + w+ C + g0 I + g0 (n-1) L
///   i L'  =  delta L + g0 (C + S)
/// The branch-Eleven system is the same construction on
/// {|00,n+2>, |01,n+1>, |10,n+1>, |11,n>}.
BranchState ode_rhs_branch00(const ModelParams& params, int n, const BranchState& state);

struct IntegratorOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
};

/// Adaptive dense-output integration of one branch from its initial
/// condition, reporting coefficients at every grid time. t_grid must be
/// strictly increasing and start at 0. Throws NumericalFailure on step-size
/// underflow.
std::vector<BranchCoefficients> integrate_branch(const ModelParams& params, Branch branch,
                                                 int n, const std::vector<double>& t_grid,
                                                 const IntegratorOptions& opts = {});

/// Occupation weights {w_df, w_a, w_b, w_stay} multiplying |coefficient|^2
/// in the sector norm and in the reduced density matrix. Eleven:
/// {(n+1)(n+2), n+1, n+1, 1}; ZeroZero: {n(n-1), n, n, 1}.
std::array<double, 4> occupation_weights(Branch branch, int n);

/// Weighted sector norm; conserved at 1 by the exact dynamics.
double sector_norm(const BranchCoefficients& c);

} // namespace xxzbath

#endif

#ifndef XXZBATH_ORACLE_HPP
#define XXZBATH_ORACLE_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "xxzbath/coefficients.hpp"
#include "xxzbath/entanglement.hpp"
#include "xxzbath/model.hpp"

namespace xxzbath {

/// Two qubits ⊗ truncated Fock space. Basis |q1 q2> ⊗ |m>, lexicographic:
/// index = (2 q1 + q2) (fock_cutoff + 1) + m.
struct TruncatedSpace {
    int fock_cutoff = 0; // max occupation M; Fock dimension M + 1

    int fock_dim() const { return fock_cutoff + 1; }
    int total_dim() const { return 4 * fock_dim(); }
    int index(int q1, int q2, int m) const { return (2 * q1 + q2) * fock_dim() + m; }
};

struct HamiltonianMatrix {
    Eigen::MatrixXcd matrix;
    TruncatedSpace space;
    bool hermitian = false; // max |H - H^dag| below 1e-13
};

/// Joint Hamiltonian on the truncated space. Spin convention: S^z|1> = +1/2,
/// S^z|0> = -1/2, S+|0> = |1>; the in-plane exchange and DM terms are the
/// x/y spin products, so the |01><10| element is (omega - i d_z)/2. The
/// qubit-bath exchange couples |..0..,m> <-> |..1..,m-1> with amplitude
/// g0 sqrt(m). Bath term 2 g_bath b'b + gamma_bath (the latter a global
/// constant kept for completeness). Throws ConfigError ("DimensionOverflow")
/// above dim_cap.
HamiltonianMatrix build_hamiltonian(const ModelParams& params, const TruncatedSpace& space,
                                    int dim_cap = 4096);

/// Diagonal of the conserved excitation operator (qubit ups + bath quanta).
Eigen::VectorXd excitation_diagonal(const TruncatedSpace& space);

/// e^{-iHt} psi0 via a fresh Hermitian eigendecomposition. psi0 must be
/// normalized within 1e-12. For many times or states prefer OraclePropagator.
Eigen::VectorXcd evolve_state(const HamiltonianMatrix& h, const Eigen::VectorXcd& psi0, double t);

/// Ground-truth propagation: one eigendecomposition of the joint
/// Hamiltonian, reused for every initial state and every time.
class OraclePropagator {
  public:
    OraclePropagator(const ModelParams& params, int fock_cutoff, int dim_cap = 4096);

    const TruncatedSpace& space() const { return space_; }
    const ModelParams& params() const { return params_; }
    const Eigen::MatrixXcd& hamiltonian() const { return h_; }

    Eigen::VectorXcd evolve(const Eigen::VectorXcd& psi0, double t) const;

    /// Thermally averaged reduced density matrix
    ///   rho_s(t) = sum_n p_n Tr_B[e^{-iHt} (|phi><phi| ⊗ |n><n|) e^{iHt}].
    /// Requires fock_cutoff >= dist.cutoff + 2 (the |11,n> branch climbs two
    /// quanta).
    Eigen::Matrix4cd reduced_density(const InitialQubitState& init,
                                     const ThermalDistribution& dist, double t) const;

    /// Same for a whole time grid; time points are evaluated independently
    /// (and in parallel when OpenMP is enabled).
    std::vector<Eigen::Matrix4cd> reduced_density_series(const InitialQubitState& init,
                                                         const ThermalDistribution& dist,
                                                         const std::vector<double>& times) const;

    /// Sector amplitudes of e^{-iHt}|branch,n> in the weighted stripped-phase
    /// convention of BranchCoefficients. Ground truth for the coefficient
    /// paths.
    BranchCoefficients branch_coefficients(Branch branch, int n, double t) const;

  private:
    ModelParams params_;
    TruncatedSpace space_;
    Eigen::MatrixXcd h_;
    Eigen::MatrixXcd vectors_;
    Eigen::VectorXd energies_;

    Eigen::MatrixXcd weighted_initial_columns(const InitialQubitState& init,
                                              const ThermalDistribution& dist) const;
    Eigen::Matrix4cd accumulate_blocks(const Eigen::MatrixXcd& psi_t) const;
};

/// One-call form of the ground-truth reduced state, classified to X form
/// (off-pattern content is advisory). Uses fock_cutoff = dist.cutoff + 2.
XStateClassification reduced_density_oracle(const ModelParams& params,
                                            const InitialQubitState& init,
                                            const ThermalDistribution& dist, double t);

} // namespace xxzbath

#endif

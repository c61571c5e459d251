#include "xxzbath/oracle.hpp"

#include <cmath>
#include <sstream>

#include "xxzbath/errors.hpp"

namespace xxzbath {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
}

HamiltonianMatrix build_hamiltonian(const ModelParams& p, const TruncatedSpace& space,
                                    int dim_cap) {
    throw_if_invalid(p);
    if (space.fock_cutoff < 0) throw ConfigError("fock_cutoff must be >= 0");
    const int dim = space.total_dim();
    if (dim > dim_cap) {
        std::ostringstream msg;
        msg << "DimensionOverflow: total dimension " << dim << " exceeds cap " << dim_cap;
        throw ConfigError(msg.str());
    }

    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    const int fock = space.fock_dim();
    auto sz = [](int q) { return q ? 0.5 : -0.5; };

    for (int q1 = 0; q1 < 2; ++q1) {
        for (int q2 = 0; q2 < 2; ++q2) {
            for (int m = 0; m < fock; ++m) {
                const int k = space.index(q1, q2, m);
                h(k, k) = p.mu0 * (sz(q1) + sz(q2)) + p.gamma_z * sz(q1) * sz(q2) +
                          2.0 * p.g_bath * m + p.gamma_bath;
            }
        }
    }

    // In-plane exchange + DM: <10|H|01> = (omega + i d_z)/2.
    const std::complex<double> flip{0.5 * p.omega, 0.5 * p.dz_sys};
    for (int m = 0; m < fock; ++m) {
        h(space.index(1, 0, m), space.index(0, 1, m)) = flip;
        h(space.index(0, 1, m), space.index(1, 0, m)) = std::conj(flip);
    }

    // Qubit-bath exchange: raising a qubit absorbs one quantum.
    for (int m = 1; m < fock; ++m) {
        const double amp = p.g0 * std::sqrt(static_cast<double>(m));
        for (int q = 0; q < 2; ++q) {
            const int up1 = space.index(1, q, m - 1);
            const int dn1 = space.index(0, q, m);
            h(up1, dn1) += amp;
            h(dn1, up1) += amp;
            const int up2 = space.index(q, 1, m - 1);
            const int dn2 = space.index(q, 0, m);
            h(up2, dn2) += amp;
            h(dn2, up2) += amp;
        }
    }

    HamiltonianMatrix out;
    out.space = space;
    out.hermitian = (h - h.adjoint()).cwiseAbs().maxCoeff() <= 1e-13;
    out.matrix = std::move(h);
    return out;
}

Eigen::VectorXd excitation_diagonal(const TruncatedSpace& space) {
    Eigen::VectorXd diag(space.total_dim());
    for (int q1 = 0; q1 < 2; ++q1)
        for (int q2 = 0; q2 < 2; ++q2)
            for (int m = 0; m < space.fock_dim(); ++m)
                diag(space.index(q1, q2, m)) = q1 + q2 + m;
    return diag;
}

Eigen::VectorXcd evolve_state(const HamiltonianMatrix& h, const Eigen::VectorXcd& psi0,
                              double t) {
    if (std::abs(psi0.norm() - 1.0) > 1e-12) {
        throw ConfigError("evolve_state: initial state must be normalized");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.matrix);
    if (es.info() != Eigen::Success) throw NumericalFailure("EigenFailure: decomposition failed");
    const Eigen::VectorXcd phases =
        (-kI * t * es.eigenvalues().cast<std::complex<double>>().array()).exp();
    return es.eigenvectors() * phases.cwiseProduct(es.eigenvectors().adjoint() * psi0);
}

OraclePropagator::OraclePropagator(const ModelParams& params, int fock_cutoff, int dim_cap)
    : params_(params), space_{fock_cutoff} {
    auto built = build_hamiltonian(params, space_, dim_cap);
    h_ = std::move(built.matrix);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h_);
    if (es.info() != Eigen::Success) throw NumericalFailure("EigenFailure: decomposition failed");
    vectors_ = es.eigenvectors();
    energies_ = es.eigenvalues();
}

Eigen::VectorXcd OraclePropagator::evolve(const Eigen::VectorXcd& psi0, double t) const {
    const Eigen::VectorXcd phases =
        (-kI * t * energies_.cast<std::complex<double>>().array()).exp();
    return vectors_ * phases.cwiseProduct(vectors_.adjoint() * psi0);
}

Eigen::MatrixXcd OraclePropagator::weighted_initial_columns(const InitialQubitState& init,
                                                            const ThermalDistribution& dist) const {
    if (space_.fock_cutoff < dist.cutoff + 2) {
        std::ostringstream msg;
        msg << "fock_cutoff " << space_.fock_cutoff << " below thermal cutoff " << dist.cutoff
            << " + 2";
        throw ConfigError(msg.str());
    }
    // Column n holds sqrt(p_n) V^dag (alpha|00,n> + beta|11,n>): the
    // propagation of every thermal component then reduces to phase scaling
    // plus one dense product per time.
    const int cols = dist.cutoff + 1;
    Eigen::MatrixXcd psi0(space_.total_dim(), cols);
    for (int n = 0; n < cols; ++n) {
        const double root_pn = std::sqrt(dist.weights[static_cast<std::size_t>(n)]);
        psi0.col(n) = root_pn * (init.alpha * vectors_.row(space_.index(0, 0, n)).adjoint() +
                                 init.beta * vectors_.row(space_.index(1, 1, n)).adjoint());
    }
    return psi0;
}

Eigen::Matrix4cd OraclePropagator::accumulate_blocks(const Eigen::MatrixXcd& psi_t) const {
    const int fock = space_.fock_dim();
    const int cols = static_cast<int>(psi_t.cols());
    Eigen::Matrix4cd rho;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j <= i; ++j) {
            rho(i, j) = psi_t.block(i * fock, 0, fock, cols)
                            .cwiseProduct(psi_t.block(j * fock, 0, fock, cols).conjugate())
                            .sum();
            if (i != j) rho(j, i) = std::conj(rho(i, j));
        }
    }
    return rho;
}

Eigen::Matrix4cd OraclePropagator::reduced_density(const InitialQubitState& init,
                                                   const ThermalDistribution& dist,
                                                   double t) const {
    const Eigen::MatrixXcd psi0 = weighted_initial_columns(init, dist);
    const Eigen::VectorXcd phases =
        (-kI * t * energies_.cast<std::complex<double>>().array()).exp();
    return accumulate_blocks(vectors_ * phases.asDiagonal() * psi0);
}

std::vector<Eigen::Matrix4cd> OraclePropagator::reduced_density_series(
    const InitialQubitState& init, const ThermalDistribution& dist,
    const std::vector<double>& times) const {
    const Eigen::MatrixXcd psi0 = weighted_initial_columns(init, dist);
    std::vector<Eigen::Matrix4cd> out(times.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(times.size()); ++i) {
        const Eigen::VectorXcd phases =
            (-kI * times[static_cast<std::size_t>(i)] * energies_.cast<std::complex<double>>().array())
                .exp();
        out[static_cast<std::size_t>(i)] =
            accumulate_blocks(vectors_ * phases.asDiagonal() * psi0);
    }
    return out;
}

BranchCoefficients OraclePropagator::branch_coefficients(Branch branch, int n, double t) const {
    const int fock = space_.fock_dim();
    const int start_q = (branch == Branch::Eleven) ? 3 : 0;
    const int start_idx = start_q * fock + n;
    if (n < 0 || n >= fock || (branch == Branch::Eleven && n + 2 >= fock)) {
        throw ConfigError("branch occupation outside the truncated space");
    }
    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(space_.total_dim());
    psi0(start_idx) = 1.0;
    const Eigen::VectorXcd psi = evolve(psi0, t);

    const double u = params_.gamma_bath + 0.25 * params_.gamma_z;
    const double shift = (branch == Branch::Eleven) ? 1.0 : -1.0;
    const std::complex<double> unphase = std::exp(kI * ((2.0 * params_.g_bath * (n + shift) + u) * t));

    BranchCoefficients c;
    c.branch = branch;
    c.n = n;
    c.time = t;
    const double nn = n;
    if (branch == Branch::Eleven) {
        c.c_double_flip =
            unphase * psi(space_.index(0, 0, n + 2)) / std::sqrt((nn + 1.0) * (nn + 2.0));
        c.c_single_a = unphase * psi(space_.index(0, 1, n + 1)) / std::sqrt(nn + 1.0);
        c.c_single_b = unphase * psi(space_.index(1, 0, n + 1)) / std::sqrt(nn + 1.0);
        c.c_stay = unphase * psi(space_.index(1, 1, n));
    } else {
        c.c_stay = unphase * psi(space_.index(0, 0, n));
        c.c_single_a = n >= 1 ? unphase * psi(space_.index(0, 1, n - 1)) / std::sqrt(nn)
                              : std::complex<double>{0.0, 0.0};
        c.c_single_b = n >= 1 ? unphase * psi(space_.index(1, 0, n - 1)) / std::sqrt(nn)
                              : std::complex<double>{0.0, 0.0};
        c.c_double_flip = n >= 2 ? unphase * psi(space_.index(1, 1, n - 2)) /
                                       std::sqrt(nn * (nn - 1.0))
                                 : std::complex<double>{0.0, 0.0};
    }
    return c;
}

XStateClassification reduced_density_oracle(const ModelParams& params,
                                            const InitialQubitState& init,
                                            const ThermalDistribution& dist, double t) {
    OraclePropagator prop(params, dist.cutoff + 2);
    return classify_xstate(prop.reduced_density(init, dist, t), t);
}

} // namespace xxzbath

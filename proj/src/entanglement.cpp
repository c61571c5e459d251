#include "xxzbath/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "xxzbath/errors.hpp"

namespace xxzbath {

Eigen::Matrix4cd XStateDensity::matrix() const {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 0) = rho11;
    m(1, 1) = rho22;
    m(2, 2) = rho33;
    m(3, 3) = rho44;
    m(0, 3) = rho14;
    m(3, 0) = std::conj(rho14);
    m(1, 2) = rho23;
    m(2, 1) = std::conj(rho23);
    return m;
}

XStateClassification classify_xstate(const Eigen::Matrix4cd& rho, double time, double tolerance) {
    XStateClassification c;
    c.state.rho11 = rho(0, 0).real();
    c.state.rho22 = rho(1, 1).real();
    c.state.rho33 = rho(2, 2).real();
    c.state.rho44 = rho(3, 3).real();
    c.state.rho14 = rho(0, 3);
    c.state.rho23 = rho(1, 2);
    c.state.time = time;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (i == j || i + j == 3) continue;
            c.off_pattern_max = std::max(c.off_pattern_max, std::abs(rho(i, j)));
        }
    }
    c.x_form = c.off_pattern_max <= tolerance;
    return c;
}

XStateDensity assemble_density(const std::vector<BranchCoefficients>& coeffs11,
                               const std::vector<BranchCoefficients>& coeffs00,
                               const InitialQubitState& init, const ThermalDistribution& dist,
                               const ModelParams& params, double t) {
    const int n_max = dist.cutoff;
    auto check_coverage = [&](const std::vector<BranchCoefficients>& cs, Branch branch,
                              const char* label) {
        if (static_cast<int>(cs.size()) < n_max + 1) {
            std::ostringstream msg;
            msg << "CoverageGap: " << label << " spans " << cs.size() << " occupations, need "
                << n_max + 1;
            throw ConfigError(msg.str());
        }
        for (int n = 0; n <= n_max; ++n) {
            const auto& c = cs[static_cast<std::size_t>(n)];
            if (c.branch != branch || c.n != n || std::abs(c.time - t) > 1e-12) {
                std::ostringstream msg;
                msg << "CoverageGap: " << label << " slot " << n
                    << " does not hold branch coefficients for (n=" << n << ", t=" << t << ")";
                throw ConfigError(msg.str());
            }
        }
    };
    check_coverage(coeffs11, Branch::Eleven, "coeffs11");
    check_coverage(coeffs00, Branch::ZeroZero, "coeffs00");

    const double wa = std::norm(init.alpha);
    const double wb = std::norm(init.beta);
    const std::complex<double> ab = init.alpha * std::conj(init.beta);

    XStateDensity rho;
    rho.time = t;
    std::complex<double> coherence{0.0, 0.0};
    for (int n = 0; n <= n_max; ++n) {
        const double pn = dist.weights[static_cast<std::size_t>(n)];
        const auto& e = coeffs11[static_cast<std::size_t>(n)]; // (T, U, R, F)
        const auto& z = coeffs00[static_cast<std::size_t>(n)]; // (L, C, S, I)
        const double nn = n;

        rho.rho11 += pn * (wa * std::norm(z.c_stay) +
                           wb * (nn + 1.0) * (nn + 2.0) * std::norm(e.c_double_flip));
        rho.rho22 += pn * (wa * nn * std::norm(z.c_single_a) +
                           wb * (nn + 1.0) * std::norm(e.c_single_a));
        rho.rho33 += pn * (wa * nn * std::norm(z.c_single_b) +
                           wb * (nn + 1.0) * std::norm(e.c_single_b));
        rho.rho44 += pn * (wa * nn * (nn - 1.0) * std::norm(z.c_double_flip) +
                           wb * std::norm(e.c_stay));
        rho.rho23 += pn * (wa * nn * z.c_single_a * std::conj(z.c_single_b) +
                           wb * (nn + 1.0) * e.c_single_a * std::conj(e.c_single_b));
        coherence += pn * z.c_stay * std::conj(e.c_stay);
    }
    const std::complex<double> phase =
        std::exp(std::complex<double>(0.0, 4.0 * params.g_bath * t));
    rho.rho14 = ab * coherence * phase;
    return rho;
}

namespace {

void require_density_matrix(const Eigen::Matrix4cd& rho, double tol) {
    const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    const double trace_err = std::abs(rho.trace().real() - 1.0) + std::abs(rho.trace().imag());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(0.5 * (rho + rho.adjoint()),
                                                       Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (herm > tol || trace_err > tol || min_eig < -tol) {
        std::ostringstream msg;
        msg << "NotADensityMatrix: hermiticity " << herm << ", trace error " << trace_err
            << ", min eigenvalue " << min_eig;
        throw NumericalFailure(msg.str());
    }
}

} // namespace

double concurrence_xstate(const XStateDensity& rho) {
    const double pattern_gap =
        std::max(std::abs(rho.rho22 - rho.rho33), std::abs(rho.rho23 - rho.rho22));
    if (pattern_gap > 1e-9) {
        std::ostringstream msg;
        msg << "X-state special case needs rho22 = rho33 = rho23 (gap " << pattern_gap << ")";
        throw FallbackToGeneric(msg.str());
    }
    const double root = std::sqrt(std::max(0.0, rho.rho11 * rho.rho44));
    std::array<double, 4> l = {root + std::abs(rho.rho14), root - std::abs(rho.rho14),
                               2.0 * rho.rho22, 0.0};
    std::sort(l.begin(), l.end(), std::greater<double>());
    return std::max(l[0] - l[1] - l[2] - l[3], 0.0);
}

double concurrence_generic(const Eigen::Matrix4cd& rho) {
    require_density_matrix(rho, 1e-8);

    Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
    // sigma_y ⊗ sigma_y is the anti-diagonal (-1, 1, 1, -1).
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;

    // The square roots of the eigenvalues of rho yy rho* yy equal the
    // singular values of tau = Phi^T yy Phi for any factorization
    // rho = Phi Phi^dag. Going through tau keeps the near-zero roots at
    // machine accuracy; taking square roots of eigenvalues of the product
    // would amplify their error to ~1e-8.
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(0.5 * (rho + rho.adjoint()));
    if (es.info() != Eigen::Success) throw NumericalFailure("concurrence eigensolver failed");
    Eigen::Matrix4cd factor = es.eigenvectors();
    for (int i = 0; i < 4; ++i) {
        factor.col(i) *= std::sqrt(std::max(0.0, es.eigenvalues()(i)));
    }
    const Eigen::Matrix4cd tau = factor.transpose() * yy * factor;
    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(tau);
    const auto& l = svd.singularValues(); // sorted decreasing
    return std::max(l(0) - l(1) - l(2) - l(3), 0.0);
}

std::string method_name(Method m) {
    switch (m) {
        case Method::ClosedForm: return "closed_form";
        case Method::Ode: return "ode";
        case Method::Oracle: return "oracle";
    }
    return "unknown";
}

std::vector<std::pair<double, double>> detect_esd(const ConcurrenceSeries& series,
                                                  double threshold) {
    if (threshold < 0.0) throw ConfigError("detect_esd: threshold must be >= 0");
    const auto& t = series.times;
    const auto& c = series.values;
    std::vector<std::pair<double, double>> intervals;
    if (t.empty()) return intervals;

    auto crossing = [&](std::size_t i) {
        // Threshold crossing between samples i-1 and i.
        const double dc = c[i] - c[i - 1];
        if (dc == 0.0) return t[i];
        return t[i - 1] + (threshold - c[i - 1]) * (t[i] - t[i - 1]) / dc;
    };

    bool inside = c[0] <= threshold;
    double entry = inside ? t[0] : 0.0;
    for (std::size_t i = 1; i < t.size(); ++i) {
        const bool below = c[i] <= threshold;
        if (!inside && below) {
            inside = true;
            entry = crossing(i);
        } else if (inside && !below) {
            intervals.emplace_back(entry, crossing(i));
            inside = false;
        }
    }
    if (inside) intervals.emplace_back(entry, t.back());
    return intervals;
}

} // namespace xxzbath

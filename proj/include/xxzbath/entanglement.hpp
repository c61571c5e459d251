#ifndef XXZBATH_ENTANGLEMENT_HPP
#define XXZBATH_ENTANGLEMENT_HPP

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "xxzbath/coefficients.hpp"
#include "xxzbath/model.hpp"

namespace xxzbath {

/// Reduced two-qubit density matrix in X form (basis |00>, |01>, |10>, |11>;
/// the only nonzero elements sit on the diagonal and the anti-diagonal).
/// rho32 is conj(rho23) implicitly.
struct XStateDensity {
    double rho11 = 0.0;
    double rho22 = 0.0;
    double rho33 = 0.0;
    double rho44 = 0.0;
    std::complex<double> rho14{0.0, 0.0};
    std::complex<double> rho23{0.0, 0.0};
    double time = 0.0;

    Eigen::Matrix4cd matrix() const;
};

/// X-form classification of a general 4x4 matrix: the X elements plus the
/// largest off-pattern magnitude (NotXForm is advisory, never fatal).
struct XStateClassification {
    XStateDensity state;
    double off_pattern_max = 0.0;
    bool x_form = true; // off_pattern_max <= tolerance
};

XStateClassification classify_xstate(const Eigen::Matrix4cd& rho, double time,
                                     double tolerance = 1e-10);

/// Reduced density matrix from per-occupation branch coefficients and
/// thermal weights. Both coefficient spans must cover n = 0..dist.cutoff at
/// the same time t (CoverageGap otherwise). The |00><11| coherence carries
/// the explicit e^{4 i g t} phase of the stripped-frame bookkeeping; the
/// stay-amplitude weight in rho44 is 1, the value the exact propagator
/// confirms.
XStateDensity assemble_density(const std::vector<BranchCoefficients>& coeffs11,
                               const std::vector<BranchCoefficients>& coeffs00,
                               const InitialQubitState& init, const ThermalDistribution& dist,
                               const ModelParams& params, double t);

/// Special-case concurrence for X states with rho22 = rho33 = rho23 (real):
/// the analytic square-root eigenvalue list {sqrt(rho11 rho44) +- |rho14|,
/// 2 rho22, 0}, sorted descending, largest minus the rest, floored at 0.
/// Wherever the first family dominates this reduces to
/// max{2(|rho14| - rho22), 0}. Throws FallbackToGeneric when the
/// rho22 = rho33 = rho23 pattern does not hold within 1e-9.
double concurrence_xstate(const XStateDensity& rho);

/// Wootters concurrence of an arbitrary two-qubit density matrix: square
/// roots of the eigenvalues of rho (sy ⊗ sy) rho* (sy ⊗ sy) in decreasing
/// order, C = max{l1 - l2 - l3 - l4, 0}. Throws NumericalFailure
/// ("NotADensityMatrix") if rho is not Hermitian/unit-trace/PSD within 1e-8.
double concurrence_generic(const Eigen::Matrix4cd& rho);

enum class Method { ClosedForm, Ode, Oracle };

std::string method_name(Method m);

/// Concurrence over a time grid with provenance.
struct ConcurrenceSeries {
    std::vector<double> times;
    std::vector<double> values;
    Method method = Method::Ode;
    std::string params_digest;
};

/// Maximal closed intervals where the series stays <= threshold, with
/// entry/exit times placed by linear interpolation between samples.
std::vector<std::pair<double, double>> detect_esd(const ConcurrenceSeries& series,
                                                  double threshold = 1e-6);

} // namespace xxzbath

#endif

#include "xxzbath/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "xxzbath/errors.hpp"

namespace xxzbath {

std::vector<ValidationIssue> validate(const ModelParams& params) {
    std::vector<ValidationIssue> issues;
    if (!(params.temperature > 0.0)) {
        issues.push_back({ValidationIssue::Severity::Error, "NonPositiveTemperature",
                          "temperature must be > 0 for the thermal weights to exist"});
    }
    if (!(params.g_bath > 0.0)) {
        issues.push_back({ValidationIssue::Severity::Error, "NonPositiveBathCoupling",
                          "g_bath must be > 0 for the geometric thermal weights to converge"});
    }
    if (params.gamma_z < 0.0 || params.omega < 0.0) {
        issues.push_back({ValidationIssue::Severity::Warning, "FerromagneticRegime",
                          "gamma_z < 0 or omega < 0 leaves the antiferromagnetic regime "
                          "the reference scenarios assume"});
    }
    return issues;
}

void throw_if_invalid(const ModelParams& params) {
    std::ostringstream msg;
    bool bad = false;
    for (const auto& issue : validate(params)) {
        if (issue.severity == ValidationIssue::Severity::Error) {
            if (bad) msg << "; ";
            msg << issue.code << ": " << issue.message;
            bad = true;
        }
    }
    if (bad) throw ConfigError(msg.str());
}

bool is_resonant(const ModelParams& params) {
    const double gap = params.mu0;
    const double mode = 2.0 * params.g_bath;
    return std::abs(gap - mode) <= 1e-12 * std::max(std::abs(gap), std::abs(mode));
}

InitialQubitState::InitialQubitState(std::complex<double> a, std::complex<double> b)
    : alpha(a), beta(b) {
    const double norm2 = std::norm(alpha) + std::norm(beta);
    if (std::abs(norm2 - 1.0) > 1e-12) {
        std::ostringstream msg;
        msg << "initial state must be normalized: |alpha|^2 + |beta|^2 = " << norm2;
        throw ConfigError(msg.str());
    }
}

InitialQubitState InitialQubitState::normalized(std::complex<double> a, std::complex<double> b) {
    const double norm = std::sqrt(std::norm(a) + std::norm(b));
    if (norm == 0.0) throw ConfigError("initial state amplitudes are both zero");
    return InitialQubitState(a / norm, b / norm);
}

ThermalDistribution thermal_weights(double g_bath, double temperature, double tail_epsilon) {
    if (!(g_bath > 0.0)) throw ConfigError("NonPositiveBathCoupling: g_bath must be > 0");
    if (!(temperature > 0.0)) throw ConfigError("NonPositiveTemperature: temperature must be > 0");
    if (!(tail_epsilon > 0.0 && tail_epsilon < 1.0)) {
        throw ConfigError("tail_epsilon must lie in (0, 1)");
    }

    const double q = std::exp(-2.0 * g_bath / temperature);

    // Smallest N_max with q^(N_max+1) <= tail_epsilon. Work in logs so very
    // high temperatures cannot overflow the power, then patch up rounding on
    // the boundary in both directions.
    int n_max = 0;
    if (q > 0.0) {
        n_max = std::max(0, static_cast<int>(std::ceil(std::log(tail_epsilon) / std::log(q))) - 1);
        while (std::pow(q, n_max + 1.0) > tail_epsilon) ++n_max;
        while (n_max > 0 && std::pow(q, static_cast<double>(n_max)) <= tail_epsilon) --n_max;
    }

    ThermalDistribution dist;
    dist.cutoff = n_max;
    dist.tail_epsilon = tail_epsilon;
    dist.ratio = q;
    dist.weights.resize(static_cast<std::size_t>(n_max) + 1);
    double qn = 1.0;
    for (int n = 0; n <= n_max; ++n) {
        dist.weights[static_cast<std::size_t>(n)] = (1.0 - q) * qn;
        qn *= q;
    }
    return dist;
}

} // namespace xxzbath

#ifndef XXZBATH_LEGACY_FORMS_HPP
#define XXZBATH_LEGACY_FORMS_HPP

#include <string>
#include <vector>

#include "xxzbath/coefficients.hpp"
#include "xxzbath/model.hpp"

namespace xxzbath {

// An earlier printed variant of the analytic branch solutions, kept verbatim
// for comparison output only. It is NOT used for physical results: the
// ZeroZero stay amplitude evaluates to 2 instead of 1 at t = 0, n = 0, the
// single-flip amplitudes carry one power of g0 too many, and both branches
// reuse the Eleven-sector frequency argument (3 + 2n). The comparison report
// quantifies each defect against the exact propagator.

/// Verbatim legacy branch-Eleven coefficients.
BranchCoefficients legacy_branch11(const ModelParams& params, int n, double t);

/// Verbatim legacy branch-ZeroZero coefficients.
BranchCoefficients legacy_branch00(const ModelParams& params, int n, double t);

struct LegacyComparisonRow {
    int n = 0;
    double time = 0.0;
    double stay_legacy = 0.0;  // |stay| from the legacy forms
    double stay_exact = 0.0;   // |stay| from the exact propagator
    double max_abs_gap = 0.0;  // max over the four slots of |legacy - exact|
};

struct LegacyComparisonReport {
    std::vector<LegacyComparisonRow> rows11;
    std::vector<LegacyComparisonRow> rows00;
    double zero_time_stay00_n0 = 0.0; // legacy ZeroZero stay at t = 0, n = 0 (defect: 2, not 1)
    std::string text;                 // human-readable summary
};

/// Evaluates the legacy forms against the exact propagator on a time grid
/// for occupations n = 0..n_max. Requires the closed-form domain (d_z = 0,
/// resonance).
LegacyComparisonReport legacy_comparison_report(const ModelParams& params, int n_max,
                                                const std::vector<double>& times);

} // namespace xxzbath

#endif

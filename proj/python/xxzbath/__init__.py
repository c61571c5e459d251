"""Concurrence dynamics of a two-qubit XXZ+DM chain in a single-mode thermal bath.

The heavy lifting lives in the compiled extension; this package re-exports
its surface. Typical use:

    import xxzbath as xb

    cfg = xb.figure_preset("fig2")
    cfg.steps = 201
    result = xb.run_scenario(cfg)
    print(result.summary)
"""

from ._core import (
    Branch,
    BranchCoefficients,
    ConcurrenceSeries,
    ConfigError,
    Diagnostics,
    EigenFrequencies,
    FallbackToGeneric,
    InitialQubitState,
    Method,
    MethodChoice,
    MethodRun,
    ModelParams,
    NumericalFailure,
    OraclePropagator,
    PointResult,
    RunResult,
    ScenarioConfig,
    SweepSpec,
    ThermalDistribution,
    TruncatedSpace,
    XStateDensity,
    assemble_density,
    build_hamiltonian,
    closed_form_branch00,
    closed_form_branch11,
    compute_series,
    concurrence_generic,
    concurrence_xstate,
    config_from_json_text,
    config_to_json_text,
    detect_esd,
    eigenfrequencies,
    figure_preset,
    figure_preset_ids,
    integrate_branch,
    is_resonant,
    legacy_comparison_report,
    reduced_density_oracle,
    run_scenario,
    sector_norm,
    sweep_chi,
    thermal_weights,
    time_grid,
    validate,
)

__all__ = [
    "Branch",
    "BranchCoefficients",
    "ConcurrenceSeries",
    "ConfigError",
    "Diagnostics",
    "EigenFrequencies",
    "FallbackToGeneric",
    "InitialQubitState",
    "Method",
    "MethodChoice",
    "MethodRun",
    "ModelParams",
    "NumericalFailure",
    "OraclePropagator",
    "PointResult",
    "RunResult",
    "ScenarioConfig",
    "SweepSpec",
    "ThermalDistribution",
    "TruncatedSpace",
    "XStateDensity",
    "assemble_density",
    "build_hamiltonian",
    "closed_form_branch00",
    "closed_form_branch11",
    "compute_series",
    "concurrence_generic",
    "concurrence_xstate",
    "config_from_json_text",
    "config_to_json_text",
    "detect_esd",
    "eigenfrequencies",
    "figure_preset",
    "figure_preset_ids",
    "integrate_branch",
    "is_resonant",
    "legacy_comparison_report",
    "reduced_density_oracle",
    "run_scenario",
    "sector_norm",
    "sweep_chi",
    "thermal_weights",
    "time_grid",
    "validate",
]

__version__ = "0.1.0"

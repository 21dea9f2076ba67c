"""Weak-measurement phase amplification in a polarization interferometer.

A small rotation offset ``epsilon`` from the balanced splitting angle turns
a tiny optical phase ``phi`` into a large fringe phase ``phi/(2 epsilon)``
on the few photons that survive post-selection.  This package simulates the
optical chain with Jones calculus (``jones``, ``apparatus``), quantifies
when the trade pays off against systematic pattern errors (``metrology``),
and recovers phases from fringe scans the way the experiment does
(``fitting``).
"""

from .apparatus import (
    AmplifierConfig,
    AmplifierOutcome,
    StandardWVOutcome,
    closed_form_amplified_phase,
    compare_schemes,
    derive_seed,
    prepare_input,
    run_amplifier,
    run_standard_wv,
    scan_pattern,
)
from .fitting import (
    DegenerateGridError,
    FitResult,
    ScanPattern,
    extract_amplified_phase,
    fit_sinusoid,
    phase_between,
    wrap_angle,
)
from .jones import (
    IDEAL,
    InvalidParameterError,
    OpticalElement,
    PolarizationState,
    Projector,
    UndefinedPhaseError,
    apply,
    compose,
    detection_probability,
    make_attenuator,
    make_half_wave,
    make_polarizer,
    make_quarter_wave,
    make_retarder,
    make_rotation,
    normalize,
    phase_projector,
    relative_phase,
)
from .metrology import (
    DivergenceError,
    ErrorModel,
    SqlComparison,
    UncertaintyReport,
    UncertaintyScenario,
    analytic_uncertainty,
    analytic_uncertainty_at_phase,
    analytic_uncertainty_full,
    detection_prob,
    effective_sample_size,
    mc_uncertainty,
    minimum_measurable_phase,
    sql_comparison,
)

__version__ = "0.1.0"

__all__ = [
    "AmplifierConfig",
    "AmplifierOutcome",
    "StandardWVOutcome",
    "closed_form_amplified_phase",
    "compare_schemes",
    "derive_seed",
    "prepare_input",
    "run_amplifier",
    "run_standard_wv",
    "scan_pattern",
    "DegenerateGridError",
    "FitResult",
    "ScanPattern",
    "extract_amplified_phase",
    "fit_sinusoid",
    "phase_between",
    "wrap_angle",
    "IDEAL",
    "InvalidParameterError",
    "OpticalElement",
    "PolarizationState",
    "Projector",
    "UndefinedPhaseError",
    "apply",
    "compose",
    "detection_probability",
    "make_attenuator",
    "make_half_wave",
    "make_polarizer",
    "make_quarter_wave",
    "make_retarder",
    "make_rotation",
    "normalize",
    "phase_projector",
    "relative_phase",
    "DivergenceError",
    "ErrorModel",
    "SqlComparison",
    "UncertaintyReport",
    "UncertaintyScenario",
    "analytic_uncertainty",
    "analytic_uncertainty_at_phase",
    "analytic_uncertainty_full",
    "detection_prob",
    "effective_sample_size",
    "mc_uncertainty",
    "minimum_measurable_phase",
    "sql_comparison",
    "__version__",
]

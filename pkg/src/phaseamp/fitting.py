"""Sinusoidal fringe fitting and phase differencing.

Patterns are fit to value = c0 + c1 cos(beta) + c2 sin(beta) by linear least
squares (the fringe frequency is known), so phase = atan2(c2, c1) needs no
starting guess and cannot stall in a local minimum.  Phases are compared
modulo 2*pi via ``phase_between``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .jones import InvalidParameterError

__all__ = [
    "DegenerateGridError",
    "ScanPattern",
    "FitResult",
    "fit_sinusoid",
    "phase_between",
    "wrap_angle",
    "extract_amplified_phase",
]

_MAX_CONDITION = 1e8


class DegenerateGridError(ValueError):
    """The detection-phase grid cannot support a three-parameter fringe fit."""


@dataclass(frozen=True, eq=False)
class ScanPattern:
    """Fringe samples over a detection-phase grid.

    ``value`` holds probabilities (mode "exact") or photon counts (mode
    "counts", with ``shots_per_point`` set).
    """

    beta: np.ndarray
    value: np.ndarray
    mode: str = "exact"
    shots_per_point: int | None = None

    def __post_init__(self):
        beta = np.array(self.beta, dtype=float)
        value = np.array(self.value, dtype=float)
        if beta.ndim != 1 or value.shape != beta.shape or beta.size == 0:
            raise InvalidParameterError("beta and value must be equal-length 1-D arrays")
        if not (np.all(np.isfinite(beta)) and np.all(np.isfinite(value))):
            raise InvalidParameterError("beta and value must be finite")
        if self.mode == "exact":
            if self.shots_per_point is not None:
                raise InvalidParameterError("exact patterns take no shots_per_point")
            if np.any(value < -1e-12) or np.any(value > 1.0 + 1e-12):
                raise InvalidParameterError("exact pattern values must be probabilities in [0, 1]")
        elif self.mode == "counts":
            if self.shots_per_point is None or int(self.shots_per_point) < 1:
                raise InvalidParameterError("counts patterns require shots_per_point >= 1")
            object.__setattr__(self, "shots_per_point", int(self.shots_per_point))
            if np.any(value != np.round(value)) or np.any(value < 0) or np.any(
                value > self.shots_per_point
            ):
                raise InvalidParameterError(
                    "counts must be integers in [0, shots_per_point]"
                )
        else:
            raise InvalidParameterError(f"mode must be 'exact' or 'counts', got {self.mode!r}")
        beta.setflags(write=False)
        value.setflags(write=False)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "value", value)

    @property
    def n_points(self) -> int:
        return self.beta.size

    def probabilities(self) -> np.ndarray:
        """Per-point fringe probabilities (counts are divided by shots)."""
        if self.mode == "exact":
            return self.value
        return self.value / self.shots_per_point


@dataclass(frozen=True, eq=False)
class FitResult:
    """Fringe-fit parameters with their covariance.

    ``covariance`` is the 3x3 matrix over (offset, cos, sin) coefficients,
    residual variance times the inverted normal matrix; it is zero when the
    fit has no residual degrees of freedom.  ``phase_std`` and
    ``visibility_std`` propagate it through the derived quantities.
    """

    offset: float
    amplitude: float
    phase: float
    visibility: float
    residual_rms: float
    covariance: np.ndarray

    def __post_init__(self):
        cov = np.array(self.covariance, dtype=float)
        cov.setflags(write=False)
        object.__setattr__(self, "covariance", cov)

    def _coefficients(self) -> tuple[float, float, float]:
        return (
            self.offset,
            self.amplitude * math.cos(self.phase),
            self.amplitude * math.sin(self.phase),
        )

    @property
    def phase_std(self) -> float:
        _, c1, c2 = self._coefficients()
        r_sq = c1 * c1 + c2 * c2
        if r_sq == 0.0:
            return math.inf
        g = np.array([0.0, -c2 / r_sq, c1 / r_sq])
        return math.sqrt(max(float(g @ self.covariance @ g), 0.0))

    @property
    def visibility_std(self) -> float:
        c0, c1, c2 = self._coefficients()
        r = math.hypot(c1, c2)
        if r == 0.0 or c0 == 0.0:
            return math.inf
        g = np.array([-r / (c0 * c0), c1 / (r * c0), c2 / (r * c0)])
        return math.sqrt(max(float(g @ self.covariance @ g), 0.0))


def fit_sinusoid(pattern: ScanPattern, weighted: bool = False) -> FitResult:
    """Least-squares fringe fit.

    With ``weighted=True`` (counts patterns only) points are weighted by
    inverse binomial variance, and the covariance is the weighted normal
    matrix inverse scaled by reduced chi-square.

    Raises ``DegenerateGridError`` when the grid has fewer than three
    distinct detection phases, spans no more than pi, or is otherwise too
    ill-conditioned to fit.
    """
    distinct = np.unique(pattern.beta)
    if distinct.size < 3:
        raise DegenerateGridError(
            f"fringe fit needs >= 3 distinct detection phases, got {distinct.size}"
        )
    if distinct.max() - distinct.min() <= math.pi:
        raise DegenerateGridError(
            "fringe fit needs a detection-phase span greater than pi"
        )

    beta = pattern.beta
    y = pattern.probabilities()
    design = np.column_stack([np.ones_like(beta), np.cos(beta), np.sin(beta)])

    if weighted:
        if pattern.mode != "counts":
            raise InvalidParameterError("weighted fit requires a counts pattern")
        shots = pattern.shots_per_point
        p_hat = np.clip(y, 1.0 / shots, 1.0 - 1.0 / shots)
        weights = shots / (p_hat * (1.0 - p_hat))
        scaled = np.sqrt(weights)
        design_w = design * scaled[:, None]
        y_w = y * scaled
    else:
        design_w = design
        y_w = y

    cond = np.linalg.cond(design_w)
    if not math.isfinite(cond) or cond > _MAX_CONDITION:
        raise DegenerateGridError(f"detection-phase grid is ill-conditioned (cond = {cond:.3g})")

    normal = design_w.T @ design_w
    factor = cho_factor(normal)
    coef = cho_solve(factor, design_w.T @ y_w)
    inv_normal = cho_solve(factor, np.eye(3))

    residuals = y - design @ coef
    dof = pattern.n_points - 3
    if dof > 0:
        if weighted:
            scale = float(weights @ (residuals * residuals)) / dof
        else:
            scale = float(residuals @ residuals) / dof
    else:
        scale = 0.0
    covariance = scale * inv_normal

    c0, c1, c2 = (float(v) for v in coef)
    amplitude = math.hypot(c1, c2)
    phase = math.atan2(c2, c1)
    visibility = amplitude / c0 if c0 != 0.0 else math.inf
    residual_rms = math.sqrt(float(residuals @ residuals) / pattern.n_points)
    return FitResult(
        offset=c0,
        amplitude=amplitude,
        phase=phase,
        visibility=visibility,
        residual_rms=residual_rms,
        covariance=covariance,
    )


def wrap_angle(angle: float) -> float:
    """Wrap to the principal interval (-pi, pi]."""
    wrapped = math.remainder(float(angle), 2.0 * math.pi)
    if wrapped <= -math.pi:
        wrapped += 2.0 * math.pi
    return wrapped


def phase_between(a: FitResult, b: FitResult) -> float:
    """Fitted phase of ``a`` minus that of ``b``, wrapped to (-pi, pi]."""
    return wrap_angle(a.phase - b.phase)


def extract_amplified_phase(
    config,
    beta_grid,
    shots_per_point: int | None = None,
    rng_seed: int | None = None,
    visibility: float = 1.0,
) -> float:
    """Amplified phase measured the way the experiment measures it.

    Scans the fringe twice — once at the configured signal phase, once with
    the signal turned off — fits both patterns, and returns the fitted phase
    difference.  Sampling (if any) uses independent child streams for the
    two patterns.
    """
    from . import apparatus

    reference_config = replace(config, phi=0.0)
    if shots_per_point is None:
        seed_signal = seed_reference = None
    else:
        if rng_seed is None:
            raise InvalidParameterError("rng_seed is required when sampling counts")
        seed_signal = apparatus.derive_seed(rng_seed, 0)
        seed_reference = apparatus.derive_seed(rng_seed, 1)

    signal = apparatus.scan_pattern(
        config, beta_grid, shots_per_point, seed_signal, visibility
    )
    reference = apparatus.scan_pattern(
        reference_config, beta_grid, shots_per_point, seed_reference, visibility
    )
    return phase_between(fit_sinusoid(signal), fit_sinusoid(reference))

"""Jones-calculus building blocks: polarization states, optical elements,
projective detection, and relative-phase extraction.

Conventions used throughout: states are complex amplitude pairs over the
{H, V} basis; a retarder is diag(1, e^{i*delta}), so positive delta advances
the V component; a rotation by alpha is [[cos a, sin a], [-sin a, cos a]].
States are never renormalized implicitly — post-selection losses show up as
a squared norm below one.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "IDEAL",
    "InvalidParameterError",
    "UndefinedPhaseError",
    "PolarizationState",
    "OpticalElement",
    "Projector",
    "make_rotation",
    "make_retarder",
    "make_half_wave",
    "make_quarter_wave",
    "make_polarizer",
    "make_attenuator",
    "compose",
    "apply",
    "normalize",
    "relative_phase",
    "phase_projector",
    "detection_probability",
]

IDEAL = math.inf
"""Extinction-ratio sentinel for a perfect polarizer (zero leakage)."""

# Amplitudes at or below this magnitude are treated as numerically zero.
_AMPLITUDE_FLOOR = 1e-300


class InvalidParameterError(ValueError):
    """An operation received an argument outside its allowed range."""


class UndefinedPhaseError(ValueError):
    """Relative phase was requested for a state with a vanishing component."""


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise InvalidParameterError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class PolarizationState:
    """Complex amplitudes over {H, V}.

    May be sub-normalized: lossy elements (polarizers, attenuators) shrink the
    squared norm, and the lost norm is exactly the post-selection failure
    probability.
    """

    amp_h: complex
    amp_v: complex

    def __post_init__(self):
        object.__setattr__(self, "amp_h", complex(self.amp_h))
        object.__setattr__(self, "amp_v", complex(self.amp_v))

    @property
    def norm_sq(self) -> float:
        """Squared norm |amp_h|^2 + |amp_v|^2 (detection probability of the state)."""
        return abs(self.amp_h) ** 2 + abs(self.amp_v) ** 2

    def normalized(self) -> "PolarizationState":
        return normalize(self)

    def as_array(self) -> np.ndarray:
        return np.array([self.amp_h, self.amp_v], dtype=complex)


@dataclass(frozen=True, eq=False)
class OpticalElement:
    """A 2x2 complex Jones operator plus a record of how it was built."""

    matrix: np.ndarray
    kind: str = "custom"
    params: dict | None = None

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (2, 2):
            raise InvalidParameterError(f"element matrix must be 2x2, got shape {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "params", dict(self.params or {}))


@dataclass(frozen=True)
class Projector:
    """Projective detection onto a normalized target state."""

    target: PolarizationState

    def __post_init__(self):
        if abs(self.target.norm_sq - 1.0) > 1e-12:
            raise InvalidParameterError(
                "projector target must be normalized (|norm^2 - 1| <= 1e-12), "
                f"got norm^2 = {self.target.norm_sq!r}"
            )


def _frame_rotation(angle: float) -> np.ndarray:
    # Rotates an element's own frame into lab coordinates: R(a) M R(-a).
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s], [s, c]], dtype=complex)


def make_rotation(alpha: float) -> OpticalElement:
    """Polarization rotation by alpha: [[cos a, sin a], [-sin a, cos a]]."""
    alpha = _require_finite("alpha", alpha)
    c, s = math.cos(alpha), math.sin(alpha)
    return OpticalElement(
        np.array([[c, s], [-s, c]], dtype=complex), "rotation", {"alpha": alpha}
    )


def make_retarder(delta: float) -> OpticalElement:
    """Wave plate with fast axis along H: diag(1, e^{i*delta})."""
    delta = _require_finite("delta", delta)
    return OpticalElement(
        np.array([[1.0, 0.0], [0.0, cmath.exp(1j * delta)]], dtype=complex),
        "retarder",
        {"delta": delta},
    )


def make_half_wave(theta: float) -> OpticalElement:
    """Half-wave plate with fast axis at angle theta from H."""
    theta = _require_finite("theta", theta)
    r = _frame_rotation(theta)
    m = r @ np.diag([1.0, -1.0]).astype(complex) @ r.T
    return OpticalElement(m, "half_wave", {"theta": theta})


def make_quarter_wave(theta: float) -> OpticalElement:
    """Quarter-wave plate with fast axis at angle theta from H."""
    theta = _require_finite("theta", theta)
    r = _frame_rotation(theta)
    m = r @ np.diag([1.0, 1j]) @ r.T
    return OpticalElement(m, "quarter_wave", {"theta": theta})


def make_polarizer(axis_angle: float, extinction_ratio: float = IDEAL) -> OpticalElement:
    """Linear polarizer with its pass axis at ``axis_angle`` from H.

    ``extinction_ratio`` is the intensity ratio between the pass and block
    axes; the blocked amplitude is scaled by 1/sqrt(extinction_ratio).  The
    default ``IDEAL`` (infinity) blocks completely.
    """
    axis_angle = _require_finite("axis_angle", axis_angle)
    e = float(extinction_ratio)
    if math.isnan(e) or e < 1.0:
        raise InvalidParameterError(
            f"extinction_ratio must be >= 1 (or IDEAL), got {extinction_ratio!r}"
        )
    leak = 0.0 if math.isinf(e) else 1.0 / math.sqrt(e)
    r = _frame_rotation(axis_angle)
    m = r @ np.diag([1.0, leak]).astype(complex) @ r.T
    return OpticalElement(
        m, "polarizer", {"axis_angle": axis_angle, "extinction_ratio": e}
    )


def make_attenuator(t_h: float, t_v: float) -> OpticalElement:
    """Polarization-dependent amplitude attenuator diag(t_h, t_v), 0 <= t <= 1."""
    t_h = _require_finite("t_h", t_h)
    t_v = _require_finite("t_v", t_v)
    if not (0.0 <= t_h <= 1.0 and 0.0 <= t_v <= 1.0):
        raise InvalidParameterError(
            f"attenuator transmissions must lie in [0, 1], got ({t_h!r}, {t_v!r})"
        )
    return OpticalElement(
        np.diag([t_h, t_v]).astype(complex), "attenuator", {"t_h": t_h, "t_v": t_v}
    )


def compose(*elements: OpticalElement) -> OpticalElement:
    """Combine elements into one; ``compose(a, b)`` applies ``b`` first."""
    if not elements:
        raise InvalidParameterError("compose requires at least one element")
    m = elements[0].matrix
    for elem in elements[1:]:
        m = m @ elem.matrix
    return OpticalElement(m, "custom", {})


def apply(element: OpticalElement, state: PolarizationState) -> PolarizationState:
    """Apply an element's matrix to a state.  No renormalization."""
    out = element.matrix @ state.as_array()
    return PolarizationState(out[0], out[1])


def normalize(state: PolarizationState) -> PolarizationState:
    """Rescale to unit norm; raises if the state is numerically zero."""
    n = math.sqrt(state.norm_sq)
    if n < _AMPLITUDE_FLOOR:
        raise InvalidParameterError("cannot normalize a state with zero norm")
    return PolarizationState(state.amp_h / n, state.amp_v / n)


def relative_phase(state: PolarizationState) -> float:
    """Phase of amp_v relative to amp_h, in (-pi, pi].

    Invariant under global rescaling.  Raises ``UndefinedPhaseError`` when
    either amplitude is numerically zero.
    """
    if abs(state.amp_h) <= _AMPLITUDE_FLOOR or abs(state.amp_v) <= _AMPLITUDE_FLOOR:
        raise UndefinedPhaseError(
            "relative phase undefined: a polarization component is numerically zero"
        )
    p = cmath.phase(state.amp_v / state.amp_h)
    if p <= -math.pi:
        p += 2.0 * math.pi
    return p


def phase_projector(beta: float) -> Projector:
    """Detection projector onto (|H> + e^{i*beta} |V>)/sqrt(2)."""
    beta = _require_finite("beta", beta)
    inv = 1.0 / math.sqrt(2.0)
    return Projector(PolarizationState(inv, cmath.exp(1j * beta) * inv))


def detection_probability(state: PolarizationState, projector: Projector) -> float:
    """Born-rule probability |<target|state>|^2."""
    t = projector.target
    amp = t.amp_h.conjugate() * state.amp_h + t.amp_v.conjugate() * state.amp_v
    return abs(amp) ** 2

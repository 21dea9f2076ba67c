"""Interferometer pipelines for weak-measurement phase amplification.

Two simulated setups:

* ``run_amplifier`` — a polarization Sagnac interferometer where the two
  counter-propagating paths are labeled by H/V polarization.  A small
  rotation offset ``epsilon`` from 45 degrees followed by intensity
  balancing turns a tiny optical phase ``phi`` into a large relative phase
  ``phi' = atan2(sin phi, sin 2*epsilon * cos phi)``, at the cost of a
  post-selection success probability of about ``2*epsilon**2``.

* ``run_standard_wv`` — the textbook weak-value scheme with an explicit
  two-path meter, for head-to-head comparison.  Its success probability is
  about ``epsilon**2``, half that of the amplifier at the same output phase.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace

import numpy as np

from .fitting import ScanPattern
from .jones import (
    IDEAL,
    InvalidParameterError,
    PolarizationState,
    UndefinedPhaseError,
    apply,
    detection_probability,
    make_attenuator,
    make_polarizer,
    make_rotation,
    normalize,
    phase_projector,
    relative_phase,
)

__all__ = [
    "AmplifierConfig",
    "AmplifierOutcome",
    "StandardWVOutcome",
    "prepare_input",
    "closed_form_amplified_phase",
    "run_amplifier",
    "run_standard_wv",
    "compare_schemes",
    "scan_pattern",
    "derive_seed",
]

_BALANCE_MODES = ("exact-numeric", "analytic")


@dataclass(frozen=True)
class AmplifierConfig:
    """Parameters of one amplifier run.

    ``balance_mode`` selects how the bright component is attenuated down to
    the dim one before the phase readout: "exact-numeric" matches the two
    moduli exactly, "analytic" uses the small-angle transmission ``epsilon``.
    Polarizer extinction ratios are intensity ratios (>= 1, or ``IDEAL``).
    """

    phi: float
    epsilon: float
    polarizer_extinction_transmitted: float = IDEAL
    polarizer_extinction_reflected: float = IDEAL
    balance_mode: str = "exact-numeric"

    def __post_init__(self):
        phi = float(self.phi)
        eps = float(self.epsilon)
        if not math.isfinite(phi) or abs(phi) >= math.pi:
            raise InvalidParameterError(f"phi must satisfy |phi| < pi, got {self.phi!r}")
        if not math.isfinite(eps) or not 0.0 < eps < math.pi / 2:
            raise InvalidParameterError(
                f"epsilon must lie in (0, pi/2), got {self.epsilon!r}"
            )
        for name in ("polarizer_extinction_transmitted", "polarizer_extinction_reflected"):
            e = float(getattr(self, name))
            if math.isnan(e) or e < 1.0:
                raise InvalidParameterError(f"{name} must be >= 1 (or IDEAL), got {e!r}")
        if self.balance_mode not in _BALANCE_MODES:
            raise InvalidParameterError(
                f"balance_mode must be one of {_BALANCE_MODES}, got {self.balance_mode!r}"
            )
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "epsilon", eps)


@dataclass(frozen=True, eq=False)
class AmplifierOutcome:
    """Post-selected output state, its squared norm, and the amplified phase."""

    output_state: PolarizationState
    success_probability: float
    amplified_phase: float


@dataclass(frozen=True, eq=False)
class StandardWVOutcome:
    """Result of the standard weak-value scheme."""

    meter_relative_phase: float
    success_probability: float
    weak_value: float
    weak_value_approx: float


def prepare_input(phi: float) -> PolarizationState:
    """Balanced superposition with the signal phase on V: (|H> + e^{i*phi}|V>)/sqrt(2)."""
    phi = float(phi)
    if not math.isfinite(phi) or abs(phi) > math.pi:
        raise InvalidParameterError(f"phi must satisfy |phi| <= pi, got {phi!r}")
    inv = 1.0 / math.sqrt(2.0)
    return PolarizationState(inv, cmath.exp(1j * phi) * inv)


def closed_form_amplified_phase(phi: float, epsilon: float) -> float:
    """Amplified phase atan2(sin phi, sin(2 eps) cos phi), in (-pi, pi].

    For |phi| << epsilon << 1 this reduces to phi / (2 epsilon).
    """
    phi = float(phi)
    epsilon = float(epsilon)
    if not math.isfinite(phi):
        raise InvalidParameterError(f"phi must be finite, got {phi!r}")
    if not math.isfinite(epsilon) or epsilon == 0.0:
        raise InvalidParameterError(f"epsilon must be finite and nonzero, got {epsilon!r}")
    return math.atan2(math.sin(phi), math.sin(2.0 * epsilon) * math.cos(phi))


def run_amplifier(config: AmplifierConfig) -> AmplifierOutcome:
    """Run the full amplifier chain and read out the amplified phase.

    Chain: balanced input with phase ``phi`` on V -> rotation by
    ``pi/4 - epsilon`` -> polarizing splitter routing H to the transmitted
    arm and V to the reflected arm, each arm cleaned by a polarizer aligned
    with it -> recombination -> intensity balancing attenuator.  The squared
    norm of the surviving state is the post-selection success probability.
    """
    inp = prepare_input(config.phi)
    rotated = apply(make_rotation(math.pi / 4.0 - config.epsilon), inp)

    # The splitter is ideal: H goes whole into one arm, V into the other.
    arm_t = apply(
        make_polarizer(0.0, config.polarizer_extinction_transmitted),
        PolarizationState(rotated.amp_h, 0.0),
    )
    arm_r = apply(
        make_polarizer(math.pi / 2.0, config.polarizer_extinction_reflected),
        PolarizationState(0.0, rotated.amp_v),
    )
    merged = PolarizationState(arm_t.amp_h + arm_r.amp_h, arm_t.amp_v + arm_r.amp_v)

    if config.balance_mode == "analytic":
        t_h, t_v = config.epsilon, 1.0
    else:
        mag_h, mag_v = abs(merged.amp_h), abs(merged.amp_v)
        if mag_h <= 1e-300 or mag_v <= 1e-300:
            raise UndefinedPhaseError(
                "cannot balance: a polarization component vanished before readout"
            )
        if mag_h >= mag_v:
            t_h, t_v = mag_v / mag_h, 1.0
        else:
            t_h, t_v = 1.0, mag_h / mag_v

    out = apply(make_attenuator(t_h, t_v), merged)
    return AmplifierOutcome(out, out.norm_sq, relative_phase(out))


def run_standard_wv(phi: float, epsilon: float) -> StandardWVOutcome:
    """Standard weak-value amplification with an explicit two-path meter.

    The joint state lives on path (x) polarization: H picks up +phi/2 in path
    1 and V picks up -phi/2.  Post-selecting the polarization onto
    sin(pi/4+eps)|H> - cos(pi/4+eps)|V> leaves a two-component meter whose
    relative phase is the amplified readout, with weak value cot(epsilon).
    """
    phi = float(phi)
    epsilon = float(epsilon)
    if not math.isfinite(phi) or abs(phi) > math.pi:
        raise InvalidParameterError(f"phi must satisfy |phi| <= pi, got {phi!r}")
    if not math.isfinite(epsilon):
        raise InvalidParameterError(f"epsilon must be finite, got {epsilon!r}")
    if epsilon == 0.0:
        raise UndefinedPhaseError(
            "epsilon = 0 post-selects orthogonally to the mean polarization; "
            "the meter phase (and the weak value) is undefined"
        )

    # psi[path, pol]; both path and polarization start balanced.
    psi = 0.5 * np.array(
        [
            [1.0, 1.0],
            [cmath.exp(0.5j * phi), cmath.exp(-0.5j * phi)],
        ],
        dtype=complex,
    )
    post = np.array(
        [math.sin(math.pi / 4.0 + epsilon), -math.cos(math.pi / 4.0 + epsilon)],
        dtype=complex,
    )
    meter = psi @ post.conjugate()

    success = float(np.sum(np.abs(meter) ** 2))
    if abs(meter[0]) <= 1e-300 or abs(meter[1]) <= 1e-300:
        raise UndefinedPhaseError(
            "post-selection annihilated the meter; relative phase undefined"
        )
    meter_phase = cmath.phase(meter[1] / meter[0])
    if meter_phase <= -math.pi:
        meter_phase += 2.0 * math.pi

    system_in = np.array([1.0, 1.0], dtype=complex) / math.sqrt(2.0)
    sigma_z = np.diag([1.0, -1.0]).astype(complex)
    denom = post.conjugate() @ system_in
    weak_value = float(((post.conjugate() @ sigma_z @ system_in) / denom).real)

    return StandardWVOutcome(meter_phase, success, weak_value, 1.0 / epsilon)


def compare_schemes(phi: float, epsilon: float) -> float:
    """Success-probability ratio amplifier / standard weak-value scheme.

    Approaches 2 as phi -> 0: the amplifier keeps both post-selected
    components while the standard scheme keeps one.  Requires the weak
    regime |phi| / epsilon <= 0.05 where the two schemes read out the same
    amplified phase.
    """
    phi = float(phi)
    epsilon = float(epsilon)
    if not math.isfinite(epsilon) or epsilon <= 0.0:
        raise InvalidParameterError(f"epsilon must be positive, got {epsilon!r}")
    if not math.isfinite(phi) or abs(phi) > 0.05 * epsilon:
        raise InvalidParameterError(
            f"compare_schemes requires |phi|/epsilon <= 0.05, got phi={phi!r}, epsilon={epsilon!r}"
        )
    amp = run_amplifier(AmplifierConfig(phi=phi, epsilon=epsilon))
    std = run_standard_wv(phi, epsilon)
    return amp.success_probability / std.success_probability


def derive_seed(seed: int, index: int) -> int:
    """Child seed for stream ``index`` of a run seeded with ``seed``."""
    if seed < 0 or index < 0:
        raise InvalidParameterError("seed and index must be non-negative integers")
    return int(np.random.SeedSequence([int(seed), int(index)]).generate_state(1)[0])


def scan_pattern(
    config: AmplifierConfig,
    beta_grid,
    shots_per_point: int | None = None,
    rng_seed: int | None = None,
    visibility: float = 1.0,
) -> ScanPattern:
    """Interference pattern of the amplifier output over detection phases.

    The normalized output is projected onto (|H> + e^{i*beta}|V>)/sqrt(2) for
    each grid point, giving probabilities (1 + V cos(phi' - beta))/2 where V
    is the ``visibility`` knob modeling imperfect contrast.  With
    ``shots_per_point`` set, each point is replaced by a binomial photon
    count drawn from a child stream seeded by (rng_seed, point index), so a
    pattern is reproducible regardless of evaluation order.
    """
    beta = np.asarray(beta_grid, dtype=float)
    if beta.ndim != 1 or beta.size == 0 or not np.all(np.isfinite(beta)):
        raise InvalidParameterError("beta_grid must be a nonempty 1-D array of finite angles")
    visibility = float(visibility)
    if not 0.0 < visibility <= 1.0:
        raise InvalidParameterError(f"visibility must lie in (0, 1], got {visibility!r}")

    outcome = run_amplifier(config)
    state = normalize(outcome.output_state)
    probs = np.array(
        [
            0.5 + visibility * (detection_probability(state, phase_projector(b)) - 0.5)
            for b in beta
        ]
    )

    if shots_per_point is None:
        return ScanPattern(beta=beta, value=probs, mode="exact")

    shots = int(shots_per_point)
    if shots < 1:
        raise InvalidParameterError(f"shots_per_point must be >= 1, got {shots_per_point!r}")
    if rng_seed is None or int(rng_seed) < 0:
        raise InvalidParameterError("a non-negative rng_seed is required when sampling counts")
    counts = np.empty(beta.size, dtype=float)
    for i, p in enumerate(probs):
        rng = np.random.default_rng(np.random.SeedSequence([int(rng_seed), i]))
        counts[i] = rng.binomial(shots, min(max(p, 0.0), 1.0))
    return ScanPattern(beta=beta, value=counts, mode="counts", shots_per_point=shots)

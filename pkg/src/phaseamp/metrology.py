"""Phase-uncertainty analysis for interferometric measurement schemes.

Four detection scenarios share one statistical model: a fringe pattern
p = (1 + cos(theta)) / 2 is sampled with an effective number of detections
m, and the pattern phase theta carries a Gaussian systematic error of
standard deviation rho.  What differs between scenarios is how the pattern
phase relates to the physical phase phi and how many detections survive:

================  =================  ========================
scenario          pattern phase      effective detections
================  =================  ========================
single_qubit      phi                N
noon              n * phi            N / n
weak              phi / (2 eps)      2 eps^2 N
noon_weak         n phi / (2 eps)    2 eps^2 N / n
================  =================  ========================

Amplifying the pattern phase (weak schemes) divides the systematic error's
contribution to the recovered phi, which is how a lossy scheme can beat the
shot-noise limit of the full-flux measurement when rho dominates.

Closed-form sweet-spot uncertainties (pattern phase at pi/2):

* single_qubit:  sqrt(rho^2 + 1/N)
* noon:          sqrt(rho^2/n^2 + 1/(n N))
* weak:          2 sqrt(eps^2 rho^2 + 1/(2 N))
* noon_weak:     2 sqrt(eps^2 rho^2 / n^2 + 1/(2 n N))

``mc_uncertainty`` checks any of these against a direct Monte Carlo
simulation of the sampling process.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .jones import InvalidParameterError

__all__ = [
    "DivergenceError",
    "ErrorModel",
    "UncertaintyScenario",
    "UncertaintyReport",
    "SqlComparison",
    "detection_prob",
    "effective_sample_size",
    "analytic_uncertainty",
    "analytic_uncertainty_full",
    "analytic_uncertainty_at_phase",
    "minimum_measurable_phase",
    "mc_uncertainty",
    "sql_comparison",
]

_TAGS = ("single_qubit", "noon", "weak", "noon_weak")

# Effective sample sizes below this are too coarse for the binomial phase
# estimator to mean anything.
_MIN_EFFECTIVE_SAMPLES = 10


class DivergenceError(ValueError):
    """The general uncertainty expression diverges at this phase.

    Raised where sin(pattern phase) = 0; evaluate at the pattern sweet spot
    instead (``analytic_uncertainty``).
    """


@dataclass(frozen=True)
class ErrorModel:
    """Systematic pattern-phase error (std ``rho``, radians) and photon budget ``sample_size``."""

    rho: float
    sample_size: int

    def __post_init__(self):
        rho = float(self.rho)
        if not math.isfinite(rho) or rho < 0.0:
            raise InvalidParameterError(f"rho must be finite and >= 0, got {self.rho!r}")
        n = int(self.sample_size)
        if n < 1:
            raise InvalidParameterError(f"sample_size must be >= 1, got {self.sample_size!r}")
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "sample_size", n)
        if rho > 0.3:
            warnings.warn(
                f"rho = {rho} rad is far outside the small-error regime; "
                "closed-form uncertainties may be unreliable",
                stacklevel=3,
            )


@dataclass(frozen=True)
class UncertaintyScenario:
    """One measurement scheme: a tag plus its photon number / weak offset."""

    tag: str
    photon_number: int = 1
    epsilon: float | None = None

    def __post_init__(self):
        if self.tag not in _TAGS:
            raise InvalidParameterError(f"unknown scenario tag {self.tag!r}; expected one of {_TAGS}")
        n = int(self.photon_number)
        if n < 1:
            raise InvalidParameterError(f"photon_number must be >= 1, got {self.photon_number!r}")
        object.__setattr__(self, "photon_number", n)
        if self.tag in ("weak", "noon_weak"):
            if self.epsilon is None:
                raise InvalidParameterError(f"scenario {self.tag!r} requires epsilon")
            eps = float(self.epsilon)
            if not math.isfinite(eps) or not 0.0 < eps <= 0.5:
                raise InvalidParameterError(f"epsilon must lie in (0, 0.5], got {self.epsilon!r}")
            object.__setattr__(self, "epsilon", eps)
        else:
            if self.epsilon is not None:
                raise InvalidParameterError(f"scenario {self.tag!r} does not take epsilon")
        if self.tag in ("single_qubit", "weak") and n != 1:
            raise InvalidParameterError(f"scenario {self.tag!r} requires photon_number = 1")

    @classmethod
    def single_qubit(cls) -> "UncertaintyScenario":
        return cls("single_qubit")

    @classmethod
    def noon(cls, photon_number: int) -> "UncertaintyScenario":
        return cls("noon", photon_number=photon_number)

    @classmethod
    def weak(cls, epsilon: float) -> "UncertaintyScenario":
        return cls("weak", epsilon=epsilon)

    @classmethod
    def noon_weak(cls, photon_number: int, epsilon: float) -> "UncertaintyScenario":
        return cls("noon_weak", photon_number=photon_number, epsilon=epsilon)

    @property
    def amplification_factor(self) -> float:
        """Pattern phase per unit physical phase."""
        if self.tag == "single_qubit":
            return 1.0
        if self.tag == "noon":
            return float(self.photon_number)
        if self.tag == "weak":
            return 1.0 / (2.0 * self.epsilon)
        return self.photon_number / (2.0 * self.epsilon)

    def effective_samples(self, model: ErrorModel) -> float:
        """Detections contributing to the pattern, before integer rounding."""
        n_photon = self.photon_number
        total = float(model.sample_size)
        if self.tag == "single_qubit":
            return total
        if self.tag == "noon":
            return total / n_photon
        if self.tag == "weak":
            return 2.0 * self.epsilon * self.epsilon * total
        return 2.0 * self.epsilon * self.epsilon * total / n_photon


def detection_prob(scenario: UncertaintyScenario, phi: float, phi_err: float = 0.0) -> float:
    """Bright-port fringe probability (1 + cos(pattern phase + phi_err)) / 2."""
    phi = float(phi)
    phi_err = float(phi_err)
    if not math.isfinite(phi) or not math.isfinite(phi_err):
        raise InvalidParameterError("phi and phi_err must be finite")
    return 0.5 * (1.0 + math.cos(scenario.amplification_factor * phi + phi_err))


def effective_sample_size(scenario: UncertaintyScenario, model: ErrorModel) -> int:
    """Integer detections available to the estimator; below 10 is rejected."""
    m = int(round(scenario.effective_samples(model)))
    if m < _MIN_EFFECTIVE_SAMPLES:
        raise InvalidParameterError(
            f"effective sample size {m} is below {_MIN_EFFECTIVE_SAMPLES}; "
            "increase sample_size or epsilon"
        )
    return m


def analytic_uncertainty_full(phi: float, model: ErrorModel) -> float:
    """Single-qubit phase uncertainty at arbitrary phase.

    sqrt(rho^2 + 1/N + rho^2 / (N sin^2 phi)); diverges where sin(phi) = 0.
    """
    return analytic_uncertainty_at_phase(UncertaintyScenario.single_qubit(), model, phi)


def analytic_uncertainty_at_phase(
    scenario: UncertaintyScenario, model: ErrorModel, phi: float
) -> float:
    """General-phase uncertainty for any scenario.

    Applies sqrt(rho^2 + 1/m + rho^2/(m sin^2 theta)) to the pattern phase
    theta and scales back down by the amplification factor.  Raises
    ``DivergenceError`` where sin(theta) = 0.
    """
    phi = float(phi)
    if not math.isfinite(phi):
        raise InvalidParameterError(f"phi must be finite, got {phi!r}")
    factor = scenario.amplification_factor
    theta = factor * phi
    if math.remainder(theta, math.pi) == 0.0:
        raise DivergenceError(
            f"uncertainty diverges at pattern phase {theta!r} (multiple of pi); "
            "evaluate at the sweet spot via analytic_uncertainty"
        )
    m = scenario.effective_samples(model)
    rho = model.rho
    s = math.sin(theta)
    dtheta = math.sqrt(rho * rho + 1.0 / m + rho * rho / (m * s * s))
    return dtheta / factor


def analytic_uncertainty(scenario: UncertaintyScenario, model: ErrorModel) -> float:
    """Closed-form uncertainty at the pattern sweet spot (pattern phase pi/2)."""
    rho = model.rho
    total = float(model.sample_size)
    n_photon = scenario.photon_number
    if scenario.tag == "single_qubit":
        return math.sqrt(rho * rho + 1.0 / total)
    if scenario.tag == "noon":
        return math.sqrt(rho * rho / (n_photon * n_photon) + 1.0 / (n_photon * total))
    eps = scenario.epsilon
    if scenario.tag == "weak":
        return 2.0 * math.sqrt(eps * eps * rho * rho + 1.0 / (2.0 * total))
    return 2.0 * math.sqrt(
        eps * eps * rho * rho / (n_photon * n_photon) + 1.0 / (2.0 * n_photon * total)
    )


def minimum_measurable_phase(sample_size: int) -> float:
    """Smallest resolvable phase arcsin(2/sqrt(N)) for a photon budget N >= 4."""
    n = int(sample_size)
    if n < 4:
        raise InvalidParameterError(f"sample_size must be >= 4, got {sample_size!r}")
    return math.asin(math.sqrt(1.0 / n) * 2.0)


@dataclass(frozen=True, eq=False)
class UncertaintyReport:
    """Analytic vs Monte Carlo uncertainty for one scenario configuration.

    ``mc_delta_phi`` is the RMS deviation of the estimates from the true
    phase (systematic spread included), with a jackknife standard error;
    ``mc_std_about_mean`` is the plain standard deviation for reference.
    """

    scenario: UncertaintyScenario
    model: ErrorModel
    true_phi: float
    trials: int
    rng_seed: int
    effective_m: int
    analytic_delta_phi: float
    mc_delta_phi: float
    mc_standard_error: float
    mc_std_about_mean: float
    clamped_trials: int

    @property
    def agrees(self) -> bool:
        """Analytic and Monte Carlo values within four standard errors."""
        return abs(self.analytic_delta_phi - self.mc_delta_phi) <= 4.0 * self.mc_standard_error

    @property
    def clamp_rate(self) -> float:
        return self.clamped_trials / self.trials


def _nearest_branch(theta_hat: float, theta_true: float) -> float:
    """Resolve the arccos sign/branch ambiguity toward the true pattern phase."""
    tau = 2.0 * math.pi
    cand_a = theta_hat + tau * round((theta_true - theta_hat) / tau)
    cand_b = -theta_hat + tau * round((theta_true + theta_hat) / tau)
    if abs(cand_a - theta_true) <= abs(cand_b - theta_true):
        return cand_a
    return cand_b


def mc_uncertainty(
    scenario: UncertaintyScenario,
    model: ErrorModel,
    true_phi: float,
    trials: int = 2000,
    rng_seed: int = 0,
) -> UncertaintyReport:
    """Monte Carlo check of the closed-form uncertainty.

    Each trial draws a systematic pattern-phase error ~ N(0, rho), samples a
    binomial count of m detections at the resulting fringe probability,
    inverts the fringe for the pattern phase (branch chosen nearest the
    truth), and scales back to a phi estimate.  Trial t uses an RNG seeded
    from (rng_seed, t), so results do not depend on evaluation order.

    The analytic reference is the sweet-spot closed form when the true
    pattern phase sits at pi/2 (mod pi), and the general-phase expression
    otherwise.  Choose ``true_phi`` away from pattern phases 0 or pi, where
    the fringe carries no phase information.
    """
    true_phi = float(true_phi)
    if not math.isfinite(true_phi):
        raise InvalidParameterError(f"true_phi must be finite, got {true_phi!r}")
    trials = int(trials)
    if trials < 100:
        raise InvalidParameterError(f"trials must be >= 100, got {trials!r}")
    rng_seed = int(rng_seed)
    if rng_seed < 0:
        raise InvalidParameterError(f"rng_seed must be non-negative, got {rng_seed!r}")

    m = effective_sample_size(scenario, model)
    factor = scenario.amplification_factor
    theta_true = factor * true_phi
    rho = model.rho

    deviations = np.empty(trials)
    clamped = 0
    p_floor = 1.0 / m
    for t in range(trials):
        rng = np.random.default_rng(np.random.SeedSequence([rng_seed, t]))
        err = rng.normal(0.0, rho) if rho > 0.0 else 0.0
        p = 0.5 * (1.0 + math.cos(theta_true + err))
        k = int(rng.binomial(m, min(max(p, 0.0), 1.0)))
        p_hat = k / m
        if p_hat <= 0.0:
            p_hat = p_floor
            clamped += 1
        elif p_hat >= 1.0:
            p_hat = 1.0 - p_floor
            clamped += 1
        theta_hat = math.acos(2.0 * p_hat - 1.0)
        theta_hat = _nearest_branch(theta_hat, theta_true)
        deviations[t] = theta_hat / factor - true_phi

    sq = deviations * deviations
    total_sq = float(np.sum(sq))
    rms = math.sqrt(total_sq / trials)
    leave_one_out = np.sqrt(np.maximum(total_sq - sq, 0.0) / (trials - 1))
    se = math.sqrt(
        (trials - 1) / trials * float(np.sum((leave_one_out - leave_one_out.mean()) ** 2))
    )

    if abs(abs(math.sin(theta_true)) - 1.0) <= 1e-9:
        analytic = analytic_uncertainty(scenario, model)
    else:
        analytic = analytic_uncertainty_at_phase(scenario, model, true_phi)

    return UncertaintyReport(
        scenario=scenario,
        model=model,
        true_phi=true_phi,
        trials=trials,
        rng_seed=rng_seed,
        effective_m=m,
        analytic_delta_phi=analytic,
        mc_delta_phi=rms,
        mc_standard_error=se,
        mc_std_about_mean=float(np.std(deviations)),
        clamped_trials=clamped,
    )


@dataclass(frozen=True)
class SqlComparison:
    """Amplified N00N uncertainty against the shot-noise limit 1/sqrt(N)."""

    delta_phi: float
    sql_bound: float
    beats_sql: bool


def sql_comparison(photon_number: int, model: ErrorModel, epsilon: float) -> SqlComparison:
    """Does an n-photon amplified scheme beat the shot-noise limit?

    Compares the noon_weak sweet-spot uncertainty with sqrt(1/N).  With no
    systematic error the two cross at n = 2 exactly, so ``beats_sql`` is
    strict: n = 2, rho = 0 does not beat.
    """
    scenario = UncertaintyScenario.noon_weak(photon_number, epsilon)
    delta = analytic_uncertainty(scenario, model)
    sql = math.sqrt(1.0 / model.sample_size)
    return SqlComparison(delta_phi=delta, sql_bound=sql, beats_sql=delta < sql)

import cmath
import math

import numpy as np
import pytest

from phaseamp.apparatus import (
    AmplifierConfig,
    closed_form_amplified_phase,
    compare_schemes,
    derive_seed,
    prepare_input,
    run_amplifier,
    run_standard_wv,
    scan_pattern,
)
from phaseamp.jones import InvalidParameterError, UndefinedPhaseError, relative_phase

# Frozen expectations, each recomputed here or in the sibling session notes by
# direct arithmetic (atan2 / explicit complex amplitudes), not by the code
# under test.
PHIP_1MRAD = 0.32175110439720384  # atan2(sin 1e-3, sin 3e-3 * cos 1e-3)
PHIP_5MRAD = 1.0303811647712136
PHIP_026MRAD = 0.08645078265667593
GAIN_026MRAD = 332.50301021798435
SUCCESS_1MRAD = 4.999994333343416e-06  # 1 - cos(2 eps) cos(phi)
SUCCESS_1MRAD_ANALYTIC = 4.749991541674455e-06  # eps^2 |a_H|^2 + |a_V|^2
WV_METER_PHASE = 0.03332097093373915  # phi = 1e-4, eps = 1.5e-3
WV_SUCCESS = 2.2512483068742276e-06
WV_WEAK_VALUE = 666.6661666666263  # cot(1.5e-3)


def test_prepare_input_balanced():
    state = prepare_input(0.0)
    assert state.amp_h == pytest.approx(1 / math.sqrt(2), rel=1e-15)
    assert state.amp_v == pytest.approx(1 / math.sqrt(2), rel=1e-15)
    assert prepare_input(0.3).norm_sq == pytest.approx(1.0, rel=1e-12)
    assert relative_phase(prepare_input(0.3)) == pytest.approx(0.3, abs=1e-15)


def test_prepare_input_rejects_out_of_range():
    for bad in (3.5, -3.5, math.nan):
        with pytest.raises(InvalidParameterError):
            prepare_input(bad)


# -------------------------------------------------------------- closed form


def test_closed_form_frozen_values():
    assert closed_form_amplified_phase(0.001, 0.0015) == pytest.approx(PHIP_1MRAD, abs=1e-15)
    assert closed_form_amplified_phase(0.005, 0.0015) == pytest.approx(PHIP_5MRAD, abs=1e-15)
    assert closed_form_amplified_phase(0.00026, 0.0015) == pytest.approx(PHIP_026MRAD, abs=1e-15)


def test_closed_form_recomputed_inline():
    # same numbers from scratch, with explicit complex amplitudes
    for phi, eps in ((0.001, 0.0015), (0.005, 0.0015), (-0.03, 0.01)):
        alpha = math.pi / 4 - eps
        amp_h = math.cos(alpha) + cmath.exp(1j * phi) * math.sin(alpha)
        amp_v = -math.sin(alpha) + cmath.exp(1j * phi) * math.cos(alpha)
        assert closed_form_amplified_phase(phi, eps) == pytest.approx(
            cmath.phase(amp_v / amp_h), abs=1e-12
        )


def test_closed_form_zero_and_odd():
    assert closed_form_amplified_phase(0.0, 0.0015) == 0.0
    rng = np.random.default_rng(8)
    for _ in range(100):
        phi = rng.uniform(1e-6, 0.1)
        eps = rng.uniform(1e-4, 0.1)
        assert closed_form_amplified_phase(-phi, eps) == -closed_form_amplified_phase(phi, eps)


def test_closed_form_rejects_zero_epsilon():
    with pytest.raises(InvalidParameterError):
        closed_form_amplified_phase(0.001, 0.0)


# ---------------------------------------------------------------- amplifier


def test_run_amplifier_frozen_example():
    outcome = run_amplifier(AmplifierConfig(phi=0.001, epsilon=0.0015))
    assert outcome.amplified_phase == pytest.approx(PHIP_1MRAD, abs=1e-9)
    assert outcome.success_probability == pytest.approx(SUCCESS_1MRAD, rel=1e-9)


def test_run_amplifier_matches_closed_form_on_grid():
    rng = np.random.default_rng(17)
    worst = 0.0
    for _ in range(300):
        phi = rng.uniform(-0.1, 0.1)
        eps = rng.uniform(1e-4, 0.1)
        outcome = run_amplifier(AmplifierConfig(phi=phi, epsilon=eps))
        worst = max(worst, abs(outcome.amplified_phase - closed_form_amplified_phase(phi, eps)))
    assert worst <= 1e-9


def test_run_amplifier_outcome_self_consistent():
    outcome = run_amplifier(AmplifierConfig(phi=0.02, epsilon=0.01))
    assert outcome.success_probability == pytest.approx(outcome.output_state.norm_sq, rel=1e-12)
    assert outcome.amplified_phase == pytest.approx(
        relative_phase(outcome.output_state), abs=1e-15
    )
    # balancing leaves the two components at equal magnitude
    assert abs(outcome.output_state.amp_h) == pytest.approx(
        abs(outcome.output_state.amp_v), rel=1e-12
    )


def test_run_amplifier_zero_phi():
    outcome = run_amplifier(AmplifierConfig(phi=0.0, epsilon=0.0015))
    assert outcome.amplified_phase == 0.0
    assert outcome.success_probability == pytest.approx(2 * math.sin(0.0015) ** 2, rel=1e-9)


def test_run_amplifier_success_tracks_two_eps_squared():
    for eps in (1e-4, 1.5e-3, 1e-2, 1e-1):
        outcome = run_amplifier(AmplifierConfig(phi=eps / 100, epsilon=eps))
        assert outcome.success_probability / (2 * eps**2) == pytest.approx(1.0, abs=0.02)


def test_run_amplifier_success_window():
    # within phi/eps <= 0.05 the success stays inside 2 eps^2 (1 +/- 10 phi/eps)
    rng = np.random.default_rng(33)
    for _ in range(80):
        eps = rng.uniform(1e-4, 0.1)
        phi = rng.uniform(0.0, 0.05) * eps
        outcome = run_amplifier(AmplifierConfig(phi=phi, epsilon=eps))
        band = 10 * phi / eps
        low = 2 * eps**2 * (1 - band)
        high = 2 * eps**2 * (1 + band)
        assert low <= outcome.success_probability <= high or (
            phi == 0.0 and outcome.success_probability == pytest.approx(2 * eps**2, rel=0.01)
        )


def test_run_amplifier_analytic_balance_mode():
    exact = run_amplifier(AmplifierConfig(phi=0.001, epsilon=0.0015))
    analytic = run_amplifier(
        AmplifierConfig(phi=0.001, epsilon=0.0015, balance_mode="analytic")
    )
    assert analytic.amplified_phase == pytest.approx(exact.amplified_phase, abs=1e-12)
    assert analytic.success_probability == pytest.approx(SUCCESS_1MRAD_ANALYTIC, rel=1e-9)


def test_run_amplifier_finite_extinction_is_harmless():
    # arm polarizers sit aligned with their arms, so finite extinction
    # changes nothing measurable
    ideal = run_amplifier(AmplifierConfig(phi=0.001, epsilon=0.0015))
    finite = run_amplifier(
        AmplifierConfig(
            phi=0.001,
            epsilon=0.0015,
            polarizer_extinction_transmitted=1e4,
            polarizer_extinction_reflected=1e5,
        )
    )
    assert finite.amplified_phase == pytest.approx(ideal.amplified_phase, abs=1e-12)
    assert finite.success_probability == pytest.approx(ideal.success_probability, rel=1e-9)


def test_amplifier_config_validation():
    with pytest.raises(InvalidParameterError):
        AmplifierConfig(phi=0.001, epsilon=0.0)
    with pytest.raises(InvalidParameterError):
        AmplifierConfig(phi=0.001, epsilon=-0.0015)
    with pytest.raises(InvalidParameterError):
        AmplifierConfig(phi=0.001, epsilon=2.0)
    with pytest.raises(InvalidParameterError):
        AmplifierConfig(phi=3.2, epsilon=0.0015)
    with pytest.raises(InvalidParameterError):
        AmplifierConfig(phi=0.001, epsilon=0.0015, polarizer_extinction_transmitted=0.5)
    with pytest.raises(InvalidParameterError):
        AmplifierConfig(phi=0.001, epsilon=0.0015, balance_mode="magic")


def test_small_angle_amplification_law():
    # phi' = phi/(2 eps) within 1% whenever phi/eps <= 0.05
    rng = np.random.default_rng(55)
    for _ in range(100):
        eps = rng.uniform(1e-4, 0.1)
        phi = rng.uniform(1e-3, 0.05) * eps
        ratio = closed_form_amplified_phase(phi, eps) / (phi / (2 * eps))
        assert abs(ratio - 1.0) <= 0.01


def test_amplified_phase_monotonicity():
    phis = np.linspace(0.0, 0.006, 40)
    values = [closed_form_amplified_phase(p, 0.0015) for p in phis]
    assert all(b > a for a, b in zip(values, values[1:]))

    epss = np.linspace(0.0005, 0.02, 40)
    values = [closed_form_amplified_phase(0.001, e) for e in epss]
    assert all(b < a for a, b in zip(values, values[1:]))


# ---------------------------------------------------- standard weak value


def test_run_standard_wv_frozen_example():
    outcome = run_standard_wv(1e-4, 0.0015)
    assert outcome.meter_relative_phase == pytest.approx(WV_METER_PHASE, rel=1e-9)
    assert outcome.success_probability == pytest.approx(WV_SUCCESS, rel=1e-9)
    assert outcome.weak_value == pytest.approx(WV_WEAK_VALUE, rel=1e-9)
    assert outcome.weak_value_approx == pytest.approx(1 / 0.0015, rel=1e-12)
    # the meter phase sits near the small-angle target phi/(2 eps)
    assert outcome.meter_relative_phase == pytest.approx(1e-4 / 0.003, rel=1e-3)


def test_run_standard_wv_success_scales_as_eps_squared():
    for eps in (1e-4, 1.5e-3, 1e-2):
        outcome = run_standard_wv(eps / 100, eps)
        assert outcome.success_probability / eps**2 == pytest.approx(1.0, abs=0.02)


def test_run_standard_wv_zero_phi_and_annihilation():
    assert run_standard_wv(0.0, 0.0015).meter_relative_phase == 0.0
    with pytest.raises(UndefinedPhaseError):
        run_standard_wv(0.001, 0.0)


def test_standard_wv_meter_agrees_with_amplifier_when_weak():
    for phi, eps in ((1e-5, 0.0015), (1e-4, 0.01), (5e-4, 0.02)):
        meter = run_standard_wv(phi, eps).meter_relative_phase
        amplifier = run_amplifier(AmplifierConfig(phi=phi, epsilon=eps)).amplified_phase
        assert meter == pytest.approx(amplifier, rel=1e-3)


# ------------------------------------------------------------------- ratio


def test_compare_schemes_frozen_values():
    assert compare_schemes(1e-5, 0.0015) == pytest.approx(2.0000111110076944, rel=1e-9)
    # at phi = 0 the ratio is exactly two up to floating point
    assert compare_schemes(0.0, 0.0015) == pytest.approx(2.0, rel=0.0015**2)
    assert compare_schemes(1e-6, 0.01) == pytest.approx(2.0, rel=0.01**2)


def test_compare_schemes_near_two_across_grid():
    for eps in (1e-4, 1.5e-3, 1e-2, 1e-1):
        assert compare_schemes(eps / 100, eps) == pytest.approx(2.0, rel=0.05)


def test_compare_schemes_rejects_strong_phase():
    with pytest.raises(InvalidParameterError):
        compare_schemes(0.001, 0.0015)  # phi/eps = 0.67, far beyond weak


# ----------------------------------------------------------- scan patterns


def test_scan_pattern_exact_fringe():
    config = AmplifierConfig(phi=0.001, epsilon=0.0015)
    grid = [0.0, math.pi / 2, math.pi, 3 * math.pi / 2]
    pattern = scan_pattern(config, grid)
    assert pattern.mode == "exact"
    for beta, value in zip(pattern.beta, pattern.value):
        assert value == pytest.approx(0.5 * (1 + math.cos(PHIP_1MRAD - beta)), abs=1e-9)


def test_scan_pattern_reference_peaks_at_zero():
    config = AmplifierConfig(phi=0.0, epsilon=0.0015)
    pattern = scan_pattern(config, [0.0])
    assert pattern.value[0] == pytest.approx(1.0, rel=1e-12)


def test_scan_pattern_visibility_scales_contrast():
    config = AmplifierConfig(phi=0.001, epsilon=0.0015)
    grid = np.linspace(0.0, 2 * math.pi, 9)
    pattern = scan_pattern(config, grid, visibility=0.6)
    for beta, value in zip(pattern.beta, pattern.value):
        assert value == pytest.approx(
            0.5 * (1 + 0.6 * math.cos(PHIP_1MRAD - beta)), abs=1e-9
        )


def test_scan_pattern_counts_reproducible():
    config = AmplifierConfig(phi=0.001, epsilon=0.0015)
    grid = np.arange(12) * (2 * math.pi / 12)
    first = scan_pattern(config, grid, shots_per_point=5000, rng_seed=123)
    second = scan_pattern(config, grid, shots_per_point=5000, rng_seed=123)
    np.testing.assert_array_equal(first.value, second.value)
    assert first.mode == "counts" and first.shots_per_point == 5000
    assert np.all(first.value >= 0) and np.all(first.value <= 5000)

    other = scan_pattern(config, grid, shots_per_point=5000, rng_seed=124)
    assert np.any(other.value != first.value)


def test_scan_pattern_validation():
    config = AmplifierConfig(phi=0.001, epsilon=0.0015)
    with pytest.raises(InvalidParameterError):
        scan_pattern(config, [])
    with pytest.raises(InvalidParameterError):
        scan_pattern(config, [0.0, 1.0], shots_per_point=100)  # no seed
    with pytest.raises(InvalidParameterError):
        scan_pattern(config, [0.0, 1.0], visibility=0.0)
    with pytest.raises(InvalidParameterError):
        scan_pattern(config, [0.0, 1.0], visibility=1.5)


def test_derive_seed_stable_and_distinct():
    assert derive_seed(42, 0) == derive_seed(42, 0)
    assert derive_seed(42, 0) != derive_seed(42, 1)
    assert derive_seed(41, 0) != derive_seed(42, 0)
    with pytest.raises(InvalidParameterError):
        derive_seed(-1, 0)

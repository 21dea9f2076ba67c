"""Acceptance criteria for the package, one test per criterion.

Each test prints a single ``acceptance N: PASS/FAIL`` line (past the capture
machinery, so the lines show up in a plain ``pytest`` run) and then asserts.
"""

import math
import time

import numpy as np
import pytest

from phaseamp import cli
from phaseamp.apparatus import (
    AmplifierConfig,
    closed_form_amplified_phase,
    compare_schemes,
    run_amplifier,
    scan_pattern,
)
from phaseamp.fitting import fit_sinusoid, wrap_angle
from phaseamp.metrology import (
    ErrorModel,
    UncertaintyScenario,
    mc_uncertainty,
    minimum_measurable_phase,
    sql_comparison,
)


def _report(capsys, criterion, ok, detail):
    line = f"acceptance {criterion}: {'PASS' if ok else 'FAIL'} — {detail}"
    with capsys.disabled():
        print(f"\n{line}")
    assert ok, line


def test_criterion_1_pipeline_matches_closed_form(capsys):
    rng = np.random.default_rng(12345)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(1000):
        phi = rng.uniform(-0.1, 0.1)
        eps = rng.uniform(1e-4, 0.1)
        outcome = run_amplifier(AmplifierConfig(phi=phi, epsilon=eps))
        worst = max(worst, abs(outcome.amplified_phase - closed_form_amplified_phase(phi, eps)))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-9 and elapsed < 1.0
    _report(
        capsys, 1, ok,
        f"pipeline vs closed form over 1000 random settings: max |diff| = {worst:.3g} rad "
        f"(tol 1e-9), batch took {elapsed:.2f} s (limit 1 s)",
    )


def test_criterion_2_bench_reference_within_tolerance(capsys):
    predictions = {}
    for entry in cli._MEASURED_REFERENCE:
        phi = entry["phi_mrad"] * 1e-3
        eps = entry["eps_mrad"] * 1e-3
        predictions[entry["phi_mrad"]] = closed_form_amplified_phase(phi, eps) * 1e3

    p1, p5, p026 = predictions[1.0], predictions[5.0], predictions[0.26]
    gain_theory = p026 / 0.26
    gain_measured = 101.0 / 0.26
    checks = [
        abs(p1 - 321.7511) <= 0.01,
        abs(p1 - 347.0) / 347.0 <= 0.10,
        abs(p5 - 1030.3812) <= 0.01,
        abs(p5 - 1023.0) / 1023.0 <= 0.01,
        abs(gain_theory - 332.503) <= 0.01,
        gain_measured > gain_theory,  # bench runs hot; the gap stays visible
    ]
    ok = all(checks)
    _report(
        capsys, 2, ok,
        f"predicted {p1:.4f}/{p5:.4f} mrad vs measured 347/1023 "
        f"({abs(p1 - 347) / 347:.1%} and {abs(p5 - 1023) / 1023:.2%} off); "
        f"gain {gain_theory:.3f} vs measured {gain_measured:.1f}",
    )


def test_criterion_3_success_probability_law(capsys):
    ratios, scheme_ratios = [], []
    for eps in (1e-4, 1.5e-3, 1e-2, 1e-1):
        phi = eps / 100.0
        outcome = run_amplifier(AmplifierConfig(phi=phi, epsilon=eps))
        ratios.append(outcome.success_probability / (2.0 * eps * eps))
        scheme_ratios.append(compare_schemes(phi, eps))
    ok = all(0.98 <= r <= 1.02 for r in ratios) and all(
        abs(r - 2.0) <= 0.10 for r in scheme_ratios
    )
    _report(
        capsys, 3, ok,
        "success/(2 eps^2) = [" + ", ".join(f"{r:.4f}" for r in ratios) + "], "
        "amplifier/weak-value ratio = ["
        + ", ".join(f"{r:.4f}" for r in scheme_ratios)
        + "] (limit 2)",
    )


def test_criterion_4_uncertainty_grid_agreement(capsys):
    configs = []
    for samples in (10**4, 10**6, 10**8):
        configs.append((UncertaintyScenario.single_qubit(), samples))
    for n in (2, 3, 4):
        configs.append((UncertaintyScenario.noon(n), 10**6))
    for eps in (0.0015, 0.005, 0.02):
        configs.append((UncertaintyScenario.weak(eps), 10**8))
    for n, eps in ((2, 0.0015), (3, 0.005), (4, 0.02)):
        configs.append((UncertaintyScenario.noon_weak(n, eps), 10**8))

    start = time.perf_counter()
    agreements, clamp_notes = [], []
    index = 0
    for scenario, samples in configs:
        for rho in (0.0, 0.003, 0.01, 0.03):
            model = ErrorModel(rho=rho, sample_size=samples)
            true_phi = (math.pi / 2.0) / scenario.amplification_factor
            report = mc_uncertainty(
                scenario, model, true_phi, trials=2000, rng_seed=1000 + index
            )
            agreements.append(report.agrees)
            if report.clamp_rate >= 0.01:
                clamp_notes.append(f"{scenario.tag}@rho={rho}: {report.clamp_rate:.1%}")
            index += 1
    elapsed = time.perf_counter() - start

    passed = sum(agreements)
    ok = passed >= 0.95 * len(agreements) and elapsed < 120.0
    clamp_text = "; clamped cells: " + ", ".join(clamp_notes) if clamp_notes else ""
    _report(
        capsys, 4, ok,
        f"analytic vs Monte Carlo agreement in {passed}/{len(agreements)} grid cells "
        f"(need 95%), {elapsed:.1f} s (limit 120 s){clamp_text}",
    )


def test_criterion_5_minimum_measurable_phase(capsys):
    at_four = minimum_measurable_phase(4)
    at_million = minimum_measurable_phase(10**6)
    ok = (
        abs(at_four - math.pi / 2.0) <= 1e-12
        and abs(at_million - 0.0020000013333357335) <= 1e-12
    )
    _report(
        capsys, 5, ok,
        f"arcsin(2/sqrt(N)): N=4 -> {at_four:.12g} (pi/2), N=1e6 -> {at_million:.12g} rad",
    )


def test_criterion_6_shot_noise_crossover(capsys):
    model = ErrorModel(rho=0.0, sample_size=10**6)
    verdicts = {
        n: sql_comparison(n, model, epsilon=0.0015).beats_sql for n in (1, 2, 3, 4, 8)
    }
    ok = (
        verdicts[1] is False
        and verdicts[2] is False  # exact tie at n = 2; a tie is not a win
        and all(verdicts[n] is True for n in (3, 4, 8))
    )
    _report(
        capsys, 6, ok,
        "beats shot noise at n=1..8 (ideal systematics): "
        + ", ".join(f"n={n}: {'yes' if v else 'no'}" for n, v in verdicts.items()),
    )


def test_criterion_7_fit_roundtrip_and_error_calibration(capsys):
    rng = np.random.default_rng(777)
    worst = 0.0
    for _ in range(500):
        phi = rng.uniform(-0.1, 0.1)
        eps = rng.uniform(1e-4, 0.1)
        n_points = int(rng.integers(8, 48))
        grid = np.arange(n_points) * (2 * math.pi / n_points)
        pattern = scan_pattern(AmplifierConfig(phi=phi, epsilon=eps), grid)
        fit = fit_sinusoid(pattern)
        diff = wrap_angle(fit.phase - closed_form_amplified_phase(phi, eps))
        worst = max(worst, abs(diff))
    roundtrip_ok = worst <= 1e-9

    config = AmplifierConfig(phi=0.005, epsilon=0.0015)
    grid = np.arange(36) * (2 * math.pi / 36)
    phases, predicted = [], []
    for seed in range(1000):
        pattern = scan_pattern(config, grid, shots_per_point=10**4, rng_seed=seed,
                               visibility=0.6)
        fit = fit_sinusoid(pattern)
        phases.append(fit.phase)
        predicted.append(fit.phase_std)
    ratio = float(np.std(phases)) / float(np.mean(predicted))
    calibration_ok = abs(ratio - 1.0) <= 0.15

    ok = roundtrip_ok and calibration_ok
    _report(
        capsys, 7, ok,
        f"noiseless fit roundtrip: max |diff| = {worst:.3g} rad (tol 1e-9); "
        f"1000-seed scatter / predicted std = {ratio:.3f} (tol 15%)",
    )


def test_criterion_8_amplification_curves_monotone(capsys, tmp_path):
    assert cli.main(["curves", "--out", str(tmp_path)]) == 0
    lines = (tmp_path / "curves_phi.csv").read_text().strip().split("\n")[1:]
    by_eps = {}
    for line in lines:
        phi, eps, phip = (float(x) for x in line.split(","))
        by_eps.setdefault(eps, []).append(phip)

    rising = all(
        all(b > a for a, b in zip(curve, curve[1:])) for curve in by_eps.values()
    )
    ordered = True
    eps_sorted = sorted(by_eps)
    for i in range(1, len(next(iter(by_eps.values())))):
        column = [by_eps[eps][i] for eps in eps_sorted]
        ordered = ordered and all(b < a for a, b in zip(column, column[1:]))

    ok = rising and ordered
    _report(
        capsys, 8, ok,
        f"{len(by_eps)} amplification curves strictly increase with input phase; "
        "smaller rotation offset amplifies more at every nonzero phase",
    )

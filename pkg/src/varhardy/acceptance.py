"""The acceptance gate: one callable check per criterion.

Each check returns a :class:`CriterionResult` with the measured quantities it
judged, so the same code backs both ``varhardy acceptance`` and the pytest
gate in ``tests/test_acceptance.py``.  Tolerances are pinned here, next to
the checks that use them.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .boundary import CircleFunction, LineFunction, TailModel, seeded_trig_polynomial
from .disk import (
    dyadic_radii,
    fourier_coefficients,
    inclusion_check,
    membership_pair_report,
    poisson_dilate,
    poisson_extension,
    polynomial_sampler,
    szego_boundedness_experiment,
    szego_project,
)
from .exponents import constant_exponent, counterexample_exponent, lh_demo_exponent
from .halfplane import (
    approximate_identity_check,
    boundary_representation_check,
    cauchy_extension_sampler,
    cauchy_profile,
    cosine_bump,
    gaussian_bump,
    kernel_mass,
    poisson_convolve,
    poisson_kernel_halfplane,
)
from .kernels import evaluation_bound_experiment, forelli_rudin_check, phi_majorization_check
from .norms import build_plan, indicator_norm, luxemburg_norm, norm_from_plan

TWO_PI = 2.0 * math.pi


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    details: dict = field(default_factory=dict)

    @property
    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] criterion {self.number}: {self.name}"

    def as_dict(self) -> dict:
        return {"number": self.number, "name": self.name,
                "passed": self.passed, "details": self.details}


def _normalized_poly(seed: int, p, n: int = 256, degree: int = 8) -> CircleFunction:
    f = seeded_trig_polynomial(seed, degree=degree, n=n)
    scale = luxemburg_norm(f, p).value
    return f.map_values(f.values / scale)


def criterion_1() -> CriterionResult:
    """Unit ball: rho(f / ||f||) = 1 within 1e-6 over 200 seeded polynomials."""
    p = counterexample_exponent()
    start = time.perf_counter()
    worst = 0.0
    for seed in range(200):
        f = seeded_trig_polynomial(seed, degree=8, n=256)
        plan = build_plan(f, p)
        norm = norm_from_plan(plan, p)
        worst = max(worst, abs(plan.value_at_scale(norm.value) - 1.0))
    elapsed = time.perf_counter() - start
    return CriterionResult(
        1, "unit-ball property on the seeded corpus",
        passed=worst <= 1e-6 and elapsed < 30.0,
        details={"max_modular_deviation": worst, "seconds": elapsed},
    )


def criterion_2() -> CriterionResult:
    """Constant-exponent reduction and the exact constant-function norm."""
    p2 = constant_exponent(2.0)
    one = CircleFunction(np.ones(1024))
    exact_err = abs(luxemburg_norm(one, p2).value - math.sqrt(TWO_PI))

    worst_rel = 0.0
    cos1 = CircleFunction.from_callable(lambda t: np.cos(t) + 0j, 1024)
    cases = [(one, math.sqrt(TWO_PI)), (cos1, math.sqrt(math.pi))]
    for seed in (0, 1, 2):
        f = seeded_trig_polynomial(seed, degree=8, n=1024)
        coeffs = fourier_coefficients(f).coeffs
        closed = math.sqrt(TWO_PI * float(np.sum(np.abs(coeffs) ** 2)))
        cases.append((f, closed))
    for f, closed in cases:
        rel = abs(luxemburg_norm(f, p2).value - closed) / closed
        worst_rel = max(worst_rel, rel)
    return CriterionResult(
        2, "constant-exponent reduction to the classical norm",
        passed=exact_err <= 1e-10 and worst_rel <= 1e-8,
        details={"constant_norm_error": exact_err, "max_relative_error": worst_rel},
    )


def criterion_3() -> CriterionResult:
    """Dilation multiplier exactness and the dilation semigroup."""
    n = 128
    nodes = np.arange(n) * (TWO_PI / n)
    worst = 0.0
    for k in range(-32, 33):
        wave = CircleFunction(np.exp(1j * k * nodes))
        for r in (0.5, 0.9, 0.99):
            expected = r ** abs(k) * wave.values
            worst = max(worst, float(np.max(np.abs(
                poisson_dilate(wave, r).values - expected))))
    semi = 0.0
    for seed in (0, 1):
        f = seeded_trig_polynomial(seed, degree=12, n=n)
        for r, s in ((0.5, 0.9), (0.9, 0.99), (0.7, 0.7)):
            lhs = poisson_dilate(poisson_dilate(f, r), s).values
            rhs = poisson_dilate(f, r * s).values
            semi = max(semi, float(np.max(np.abs(lhs - rhs))))
    return CriterionResult(
        3, "dilation is the exact Fourier multiplier with semigroup law",
        passed=worst <= 1e-12 and semi <= 1e-12,
        details={"max_multiplier_error": worst, "max_semigroup_error": semi},
    )


def criterion_4() -> CriterionResult:
    """Dilation convergence: deficits strictly decrease and end below 1e-2."""
    p = counterexample_exponent()
    radii = dyadic_radii(10)
    all_decreasing = True
    worst_final = 0.0
    for seed in range(10):
        f = _normalized_poly(seed, p)
        deficits = []
        for r in radii:
            deficit = f.map_values(f.values - poisson_dilate(f, r).values)
            deficits.append(luxemburg_norm(deficit, p).value)
        all_decreasing &= all(a > b for a, b in zip(deficits, deficits[1:]))
        worst_final = max(worst_final, deficits[-1])
    return CriterionResult(
        4, "dilation approximations converge in norm",
        passed=all_decreasing and worst_final < 1e-2,
        details={"strictly_decreasing": all_decreasing, "worst_final_deficit": worst_final},
    )


def criterion_5() -> CriterionResult:
    """Inclusion chain: one modular constant works across the bounded corpus."""
    p = counterexample_exponent()
    bound = 1.0 + TWO_PI + 1e-9
    worst = 0.0
    for seed in range(200):
        sampler = poisson_extension(seeded_trig_polynomial(seed, degree=6, n=128))
        report = inclusion_check(sampler, p, dyadic_radii(6), n=512)
        worst = max(worst, report.c_upper, report.c_lower)
    return CriterionResult(
        5, "inclusion-chain modular implications with one constant",
        passed=worst <= bound,
        details={"max_constant": worst, "bound": bound},
    )


def criterion_6() -> CriterionResult:
    """Kernel-norm scaling slopes at the two plateaus, stable under doubling."""
    p = counterexample_exponent()
    start = time.perf_counter()
    slopes = {}
    for theta, target in ((0.0, -1.0 / 3.0), (math.pi, -0.5)):
        base = evaluation_bound_experiment(p, theta, n=2**13)
        doubled = evaluation_bound_experiment(p, theta, n=2**14)
        slopes[theta] = (base.fitted_slope, doubled.fitted_slope, target)
    elapsed = time.perf_counter() - start
    ok = all(
        abs(fit - target) <= 0.05 and abs(fit - refit) < 0.01
        for fit, refit, target in slopes.values()
    )
    return CriterionResult(
        6, "evaluation-functional scaling at the exponent plateaus",
        passed=ok and elapsed < 60.0,
        details={
            "slope_theta_0": slopes[0.0][0],
            "slope_theta_0_doubled": slopes[0.0][1],
            "slope_theta_pi": slopes[math.pi][0],
            "slope_theta_pi_doubled": slopes[math.pi][1],
            "seconds": elapsed,
        },
    )


def criterion_7() -> CriterionResult:
    """Peak-set majorization ratio bounded uniformly over the (z, r) matrix."""
    p = counterexample_exponent()
    bound = 5.0
    worst = 0.0
    max_drift = 0.0
    for theta in (0.0, math.pi / 2.0, math.pi):
        for mod in (0.5, 0.7, 0.9, 0.99):
            for r in (0.6, 0.75, 0.95):
                z = mod * complex(math.cos(theta), math.sin(theta))
                base = phi_majorization_check(p, z, r, n=2**12).max_ratio
                doubled = phi_majorization_check(p, z, r, n=2**13).max_ratio
                worst = max(worst, base, doubled)
                max_drift = max(max_drift, abs(doubled - base) / base)
    return CriterionResult(
        7, "peak-set majorization bounded across the test matrix",
        passed=worst <= bound and max_drift <= 0.01,
        details={"max_ratio": worst, "bound": bound, "max_grid_drift": max_drift},
    )


def criterion_8() -> CriterionResult:
    """Boundary-kernel growth: the closed-form band and the fitted slope."""
    rep2 = forelli_rudin_check(2.0, dyadic_radii(10, start=3))
    scale, value = rep2.points[-1]  # the point at rho = 1 - 2**-10
    band_rel = abs((scale * value) / math.pi - 1.0)
    rep15 = forelli_rudin_check(1.5)
    return CriterionResult(
        8, "boundary-kernel integral growth law",
        passed=band_rel <= 1e-3 and abs(rep15.fitted_slope + 0.5) <= 0.05,
        details={
            "normalized_value_relative_error": band_rel,
            "fitted_slope_s15": rep15.fitted_slope,
        },
    )


def criterion_9() -> CriterionResult:
    """The membership counterexample pair at q = 2.5, eps = 0.05."""
    start = time.perf_counter()
    report = membership_pair_report(2.5, 0.05)
    elapsed = time.perf_counter() - start
    g_slope = report.g_variable.modular_growth_exponent
    ok = (
        report.f_variable.member is True
        and all(math.isfinite(m) for m in report.f_variable.modulars)
        and report.g_variable.member is False
        and g_slope is not None
        and abs(g_slope - (-0.35)) <= 0.1
        and report.f_constant_q.member is False
        and elapsed < 60.0
    )
    return CriterionResult(
        9, "variable-exponent membership differs from every constant exponent",
        passed=ok,
        details={
            "f_verdict": report.f_variable.verdict,
            "g_verdict": report.g_variable.verdict,
            "g_modular_slope": g_slope,
            "f_constant_verdict": report.f_constant_q.verdict,
            "seconds": elapsed,
        },
    )


def criterion_10() -> CriterionResult:
    """Reproducing integral exact for low-degree polynomials."""
    from .disk import reproduce_at

    rng = np.random.default_rng(7)
    worst = 0.0
    for trial in range(50):
        degree = int(rng.integers(0, 9))
        coeffs = rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)
        sampler = polynomial_sampler(coeffs)
        z = complex(*(0.9 * rng.uniform(-1, 1, 2) / math.sqrt(2)))
        direct = np.polynomial.polynomial.polyval(z, coeffs)
        worst = max(worst, abs(reproduce_at(sampler, z) - direct))
    return CriterionResult(
        10, "reproducing formula exact on polynomials",
        passed=worst <= 1e-10,
        details={"max_error": worst, "probes": 50},
    )


def criterion_11() -> CriterionResult:
    """Analytic projection: exactness on coefficients, bounded on the corpus."""
    n = 256
    nodes = np.arange(n) * (TWO_PI / n)
    freqs = np.fft.fftfreq(n, d=1.0 / n)
    mask = (freqs >= 0).astype(float)
    idempotent = True
    for seed in range(10):
        c = np.fft.fft(seeded_trig_polynomial(seed, n=n).values)
        idempotent &= bool(np.array_equal(mask * (mask * c), mask * c))

    wave_err = 0.0
    for k in range(-20, 21):
        wave = CircleFunction(np.exp(1j * k * nodes))
        projected = szego_project(wave).values
        expected = wave.values if k >= 0 else np.zeros(n)
        wave_err = max(wave_err, float(np.max(np.abs(projected - expected))))

    experiment = szego_boundedness_experiment(counterexample_exponent(), trials=1000)
    return CriterionResult(
        11, "analytic projection exact and empirically bounded",
        passed=idempotent and wave_err <= 1e-13 and experiment.max_ratio <= 10.0,
        details={
            "idempotent_on_coefficients": idempotent,
            "max_wave_error": wave_err,
            "max_norm_ratio": experiment.max_ratio,
        },
    )


def criterion_12() -> CriterionResult:
    """Half-plane stack: mass, semigroup, approach, indicators, representation."""
    details: dict = {}

    mass_err = max(abs(kernel_mass(y) - 1.0) for y in (0.125, 0.5, 1.0, 4.0))
    details["max_mass_error"] = mass_err

    semi_err = 0.0
    for y1, y2 in ((0.5, 0.75), (0.25, 1.0)):
        spacing = min(y1, y2) / 8.0
        m = int(math.ceil(64.0 / spacing))
        x = np.arange(-m, m + 1) * (64.0 / m)
        u = LineFunction(x, poisson_kernel_halfplane(x, y2), tail=TailModel(2.0))
        conv = poisson_convolve(u, y1)
        inner = np.abs(x) <= 32.0
        expected = poisson_kernel_halfplane(x, y1 + y2)
        semi_err = max(semi_err, float(np.max(
            np.abs(conv.values[inner] - expected[inner]))))
    details["max_semigroup_error"] = semi_err

    lh = lh_demo_exponent()
    approach_ok = True
    worst_final = 0.0
    for u in (gaussian_bump(1.0), gaussian_bump(2.0), cosine_bump(2.0)):
        report = approximate_identity_check(u, lh)
        approach_ok &= all(a > b for a, b in
                           zip(report.deficits, report.deficits[1:]))
        worst_final = max(worst_final, report.deficits[-1])
    details["approach_strictly_decreasing"] = approach_ok
    details["worst_final_deficit"] = worst_final

    qa = float(lh(np.array([0.0]))[0])
    ratios = [indicator_norm(0.0, 2.0**-j, lh) / (2.0 * 2.0**-j) ** (1.0 / qa)
              for j in range(1, 13)]
    details["indicator_ratio_range"] = [min(ratios), max(ratios)]

    rep = boundary_representation_check(
        cauchy_extension_sampler(), cauchy_profile(halfwidth=128.0, spacing=2**-5), lh
    )
    details["representation_residual"] = rep.residual

    passed = (
        mass_err <= 1e-6
        and semi_err <= 1e-8
        and approach_ok
        and worst_final < 1e-2
        and all(1.0 / 3.0 <= r <= 3.0 for r in ratios)
        and rep.residual < 1e-6
    )
    return CriterionResult(12, "half-plane kernel, approach, and representation",
                           passed=passed, details=details)


def criterion_13() -> CriterionResult:
    """Reports are byte-identical across reruns and worker counts."""
    import tempfile
    from pathlib import Path

    from . import cli

    with tempfile.TemporaryDirectory() as tmp:
        outs = []
        for tag, workers in (("a", 1), ("b", 1), ("c", 2)):
            path = Path(tmp) / f"{tag}.json"
            code = cli.main([
                "sec3", "--q", "2.5", "--eps", "0.05", "--n", "2048",
                "--radius-depth", "8", "--workers", str(workers),
                "--no-timestamp", "--output", str(path),
            ])
            assert code == 0
            outs.append(path.read_bytes())
        rerun_identical = outs[0] == outs[1]
        workers_identical = outs[0] == outs[2]
    return CriterionResult(
        13, "byte-identical reports across reruns and worker counts",
        passed=rerun_identical and workers_identical,
        details={"rerun_identical": rerun_identical,
                 "workers_identical": workers_identical},
    )


ALL_CRITERIA = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4,
    5: criterion_5, 6: criterion_6, 7: criterion_7, 8: criterion_8,
    9: criterion_9, 10: criterion_10, 11: criterion_11, 12: criterion_12,
    13: criterion_13,
}


def run_acceptance(numbers=None) -> list[CriterionResult]:
    selected = sorted(numbers) if numbers else sorted(ALL_CRITERIA)
    return [ALL_CRITERIA[k]() for k in selected]

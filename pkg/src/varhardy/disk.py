"""Harmonic analysis on the unit disk boundary: Poisson and Szegoe
transforms, variable-exponent Hardy norms, and membership diagnostics.

Dilations, Poisson extensions, and the Szegoe projection all act through the
discrete Fourier coefficients of the boundary samples, where they are exact
for band-limited data.  Hardy norms take the sup of boundary-circle norms
over a dyadic radius schedule ``r_k = 1 - 2**-k``; since monotonicity of
``r -> ||f_r||`` is untested territory for variable exponents, the verdict
rules are deliberately conservative and include an inconclusive branch, and
reports flag that the sup is approximated by the schedule max.
"""

from __future__ import annotations

import cmath
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .boundary import CircleFunction, Singularity
from .exponents import (
    VariableExponent,
    constant_exponent,
    counterexample_exponent,
    log_holder_constant,
)
from .fitting import fit_loglog, tail_window
from .norms import NormResult, _json_float, build_plan, luxemburg_norm, norm_from_plan

TWO_PI = 2.0 * math.pi

#: Baseline circle grid for Hardy-norm sampling.
DISK_GRID = 2**14

#: Default dyadic radius schedule exponents, r_k = 1 - 2**-k.
DEFAULT_RADIUS_DEPTH = 12

#: Bounded-tail verdict: the last three norms must agree within this factor.
BOUNDED_TAIL_FACTOR = 1.05

#: Divergence verdict: fitted growth exponent at most this, with small residual.
DIVERGENCE_SLOPE = -0.05
DIVERGENCE_MAX_RESIDUAL = 0.2

#: Ceiling on the empirical log-Hoelder constant accepted as "regular".
LOG_HOLDER_CEILING = 10.0

#: Uniform bound asserted for the dilation family P_r on regular exponents.
UNIFORM_DILATION_CONSTANT = 2.0


def dyadic_radii(depth: int, start: int = 1) -> tuple[float, ...]:
    return tuple(1.0 - 2.0**-k for k in range(start, depth + 1))


# ---------------------------------------------------------------------------
# Fourier layer


@dataclass(frozen=True)
class FourierCoefficients:
    """Coefficients ``c_k = (1/N) sum_j f(theta_j) e^{-ik theta_j}`` in FFT order."""

    coeffs: np.ndarray

    @property
    def n(self) -> int:
        return self.coeffs.size

    @property
    def frequencies(self) -> np.ndarray:
        return np.fft.fftfreq(self.n, d=1.0 / self.n).astype(int)

    def __getitem__(self, k: int) -> complex:
        n = self.n
        if not -n // 2 <= k <= n // 2 - 1:
            raise IndexError(f"frequency {k} outside [-{n//2}, {n//2 - 1}]")
        return complex(self.coeffs[k % n])

    def to_samples(self) -> np.ndarray:
        return np.fft.ifft(self.coeffs * self.n)


def fourier_coefficients(f: CircleFunction) -> FourierCoefficients:
    return FourierCoefficients(np.fft.fft(f.values) / f.n)


def _apply_multiplier(f: CircleFunction, multiplier: np.ndarray) -> CircleFunction:
    spectrum = np.fft.fft(f.values) * multiplier
    return CircleFunction(np.fft.ifft(spectrum))


def poisson_dilate(f: CircleFunction, r: float) -> CircleFunction:
    """Boundary trace of the Poisson extension on the circle of radius ``r``.

    Implemented as the Fourier multiplier ``c_k -> r**|k| c_k``, which is the
    kernel integral exactly for band-limited data.
    """
    if not 0.0 <= r < 1.0:
        raise ValueError("dilation radius must lie in [0, 1)")
    k = np.abs(np.fft.fftfreq(f.n, d=1.0 / f.n))
    return _apply_multiplier(f, r**k)


def szego_project(f: CircleFunction) -> CircleFunction:
    """Analytic projection: zero out every negative-frequency coefficient."""
    k = np.fft.fftfreq(f.n, d=1.0 / f.n)
    return _apply_multiplier(f, (k >= 0).astype(float))


def poisson_kernel(z: complex, zeta: complex) -> float:
    """``(1 - |z|^2) / |z - zeta|^2`` for ``|z| < 1`` and unimodular ``zeta``."""
    if abs(z) >= 1.0:
        raise ValueError("the Poisson kernel needs |z| < 1")
    if abs(abs(zeta) - 1.0) > 1e-9:
        raise ValueError("the kernel's second argument must lie on the circle")
    return (1.0 - abs(z) ** 2) / abs(z - zeta) ** 2


# ---------------------------------------------------------------------------
# samplers: black-box evaluators on the open disk


@dataclass(frozen=True)
class DiskSampler:
    """Evaluator ``z -> f(z)`` on ``|z| < 1`` with optional boundary singularity.

    ``singularity = (zeta0, alpha)`` declares ``|f(z)| ~ |z - zeta0|**-alpha``
    near the unimodular point ``zeta0``; dilation grids refine toward it.
    Analytic samplers are spot-checked at construction with a discrete
    Cauchy-Riemann stencil on the circle of radius 1/2.
    """

    evaluator: Callable
    kind: str = "harmonic"
    singularity: tuple[complex, float] | None = None
    label: str = ""

    def __post_init__(self):
        if self.kind not in ("harmonic", "analytic"):
            raise ValueError(f"unknown sampler kind {self.kind!r}")
        if self.kind == "analytic":
            self._check_cauchy_riemann()

    def _check_cauchy_riemann(self, tol: float = 1e-6):
        h = 1e-5
        z = 0.5 * np.exp(1j * np.arange(8) * (TWO_PI / 8))
        fx = (self._eval(z + h) - self._eval(z - h)) / (2 * h)
        fy = (self._eval(z + 1j * h) - self._eval(z - 1j * h)) / (2 * h)
        scale = np.maximum(np.abs(fx) + np.abs(fy), 1.0)
        residual = float(np.max(np.abs(fx + 1j * fy) / scale))
        if residual > tol:
            raise ValueError(
                f"sampler declared analytic but Cauchy-Riemann residual is {residual:.2e}"
            )

    def _eval(self, z) -> np.ndarray:
        return np.asarray(self.evaluator(np.asarray(z, dtype=complex)), dtype=complex)

    def __call__(self, z):
        return self._eval(z)

    def boundary_restriction(self, r: float, n: int = DISK_GRID) -> CircleFunction:
        """Samples of ``theta -> f(r e^{i theta})`` with refinement metadata."""
        singularities = ()
        if self.singularity is not None:
            zeta0, alpha = self.singularity
            singularities = (Singularity(cmath.phase(zeta0) % TWO_PI, alpha),)
        return CircleFunction.from_callable(
            lambda t: self._eval(r * np.exp(1j * np.asarray(t))),
            n,
            singularities=singularities,
        )


def polynomial_sampler(coeffs: Sequence[complex]) -> DiskSampler:
    """Analytic polynomial ``sum_j coeffs[j] * z**j``."""
    c = np.asarray(coeffs, dtype=complex)
    return DiskSampler(
        evaluator=lambda z: np.polynomial.polynomial.polyval(z, c),
        kind="analytic",
        label="polynomial",
    )


def power_sampler(s: float, singular_point: complex = 1.0 + 0.0j) -> DiskSampler:
    """``f(z) = (1 - z/zeta0)**-s``: analytic on the disk, singular at ``zeta0``.

    Principal branch; real-positive on the real segment where the base is
    positive.  ``singular_point=1`` gives ``(1 - z)**-s``; ``singular_point=-1``
    gives ``(1 + z)**-s``.
    """
    zeta0 = complex(singular_point)
    if abs(abs(zeta0) - 1.0) > 1e-12:
        raise ValueError("the singular point must sit on the unit circle")

    def evaluate(z):
        return (1.0 - z / zeta0) ** (-s)

    return DiskSampler(evaluator=evaluate, kind="analytic",
                       singularity=(zeta0, s), label=f"power[{s}]")


def poisson_extension(u: CircleFunction, kind: str = "harmonic") -> DiskSampler:
    """Harmonic extension of band-limited boundary data.

    ``U(z) = sum_{k>=0} c_k z^k + sum_{k<0} c_k conj(z)^{|k|}``; analytic plus
    anti-analytic Horner evaluation, exact for trigonometric polynomials.
    """
    c = fourier_coefficients(u)
    freqs = c.frequencies
    pos = np.zeros(u.n // 2, dtype=complex)
    neg = np.zeros(u.n // 2 + 1, dtype=complex)
    for k, val in zip(freqs, c.coeffs):
        if k >= 0:
            pos[k] = val
        else:
            neg[-k] = val

    def evaluate(z):
        z = np.asarray(z, dtype=complex)
        return (np.polynomial.polynomial.polyval(z, pos)
                + np.polynomial.polynomial.polyval(np.conj(z), neg))

    return DiskSampler(evaluator=evaluate, kind=kind, label="poisson-extension")


# ---------------------------------------------------------------------------
# Hardy norms and membership verdicts


@dataclass(frozen=True)
class HardyReport:
    """Norms along an approach schedule with a membership verdict.

    The schedule holds dilation radii on the disk and line heights on the
    half-plane; growth is fitted against the approach scale (``1 - r`` or
    ``y``, named by ``scale_parameter``).  ``member`` is True when the norm
    sequence levels off (last three values within 5 percent of each other,
    or nonincreasing), False when the norms follow a growing power law in
    the scale (fitted exponent at most -0.05 with residual under 0.2) or
    some norm is infinite, and None when neither rule fires.  The reported
    ``hardy_norm`` is the max over the schedule, an approximation of the
    sup over all parameters (``sup_is_schedule_max``).
    """

    schedule: tuple[float, ...]
    norms: tuple[NormResult, ...]
    modulars: tuple[float, ...]
    hardy_norm: float
    member: bool | None
    growth_exponent: float | None
    growth_residual: float | None
    modular_growth_exponent: float | None
    scale_parameter: str = "1-r"
    sup_is_schedule_max: bool = True

    @property
    def verdict(self) -> str:
        if self.member is None:
            return "inconclusive"
        return "member" if self.member else "non-member"

    def as_dict(self) -> dict:
        return {
            "schedule": list(self.schedule),
            "scale_parameter": self.scale_parameter,
            "norms": [nr.as_dict() for nr in self.norms],
            "modulars": [_json_float(m) for m in self.modulars],
            "hardy_norm": _json_float(self.hardy_norm),
            "member": self.member,
            "verdict": self.verdict,
            "growth_exponent": self.growth_exponent,
            "growth_residual": self.growth_residual,
            "modular_growth_exponent": self.modular_growth_exponent,
            "sup_is_schedule_max": self.sup_is_schedule_max,
        }

    def to_csv_rows(self):
        rows = [[s, nr.value, m] for s, nr, m in
                zip(self.schedule, self.norms, self.modulars)]
        return ["schedule", "norm", "modular"], rows


def _radius_norm(sampler: DiskSampler, p: VariableExponent, r: float, n: int):
    f_r = sampler.boundary_restriction(r, n)
    plan = build_plan(f_r, p)
    return norm_from_plan(plan, p), plan.value_at_scale(1.0)


def hardy_norm(
    sampler: DiskSampler,
    p: VariableExponent,
    radius_schedule: Sequence[float] | None = None,
    n: int = DISK_GRID,
    workers: int = 1,
) -> HardyReport:
    """Dilation norms over a radius schedule plus the membership verdict.

    Radii must increase within ``[0, 1)``; the default is the dyadic
    schedule ``1 - 2**-k`` for ``k = 1..12``.  Per-radius computations are
    independent; ``workers > 1`` runs them on a thread pool with results
    reduced in schedule order, so output is identical for any worker count.
    """
    radii = tuple(radius_schedule) if radius_schedule is not None else dyadic_radii(
        DEFAULT_RADIUS_DEPTH
    )
    if any(not 0.0 <= r < 1.0 for r in radii) or list(radii) != sorted(radii):
        raise ValueError("radius schedule must increase within [0, 1)")

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda r: _radius_norm(sampler, p, r, n), radii))
    else:
        results = [_radius_norm(sampler, p, r, n) for r in radii]
    norms = tuple(nr for nr, _ in results)
    modulars = tuple(m for _, m in results)
    return schedule_report(radii, norms, modulars, scale_parameter="1-r")


def schedule_report(schedule, norms, modulars, scale_parameter="1-r") -> HardyReport:
    """Assemble a :class:`HardyReport` and apply the membership verdict rules."""
    values = np.array([nr.value for nr in norms])
    finite = np.isfinite(values)
    hardy = float(np.max(values[finite])) if finite.any() else math.inf
    if not finite.all():
        hardy = math.inf

    if scale_parameter == "1-r":
        scales = 1.0 - np.asarray(schedule)
    else:
        scales = np.asarray(schedule, dtype=float)
    win = tail_window(values)
    growth = fit_loglog(scales[win], values[win])
    modular_growth = fit_loglog(scales[win], np.asarray(modulars)[win])
    growth_exponent = growth.slope if growth.points_used >= 2 else None
    growth_residual = growth.residual if growth.points_used >= 2 else None
    modular_exponent = (modular_growth.slope
                        if modular_growth.points_used >= 2 else None)

    member: bool | None
    if not finite.all():
        member = False
    else:
        tail = values[-3:] if values.size >= 3 else values
        positive = tail[tail > 0]
        if positive.size == 0:
            member = True  # identically zero tail
        elif float(np.max(positive)) <= BOUNDED_TAIL_FACTOR * float(np.min(positive)):
            member = True
        elif np.all(np.diff(tail) <= 0.0):
            member = True
        elif (growth_exponent is not None
              and growth_exponent <= DIVERGENCE_SLOPE
              and growth_residual is not None
              and growth_residual < DIVERGENCE_MAX_RESIDUAL):
            member = False
        else:
            member = None

    return HardyReport(
        schedule=tuple(float(r) for r in schedule),
        norms=norms,
        modulars=tuple(float(m) for m in modulars),
        hardy_norm=hardy,
        member=member,
        growth_exponent=growth_exponent,
        growth_residual=growth_residual,
        modular_growth_exponent=modular_exponent,
        scale_parameter=scale_parameter,
    )


# ---------------------------------------------------------------------------
# convergence, recovery, inclusion, reproduction


@dataclass(frozen=True)
class ConvergenceReport:
    radii: tuple[float, ...]
    deficits: tuple[float, ...]
    base_norm: float
    sup_dilation_ratio: float
    uniform_bound: float
    uniform_bound_ok: bool

    def as_dict(self) -> dict:
        return {
            "radii": list(self.radii),
            "deficits": [_json_float(d) for d in self.deficits],
            "base_norm": _json_float(self.base_norm),
            "sup_dilation_ratio": _json_float(self.sup_dilation_ratio),
            "uniform_bound": self.uniform_bound,
            "uniform_bound_ok": self.uniform_bound_ok,
        }


def poisson_convergence_check(
    f: CircleFunction,
    p: VariableExponent,
    radii: Sequence[float],
    regularity_ceiling: float = LOG_HOLDER_CEILING,
    uniform_constant: float = UNIFORM_DILATION_CONSTANT,
) -> ConvergenceReport:
    """Deficits ``||f - P_r f||`` along the schedule, plus the uniform bound.

    Requires a log-Hoelder exponent: the empirical constant on a 256-point
    grid must not exceed ``regularity_ceiling``.  Also records
    ``sup_r ||P_r f|| / ||f||`` and whether it stays below the configured
    uniform constant.
    """
    report = log_holder_constant(p, 256)
    if not report.is_log_holder(regularity_ceiling):
        raise ValueError(
            f"exponent fails the regularity ceiling: c_log estimate "
            f"{report.c_log_estimate:.3g} > {regularity_ceiling}"
        )
    base = luxemburg_norm(f, p).value
    deficits, ratios = [], []
    for r in radii:
        dilated = poisson_dilate(f, r)
        deficit = f.map_values(f.values - dilated.values)
        deficits.append(luxemburg_norm(deficit, p).value)
        ratios.append(luxemburg_norm(dilated, p).value / base if base > 0 else 0.0)
    sup_ratio = float(max(ratios)) if ratios else 0.0
    return ConvergenceReport(
        radii=tuple(float(r) for r in radii),
        deficits=tuple(deficits),
        base_norm=base,
        sup_dilation_ratio=sup_ratio,
        uniform_bound=uniform_constant,
        uniform_bound_ok=sup_ratio <= uniform_constant,
    )


def boundary_recovery_check(sampler: DiskSampler, u: CircleFunction,
                            r_max: float = 1.0 - 2.0**-12) -> float:
    """Max over grid nodes of ``|U(r_max e^{i theta_j}) - u(theta_j)|``."""
    z = r_max * np.exp(1j * u.nodes)
    return float(np.max(np.abs(sampler(z) - u.values)))


@dataclass(frozen=True)
class InclusionReport:
    """Hardy norms under p_max, p, p_min with the modular-level constants.

    ``c_upper`` bounds the variable modular of dilations of ``f`` scaled to
    unit ``p_max``-Hardy norm; ``c_lower`` bounds the constant ``p_min``
    modular of dilations scaled to unit variable Hardy norm.
    """

    norm_p_max: float
    norm_variable: float
    norm_p_min: float
    c_upper: float
    c_lower: float

    def as_dict(self) -> dict:
        return {
            "norm_p_max": _json_float(self.norm_p_max),
            "norm_variable": _json_float(self.norm_variable),
            "norm_p_min": _json_float(self.norm_p_min),
            "c_upper": _json_float(self.c_upper),
            "c_lower": _json_float(self.c_lower),
        }


def inclusion_check(
    sampler: DiskSampler,
    p: VariableExponent,
    radius_schedule: Sequence[float] | None = None,
    n: int = 2**10,
) -> InclusionReport:
    """Check the continuous-inclusion chain on a bounded sampler.

    Computes the Hardy norms under the constant exponent ``p_max``, under
    ``p`` itself, and under the constant ``p_min``, then evaluates the two
    modular implications behind the inclusions with explicit constants.
    """
    radii = tuple(radius_schedule) if radius_schedule is not None else dyadic_radii(8)
    p_hi = constant_exponent(p.p_max, domain="circle")
    p_lo = constant_exponent(p.p_min, domain="circle")

    plans_var, plans_hi, plans_lo = [], [], []
    for r in radii:
        f_r = sampler.boundary_restriction(r, n)
        plans_var.append(build_plan(f_r, p))
        plans_hi.append(build_plan(f_r, p_hi))
        plans_lo.append(build_plan(f_r, p_lo))

    def schedule_norm(plans, exponent):
        return max(norm_from_plan(plan, exponent).value for plan in plans)

    norm_hi = schedule_norm(plans_hi, p_hi)
    norm_var = schedule_norm(plans_var, p)
    norm_lo = schedule_norm(plans_lo, p_lo)

    c_upper = max(plan.value_at_scale(norm_hi) for plan in plans_var) \
        if norm_hi > 0 else 0.0
    c_lower = max(plan.value_at_scale(norm_var) for plan in plans_lo) \
        if norm_var > 0 else 0.0
    return InclusionReport(norm_hi, norm_var, norm_lo, c_upper, c_lower)


def reproduce_at(sampler: DiskSampler, z: complex, n: int = 4096) -> complex:
    """Evaluate ``f(z)`` through the boundary reproducing integral.

    Normalized-measure quadrature of ``f(zeta) / (1 - conj(zeta) z)`` over the
    circle; exact for polynomials up to aliasing ``|z|**(n - degree)``.  The
    sampler must be analytic with boundary-evaluable trace.
    """
    if sampler.kind != "analytic":
        raise ValueError("the reproducing integral requires an analytic sampler")
    if abs(z) >= 1.0:
        raise ValueError("the evaluation point must lie inside the disk")
    theta = np.arange(n) * (TWO_PI / n)
    zeta = np.exp(1j * theta)
    vals = sampler(zeta)
    return complex(np.mean(vals / (1.0 - np.conj(zeta) * z)))


# ---------------------------------------------------------------------------
# the membership counterexample pair


@dataclass(frozen=True)
class MembershipPairReport:
    """Verdicts for the pair ``(1 + z)**-s`` and ``(1 - z)**-s``.

    Under the plateau/cosine exponent the first stays in the space while the
    second leaves it, and the second's modular blow-up follows the power law
    ``(1 - r)**(1 - 3 s)``.  Swapping to the constant exponent ``q`` flips
    the first verdict, exhibiting that the variable-exponent space differs
    from every classical one in ``[2, 3]``.
    """

    q: float
    eps: float
    s: float
    f_variable: HardyReport
    g_variable: HardyReport
    f_constant_q: HardyReport
    g_theoretical_modular_slope: float
    f_constant_theoretical_slope: float

    def as_dict(self) -> dict:
        return {
            "q": self.q,
            "eps": self.eps,
            "s": self.s,
            "f_variable": self.f_variable.as_dict(),
            "g_variable": self.g_variable.as_dict(),
            "f_constant_q": self.f_constant_q.as_dict(),
            "g_theoretical_modular_slope": self.g_theoretical_modular_slope,
            "f_constant_theoretical_slope": self.f_constant_theoretical_slope,
        }


def membership_pair_report(
    q: float,
    eps: float,
    radius_schedule: Sequence[float] | None = None,
    n: int = DISK_GRID,
    workers: int = 1,
) -> MembershipPairReport:
    """Run the counterexample experiment at parameters ``(q, eps)``.

    Requires ``2 < q <= 3`` and ``1/q < 1/q + eps < 1/2``.  The pair is
    ``f(z) = (1 + z)**-s`` (singular where the exponent plateau is 2) and
    ``g(z) = (1 - z)**-s`` (singular where it is 3), with ``s = 1/q + eps``.
    """
    if not 2.0 < q <= 3.0:
        raise ValueError("q must satisfy 2 < q <= 3")
    s = 1.0 / q + eps
    if not (1.0 / q < s < 0.5):
        raise ValueError("eps must satisfy 1/q < 1/q + eps < 1/2")
    if radius_schedule is None:
        radius_schedule = dyadic_radii(14)

    p_var = counterexample_exponent()
    f = power_sampler(s, singular_point=-1.0)
    g = power_sampler(s, singular_point=+1.0)
    f_var = hardy_norm(f, p_var, radius_schedule, n, workers)
    g_var = hardy_norm(g, p_var, radius_schedule, n, workers)
    f_const = hardy_norm(f, constant_exponent(q), radius_schedule, n, workers)
    return MembershipPairReport(
        q=q,
        eps=eps,
        s=s,
        f_variable=f_var,
        g_variable=g_var,
        f_constant_q=f_const,
        g_theoretical_modular_slope=1.0 - 3.0 * s,
        f_constant_theoretical_slope=1.0 - q * s,
    )


# ---------------------------------------------------------------------------
# empirical boundedness of the analytic projection


@dataclass(frozen=True)
class ProjectionBoundReport:
    trials: int
    seed: int
    max_ratio: float
    mean_ratio: float
    ratios: tuple[float, ...] = ()

    def as_dict(self) -> dict:
        quantiles = {}
        if self.ratios:
            arr = np.asarray(self.ratios)
            quantiles = {f"q{int(100 * q)}": float(np.quantile(arr, q))
                         for q in (0.5, 0.9, 0.99)}
        return {
            "trials": self.trials,
            "seed": self.seed,
            "max_ratio": _json_float(self.max_ratio),
            "mean_ratio": _json_float(self.mean_ratio),
            **quantiles,
        }


def szego_boundedness_experiment(
    p: VariableExponent,
    trials: int = 1000,
    seed: int = 0,
    degree: int = 8,
    n: int = 256,
) -> ProjectionBoundReport:
    """Empirical operator-norm proxy ``max ||Kf|| / ||f||`` over seeded inputs.

    Backs the boundedness of the analytic projection on regular exponents by
    experiment: the ratio should stay bounded across the whole corpus.
    """
    from .boundary import seeded_trig_polynomial

    ratios = []
    for trial in range(trials):
        f = seeded_trig_polynomial(seed + trial, degree=degree, n=n)
        denom = luxemburg_norm(f, p).value
        if denom == 0.0:
            continue
        ratios.append(luxemburg_norm(szego_project(f), p).value / denom)
    arr = np.asarray(ratios)
    return ProjectionBoundReport(
        trials=trials,
        seed=seed,
        max_ratio=float(np.max(arr)),
        mean_ratio=float(np.mean(arr)),
        ratios=tuple(float(x) for x in arr),
    )

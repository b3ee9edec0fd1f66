"""Variable-exponent Hardy spaces on the upper half-plane.

The kernel here is ``P_y(x) = y / (pi (x**2 + y**2))``: unit mass on the line
for every ``y``, an approximate identity as ``y -> 0``, and a convolution
semigroup in ``y``.  Line integrals are truncated to ``[-T, T]``; the kernel
tail past the truncation has the closed arctangent form and sampled functions
carry power-decay tail models, so truncation error is corrected rather than
ignored.  Heights play the role the dilation radii play on the disk:
``halfplane_hardy_norm`` walks a schedule of lines ``y = const`` and reuses
the same membership verdict rules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.signal import fftconvolve

from .boundary import LineFunction, TailModel
from .disk import HardyReport, schedule_report
from .exponents import VariableExponent, conjugate, lh_infinity_constant, log_holder_constant
from .norms import (
    HOLDER_CONSTANT,
    _json_float,
    build_plan,
    indicator_norm,
    luxemburg_norm,
    norm_from_plan,
)

#: Default truncation half-width for line integrals.
LINE_HALFWIDTH = 32.0

#: Grid spacing rule: at most the narrowest kernel height over this factor.
SPACING_FACTOR = 8.0

#: Default height schedule: both ends probed, boundary approached last.
DEFAULT_HEIGHTS = tuple(2.0**-k for k in range(-3, 9))

#: Ceilings accepted for membership of the exponent in the regular class.
LOG_HOLDER_CEILING = 10.0
DECAY_CEILING = 10.0

#: Octave range for the numerically integrated kernel-tail corrections.
TAIL_CORRECTION_OCTAVES = 40


def poisson_kernel_halfplane(x, y: float):
    """``P_y(x) = y / (pi (x**2 + y**2))``, vectorized over ``x``."""
    if y <= 0.0:
        raise ValueError("the half-plane kernel needs y > 0")
    x = np.asarray(x, dtype=float)
    return y / (math.pi * (x * x + y * y))


def kernel_mass(y: float, halfwidth: float = LINE_HALFWIDTH,
                spacing: float | None = None) -> float:
    """Grid mass of ``P_y`` on ``[-T, T]`` plus the exact arctangent tail.

    The truncation is widened to at least ``64 y`` and the trapezoid's
    leading Euler-Maclaurin boundary term is removed analytically, so the
    returned mass is exact to well below 1e-6 across height scales.
    """
    if spacing is None:
        spacing = y / SPACING_FACTOR
    T = max(halfwidth, 64.0 * y)
    m = int(math.ceil(T / spacing))
    h = T / m
    x = np.arange(-m, m + 1) * h
    grid_mass = float(np.trapezoid(poisson_kernel_halfplane(x, y), x))
    deriv_edge = -2.0 * T * y / (math.pi * (T * T + y * y) ** 2)
    grid_mass -= (h * h / 12.0) * (2.0 * deriv_edge)
    tail = 1.0 - (2.0 / math.pi) * math.atan(T / y)
    return grid_mass + tail


def _uniform_step(u: LineFunction) -> float:
    dx = np.diff(u.x)
    h = float(dx[0])
    if not np.allclose(dx, h, rtol=1e-9, atol=0.0):
        raise ValueError("convolution requires a uniform grid")
    return h


def _tail_correction(u: LineFunction, y: float, x_out: np.ndarray) -> np.ndarray:
    """Contribution of the modeled tails ``|t| > T`` to ``P_y * u`` at ``x_out``.

    The tail profile is ``edge_value * (|t|/T)**(-beta)``, integrated on
    dyadic log cells.  Per side, the correction is a function of the distance
    ``d`` from that grid edge only; it is tabulated on a log-spaced distance
    grid (dense at scale ``y`` near the edge, where the kernel peak enters)
    and interpolated onto the output points.
    """
    if u.tail is None:
        return np.zeros(x_out.size, dtype=complex)
    beta = u.tail.exponent
    out = np.zeros(x_out.size, dtype=complex)
    gx, gw = np.polynomial.legendre.leggauss(4)
    for side, edge, edge_value in ((-1.0, float(u.x[0]), u.values[0]),
                                   (+1.0, float(u.x[-1]), u.values[-1])):
        amplitude = edge_value if u.tail.amplitude is None else u.tail.amplitude
        if amplitude == 0:
            continue
        T = abs(edge)
        # cells geometric in the distance past the edge, resolving the kernel
        # scale y right at the edge and reaching far enough for any
        # integrable power profile to underflow
        reach = T * 2.0**TAIL_CORRECTION_OCTAVES
        s_edges = np.concatenate([[0.0],
                                  np.geomspace(min(y, T) * 1e-3, reach, 480)])
        edges = T + s_edges
        mid = 0.5 * (edges[1:] + edges[:-1])
        half = 0.5 * (edges[1:] - edges[:-1])
        t = (mid[:, None] + half[:, None] * gx[None, :]).ravel()
        w = (half[:, None] * gw[None, :]).ravel()
        profile = amplitude * (t / T) ** (-beta)
        # distance inward from this edge; the correction depends on x through it alone
        d = (edge - x_out) * side
        span = float(np.max(d)) if d.size else 0.0
        probes = np.concatenate([[0.0],
                                 np.geomspace(y * 1e-3, max(span, y), 1024)])
        kernel = poisson_kernel_halfplane(probes[:, None] + (t[None, :] - T), y)
        corr = kernel @ (w * profile)
        out += CubicSpline(probes, corr)(d)
    return out


def _kernel_derivative(x, y: float):
    x = np.asarray(x, dtype=float)
    return -2.0 * x * y / (math.pi * (x * x + y * y) ** 2)


def _edge_derivative_difference(u: LineFunction, y: float) -> np.ndarray:
    """Euler-Maclaurin boundary term ``g'(b) - g'(a)`` of the convolution.

    ``g(t) = u(t) P_y(x - t)``; the kernel part is analytic and the data
    slope comes from one-sided second-order differences.  Matters only when
    the data does not vanish at the truncation edges.
    """
    h = float(u.x[1] - u.x[0])
    v = u.values
    du_a = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h)
    du_b = (3.0 * v[-1] - 4.0 * v[-2] + v[-3]) / (2.0 * h)

    def g_prime(edge_value, edge_slope, edge):
        return (edge_slope * poisson_kernel_halfplane(u.x - edge, y)
                - edge_value * _kernel_derivative(u.x - edge, y))

    return g_prime(v[-1], du_b, u.x[-1]) - g_prime(v[0], du_a, u.x[0])


def poisson_convolve(u: LineFunction, y: float) -> LineFunction:
    """``P_y * u`` on the grid of ``u``, with analytic tail correction.

    The grid part is the trapezoid convolution (computed by FFT); the part of
    the line past the grid contributes through the tail model.  Callers
    should check :meth:`LineFunction.truncation_uncertain` when feeding data
    without a tail model whose edge values are not negligible.
    """
    if y <= 0.0:
        raise ValueError("the half-plane kernel needs y > 0")
    h = _uniform_step(u)
    n = u.x.size
    offsets = (np.arange(2 * n - 1) - (n - 1)) * h
    kernel = poisson_kernel_halfplane(offsets, y)
    conv = fftconvolve(u.values, kernel, mode="same") * h
    # trapezoid end-correction: the plain discrete sum carries full weight at
    # the two boundary samples
    conv = conv - 0.5 * h * (
        u.values[0] * poisson_kernel_halfplane(u.x - u.x[0], y)
        + u.values[-1] * poisson_kernel_halfplane(u.x - u.x[-1], y)
    )
    conv = conv - (h * h / 12.0) * _edge_derivative_difference(u, y)
    conv = conv + _tail_correction(u, y, u.x)
    tail_exp = 2.0 if u.tail is None else min(2.0, u.tail.exponent)
    return LineFunction(u.x, conv, tail=TailModel(exponent=tail_exp))


@dataclass(frozen=True)
class HalfplaneSampler:
    """Evaluator ``(x, y) -> f(x + iy)`` for ``y > 0``.

    ``decay_hint`` is the tail power per fixed height: ``|f(x + iy)|`` decays
    like ``|x|**(-decay_hint)``; it feeds the tail models of the sampled
    lines, which is how non-decaying functions are detected as lying outside
    the space.
    """

    evaluator: Callable
    kind: str = "harmonic"
    decay_hint: float = 0.0
    label: str = ""

    def __call__(self, x, y: float):
        return np.asarray(self.evaluator(np.asarray(x, dtype=float), y), dtype=complex)

    def line_restriction(self, y: float, halfwidth: float = LINE_HALFWIDTH,
                         spacing: float | None = None) -> LineFunction:
        if spacing is None:
            spacing = y / SPACING_FACTOR
        m = int(math.ceil(halfwidth / spacing))
        x = np.arange(-m, m + 1) * (halfwidth / m)
        return LineFunction(x, self(x, y), tail=TailModel(exponent=self.decay_hint))


def poisson_extension_sampler(u: LineFunction, kind: str = "harmonic",
                              decay_hint: float = 2.0) -> HalfplaneSampler:
    """The harmonic extension ``(x, y) -> (P_y * u)(x)`` as a sampler."""

    def evaluate(x, y):
        conv = poisson_convolve(u, y)
        return np.interp(np.asarray(x, dtype=float), conv.x, conv.values.real) + \
            1j * np.interp(np.asarray(x, dtype=float), conv.x, conv.values.imag)

    return HalfplaneSampler(evaluate, kind=kind, decay_hint=decay_hint,
                            label="poisson-extension")


def require_lh_class(p: VariableExponent,
                     log_ceiling: float = LOG_HOLDER_CEILING,
                     decay_ceiling: float = DECAY_CEILING) -> None:
    """Raise unless ``p`` looks like a regular line exponent.

    Checks the local log-Hoelder constant on a grid and, when a limit value
    is declared, the decay constant at infinity, both against ceilings.
    """
    if p.domain != "line":
        raise ValueError("a line-domain exponent is required")
    reg = log_holder_constant(p, 256)
    if not reg.is_log_holder(log_ceiling):
        raise ValueError(
            f"exponent fails the local regularity ceiling: {reg.c_log_estimate:.3g}"
        )
    if p.p_infinity is not None:
        decay = lh_infinity_constant(p, p.p_infinity, np.geomspace(1.0, 1e6, 121))
        if decay > decay_ceiling:
            raise ValueError(f"exponent decay constant too large: {decay:.3g}")


@dataclass(frozen=True)
class ApproximateIdentityReport:
    heights: tuple[float, ...]
    deficits: tuple[float, ...]
    base_norm: float
    sup_convolution_ratio: float
    uniform_bound: float
    uniform_bound_ok: bool

    def as_dict(self) -> dict:
        return {
            "heights": list(self.heights),
            "deficits": [_json_float(d) for d in self.deficits],
            "base_norm": _json_float(self.base_norm),
            "sup_convolution_ratio": _json_float(self.sup_convolution_ratio),
            "uniform_bound": self.uniform_bound,
            "uniform_bound_ok": self.uniform_bound_ok,
        }


def approximate_identity_check(
    u: LineFunction,
    p: VariableExponent,
    y_schedule: Sequence[float] | None = None,
    uniform_constant: float = 2.0,
) -> ApproximateIdentityReport:
    """Deficits ``||P_y * u - u||`` along a height schedule.

    For a regular exponent and continuous compactly supported data the
    deficits decrease to zero as ``y -> 0``; the report also records
    ``sup_y ||P_y * u|| / ||u||`` against the configured uniform constant.
    """
    require_lh_class(p)
    heights = tuple(y_schedule) if y_schedule is not None else tuple(
        2.0**-k for k in range(1, 11)
    )
    base = luxemburg_norm(u, p).value
    deficits, ratios = [], []
    for y in heights:
        conv = poisson_convolve(u, y)
        deficit = conv.map_values(conv.values - u.values,
                                  tail=TailModel(exponent=2.0))
        deficits.append(luxemburg_norm(deficit, p).value)
        ratios.append(luxemburg_norm(conv, p).value / base if base > 0 else 0.0)
    sup_ratio = float(max(ratios)) if ratios else 0.0
    return ApproximateIdentityReport(
        heights=heights,
        deficits=tuple(deficits),
        base_norm=base,
        sup_convolution_ratio=sup_ratio,
        uniform_bound=uniform_constant,
        uniform_bound_ok=sup_ratio <= uniform_constant,
    )


def halfplane_hardy_norm(
    sampler: HalfplaneSampler,
    p: VariableExponent,
    y_schedule: Sequence[float] | None = None,
    halfwidth: float = LINE_HALFWIDTH,
) -> HardyReport:
    """Luxemburg norms along horizontal lines with the membership verdict.

    The schedule probes both large heights and the approach to the boundary;
    it must end at the smallest height so the verdict rules (shared with the
    disk) read the boundary approach from the schedule tail.  All lines share
    one grid spacing, the narrowest height over ``SPACING_FACTOR``.
    """
    heights = tuple(y_schedule) if y_schedule is not None else DEFAULT_HEIGHTS
    if any(y <= 0 for y in heights) or list(heights) != sorted(heights, reverse=True):
        raise ValueError("height schedule must be positive and decreasing")
    spacing = min(heights) / SPACING_FACTOR
    norms, modulars = [], []
    for y in heights:
        line = sampler.line_restriction(y, halfwidth, spacing)
        plan = build_plan(line, p)
        norms.append(norm_from_plan(plan, p))
        modulars.append(plan.value_at_scale(1.0))
    return schedule_report(heights, tuple(norms), tuple(modulars),
                           scale_parameter="y")


@dataclass(frozen=True)
class HkBoundReport:
    """Interior boundedness check on the level set ``y >= k``.

    Each probe pairs the observed ``|U(z0)|`` with the mean-value bound
    assembled from the schedule sup of the line norms, the Hoelder constant,
    and the indicator norm at radius ``R = k/2``.
    """

    k: float
    radius: float
    sup_line_norm: float
    probes: tuple[tuple[complex, float, float], ...]
    sup_observed: float
    all_hold: bool

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "radius": self.radius,
            "sup_line_norm": _json_float(self.sup_line_norm),
            "probes": [
                {"z": [z.real, z.imag], "observed": _json_float(o),
                 "bound": _json_float(b)}
                for z, o, b in self.probes
            ],
            "sup_observed": _json_float(self.sup_observed),
            "all_hold": self.all_hold,
        }


def hk_bound_check(
    sampler: HalfplaneSampler,
    p: VariableExponent,
    k: float,
    probe_points: Sequence[complex],
    y_schedule: Sequence[float] | None = None,
) -> HkBoundReport:
    """Verify ``|U|`` is bounded on ``{y >= k}`` by the mean-value chain.

    Averaging ``U`` over the disk of radius ``R = k/2`` at ``z0 = a + ib``
    and pairing the double integral with the indicator of ``(a-R, a+R)``
    gives ``|U(z0)| <= (4 K / (pi R)) * sup_y ||U_y|| * ||chi_(a-R,a+R)||_q``
    with ``K`` the Hoelder constant; every probe is checked against its own
    bound.
    """
    if k <= 0.0:
        raise ValueError("the level k must be positive")
    R = k / 2.0
    q = conjugate(p)
    report = halfplane_hardy_norm(sampler, p, y_schedule)
    sup_norm = report.hardy_norm
    probes = []
    for z0 in probe_points:
        z0 = complex(z0)
        if z0.imag < k:
            raise ValueError(f"probe {z0} lies below the level y = {k}")
        observed = float(abs(sampler(np.array([z0.real]), z0.imag)[0]))
        chi = indicator_norm(z0.real, R, q)
        bound = 4.0 * HOLDER_CONSTANT / (math.pi * R) * sup_norm * chi
        probes.append((z0, observed, bound))
    sup_observed = max(o for _, o, _ in probes)
    return HkBoundReport(
        k=k,
        radius=R,
        sup_line_norm=sup_norm,
        probes=tuple(probes),
        sup_observed=sup_observed,
        all_hold=all(o <= b for _, o, b in probes),
    )


@dataclass(frozen=True)
class RepresentationReport:
    """Round-trip residual between a sampler and the extension of its trace."""

    residual: float
    sup_line_norm: float
    boundary_norm: float
    ratio: float

    def as_dict(self) -> dict:
        return {
            "residual": _json_float(self.residual),
            "sup_line_norm": _json_float(self.sup_line_norm),
            "boundary_norm": _json_float(self.boundary_norm),
            "ratio": _json_float(self.ratio),
        }


def boundary_representation_check(
    sampler: HalfplaneSampler,
    u_candidate: LineFunction,
    p: VariableExponent,
    probe_heights: Sequence[float] = (0.25, 0.5, 1.0, 2.0),
    y_schedule: Sequence[float] | None = None,
) -> RepresentationReport:
    """Compare the sampler against the convolution extension of the candidate.

    The residual is the max over the probe lines (inner half of the grid, to
    stay away from truncation edges) of ``|U(x + iy) - (P_y * u)(x)|``; the
    report also pairs ``sup_y ||U_y||`` with ``||u||`` as the two sides of
    the norm equivalence.
    """
    residual = 0.0
    inner = np.abs(u_candidate.x) <= 0.5 * float(u_candidate.x[-1])
    for y in probe_heights:
        conv = poisson_convolve(u_candidate, y)
        direct = sampler(u_candidate.x[inner], y)
        residual = max(residual,
                       float(np.max(np.abs(direct - conv.values[inner]))))
    report = halfplane_hardy_norm(sampler, p, y_schedule)
    boundary_norm = luxemburg_norm(u_candidate, p).value
    ratio = report.hardy_norm / boundary_norm if boundary_norm > 0 else math.inf
    return RepresentationReport(
        residual=residual,
        sup_line_norm=report.hardy_norm,
        boundary_norm=boundary_norm,
        ratio=ratio,
    )


# ---------------------------------------------------------------------------
# stock samplers and line data for experiments


def gaussian_bump(sigma: float = 2.0, amplitude: float = 1.0,
                  halfwidth: float = LINE_HALFWIDTH,
                  spacing: float = 2.0**-11 / 4.0) -> LineFunction:
    """A smooth rapidly decaying bump; effectively compactly supported."""
    return LineFunction.uniform(
        lambda x: amplitude * np.exp(-(x / sigma) ** 2), halfwidth, spacing
    )


def cosine_bump(halfwidth_support: float = 2.0, amplitude: float = 1.0,
                halfwidth: float = LINE_HALFWIDTH,
                spacing: float = 2.0**-11 / 4.0) -> LineFunction:
    """``amplitude * cos(pi x / (2 a))**2`` on ``[-a, a]``, zero outside."""

    def evaluate(x):
        inside = np.abs(x) < halfwidth_support
        return np.where(
            inside, amplitude * np.cos(math.pi * x / (2 * halfwidth_support)) ** 2, 0.0
        )

    return LineFunction.uniform(evaluate, halfwidth, spacing)


def cauchy_profile(halfwidth: float = LINE_HALFWIDTH,
                   spacing: float = 2.0**-5) -> LineFunction:
    """``u(t) = 1 / (1 + t**2)`` with its exact quadratic tail model."""
    return LineFunction.uniform(lambda x: 1.0 / (1.0 + x * x), halfwidth, spacing,
                                tail=TailModel(exponent=2.0))


def cauchy_extension_sampler() -> HalfplaneSampler:
    """Closed-form harmonic extension of the Cauchy profile.

    ``U(x + iy) = (1 + y) / (x**2 + (1 + y)**2)``, the kernel semigroup
    applied to ``1/(1 + t**2)``.
    """
    return HalfplaneSampler(
        evaluator=lambda x, y: (1.0 + y) / (x * x + (1.0 + y) ** 2),
        kind="harmonic",
        decay_hint=2.0,
        label="cauchy-extension",
    )


def constant_sampler(value: complex = 1.0) -> HalfplaneSampler:
    return HalfplaneSampler(
        evaluator=lambda x, y: np.full(np.asarray(x).shape, value, dtype=complex),
        kind="harmonic",
        decay_hint=0.0,
        label="constant",
    )


def inverse_pole_sampler() -> HalfplaneSampler:
    """Imaginary part of ``1/(z + i)``: harmonic, decays like ``|x|**-2``."""

    def evaluate(x, y):
        return np.imag(1.0 / (x + 1j * (y + 1.0)))

    return HalfplaneSampler(evaluator=evaluate, kind="harmonic", decay_hint=2.0,
                            label="inverse-pole")

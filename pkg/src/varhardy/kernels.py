"""Reproducing-kernel norms and the scaling experiments built on them.

The kernel at ``z`` is ``w -> 1/(1 - conj(z) w)``.  Its Hardy norm under the
conjugate exponent controls the point-evaluation functional at ``z``; along a
ray ``z_k = (1 - 2**-k) e^{i theta}`` the norm follows the power law
``(1 - |z|)**(-1/p(theta))`` whenever ``theta`` is a continuity point of the
exponent, and the experiments here fit that slope numerically.  The growth
engine behind the law is the classical estimate
``integral dt / |1 - rho e^{it}|**s ~ (1 - rho)**(1 - s)`` for ``s > 1``,
checked directly by :func:`forelli_rudin_check`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .boundary import CircleFunction, Singularity
from .disk import DiskSampler, dyadic_radii, hardy_norm
from .exponents import VariableExponent, conjugate, constant_exponent
from .fitting import fit_loglog
from .norms import _json_float, build_plan

TWO_PI = 2.0 * math.pi

#: Baseline circle grid for kernel quadrature (peaks get graded refinement).
KERNEL_GRID = 2**13

#: Default ray depths for the evaluation-functional experiment.
DEFAULT_K_RANGE = tuple(range(3, 11))

#: A log-log fit with RMS residual above this is flagged unreliable.
UNRELIABLE_RESIDUAL = 0.5


@dataclass(frozen=True)
class ScalingReport:
    """(scale, value) pairs with the fitted and theoretical log-log slopes.

    ``points`` hold the scale parameter (``1 - |z|`` or ``1 - rho``) in
    decreasing order with the measured value; ``residual`` is the RMS of the
    log-log fit.  ``normalized_band`` optionally records the (min, max) of
    ``value * scale**(-theoretical_slope)``, the bounded-band form of the
    estimate.
    """

    points: tuple[tuple[float, float], ...]
    fitted_slope: float
    theoretical_slope: float
    residual: float
    unreliable_fit: bool
    normalized_band: tuple[float, float] | None = None

    def as_dict(self) -> dict:
        out = {
            "points": [[a, _json_float(b)] for a, b in self.points],
            "fitted_slope": self.fitted_slope,
            "theoretical_slope": self.theoretical_slope,
            "residual": self.residual,
            "unreliable_fit": self.unreliable_fit,
        }
        if self.normalized_band is not None:
            out["normalized_band"] = list(self.normalized_band)
        return out

    def to_csv_rows(self):
        header = ["log_scale", "log_value"]
        rows = [[math.log(a), math.log(b)] for a, b in self.points
                if b > 0 and math.isfinite(b)]
        return header, rows


def kernel_sampler(z: complex) -> DiskSampler:
    """The reproducing kernel at ``z`` as a disk sampler.

    Bounded on every smaller disk; the boundary peak sits at ``z/|z|`` with
    local power 1, which is what the dilation grids refine toward.
    """
    z = complex(z)
    if abs(z) >= 1.0:
        raise ValueError("kernel base point must lie inside the disk")
    singularity = (z / abs(z), 1.0) if z != 0 else None
    return DiskSampler(
        evaluator=lambda w: 1.0 / (1.0 - np.conj(z) * w),
        kind="analytic",
        singularity=singularity,
        label=f"kernel[{z}]",
    )


def kernel_boundary_values(z: complex, r: float, n: int) -> CircleFunction:
    """Samples of ``t -> 1/(1 - conj(z) r e^{it})`` on the ``n``-point grid."""
    if not 0.0 <= r < 1.0:
        raise ValueError("sampling radius must lie in [0, 1)")
    return kernel_sampler(z).boundary_restriction(r, n)


def kernel_hardy_norm(
    z: complex,
    q: VariableExponent,
    radius_schedule: Sequence[float] | None = None,
    n: int = KERNEL_GRID,
) -> float:
    """Hardy norm of the kernel at ``z`` under the exponent ``q``."""
    report = hardy_norm(kernel_sampler(z), q, radius_schedule, n)
    return report.hardy_norm


def evaluation_bound_experiment(
    p: VariableExponent,
    theta: float,
    k_range: Sequence[int] = DEFAULT_K_RANGE,
    n: int = KERNEL_GRID,
    schedule_margin: int = 4,
) -> ScalingReport:
    """Fit the kernel-norm growth along the ray at angle ``theta``.

    For ``z_k = (1 - 2**-k) e^{i theta}`` computes the Hardy norm of the
    kernel under the conjugate exponent and fits ``log norm`` against
    ``log(1 - |z_k|)``; the theoretical slope is ``-1/p(theta)``.  Each
    kernel's radius schedule descends ``schedule_margin`` dyadic steps past
    its own ``k`` so the effective peak scale is a fixed multiple of
    ``1 - |z_k|`` across the ray (a varying multiple would bend the fit).
    """
    q = conjugate(p)
    p_theta = float(p(np.array([theta]))[0])
    points = []
    for k in k_range:
        radius = 1.0 - 2.0**-k
        z = radius * cmath.exp(1j * theta)
        schedule = dyadic_radii(k + schedule_margin)
        points.append((2.0**-k, kernel_hardy_norm(z, q, schedule, n)))
    fit = fit_loglog([a for a, _ in points], [b for _, b in points])
    return ScalingReport(
        points=tuple(points),
        fitted_slope=fit.slope,
        theoretical_slope=-1.0 / p_theta,
        residual=fit.residual,
        unreliable_fit=fit.residual > UNRELIABLE_RESIDUAL,
    )


@dataclass(frozen=True)
class MajorizationReport:
    """Grid check that the comparison function is majorized on its peak set.

    ``phi(t) = (1 - |z|)**(1/q(theta)) / |1 - |z| r e^{i(t - theta)}|`` with
    ``q`` the conjugate exponent; the peak set is ``E2 = {phi > 1}``.  On it,
    regularity of the exponent forces ``phi**p(t) <= C * phi**p(theta)``, so
    ``max_ratio`` stays bounded no matter how close ``|z|`` and ``r`` get to
    1.  The supremum over an empty ``E2`` is reported as 1.  The two integral
    fields trace the estimate chain: the off-peak integral of
    ``phi**p(t)`` is at most ``2*pi``, and the peak integral is at most
    ``max_ratio`` times the frozen-exponent reference integral.
    """

    z: complex
    r: float
    max_ratio: float
    e2_size: int
    e1_integral: float
    e2_integral: float
    reference_integral: float

    def as_dict(self) -> dict:
        return {
            "z": [self.z.real, self.z.imag],
            "r": self.r,
            "max_ratio": _json_float(self.max_ratio),
            "e2_size": self.e2_size,
            "e1_integral": _json_float(self.e1_integral),
            "e2_integral": _json_float(self.e2_integral),
            "reference_integral": _json_float(self.reference_integral),
        }


def phi_majorization_check(
    p: VariableExponent,
    z: complex,
    r: float,
    n: int = 2**12,
) -> MajorizationReport:
    """Evaluate the peak-set majorization ratio on an ``n``-point grid."""
    if not 0.5 < r < 1.0:
        raise ValueError("the majorization check assumes 1/2 < r < 1")
    z = complex(z)
    theta = cmath.phase(z)
    q_theta = float(conjugate(p)(np.array([theta]))[0])
    p_theta = float(p(np.array([theta]))[0])

    t = np.arange(n) * (TWO_PI / n)
    phi = (1.0 - abs(z)) ** (1.0 / q_theta) / np.abs(
        1.0 - abs(z) * r * np.exp(1j * (t - theta))
    )
    p_t = np.asarray(p(t), dtype=float)
    on_peak = phi > 1.0

    ratios = phi[on_peak] ** (p_t[on_peak] - p_theta)
    max_ratio = float(np.max(ratios)) if ratios.size else 1.0

    h = TWO_PI / n
    e1 = float(np.sum(phi[~on_peak] ** p_t[~on_peak]) * h)
    e2 = float(np.sum(phi[on_peak] ** p_t[on_peak]) * h)
    reference = float(np.sum(phi**p_theta) * h)
    return MajorizationReport(
        z=z,
        r=r,
        max_ratio=max_ratio,
        e2_size=int(np.count_nonzero(on_peak)),
        e1_integral=e1,
        e2_integral=e2,
        reference_integral=reference,
    )


def forelli_rudin_check(
    s: float,
    rho_schedule: Sequence[float] | None = None,
    n: int = 2**12,
) -> ScalingReport:
    """Growth of ``I(rho) = integral dt / |1 - rho e^{it}|**s`` as ``rho -> 1``.

    Requires ``s > 1`` (the growth regime).  Fits ``log I`` against
    ``log(1 - rho)``; the theoretical slope is ``1 - s``, and the normalized
    values ``(1 - rho)**(s-1) * I(rho)`` are reported as a band, which stays
    bounded.  For ``s = 2`` the closed form is ``I = 2*pi/(1 - rho**2)``.
    """
    if not s > 1.0:
        raise ValueError("the growth estimate requires s > 1")
    if rho_schedule is None:
        rho_schedule = dyadic_radii(10, start=3)
    one = constant_exponent(1.0)
    points = []
    for rho in rho_schedule:
        f = CircleFunction.from_callable(
            lambda t, rho=rho: np.abs(1.0 - rho * np.exp(1j * t)) ** (-s),
            n,
            singularities=(Singularity(0.0, s),),
        )
        points.append((1.0 - rho, build_plan(f, one).value_at_scale(1.0)))
    fit = fit_loglog([a for a, _ in points], [b for _, b in points])
    normalized = [b * a ** (s - 1.0) for a, b in points]
    return ScalingReport(
        points=tuple(points),
        fitted_slope=fit.slope,
        theoretical_slope=1.0 - s,
        residual=fit.residual,
        unreliable_fit=fit.residual > UNRELIABLE_RESIDUAL,
        normalized_band=(float(min(normalized)), float(max(normalized))),
    )

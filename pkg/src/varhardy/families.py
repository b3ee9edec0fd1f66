"""Named function families addressable from configs and the command line.

Spec strings are colon-separated: a family name followed by parameters, e.g.
``constant:1``, ``exp:3``, ``trig:seed=7,degree=8``, ``power:+1:0.45`` (the
singular point on the circle, then the power), or ``csv:<path>``.
"""

from __future__ import annotations

import numpy as np

from .boundary import CircleFunction, LineFunction, seeded_trig_polynomial
from .disk import DiskSampler, poisson_extension, polynomial_sampler, power_sampler
from .halfplane import (
    HalfplaneSampler,
    cauchy_extension_sampler,
    cauchy_profile,
    constant_sampler,
    cosine_bump,
    gaussian_bump,
    inverse_pole_sampler,
    poisson_extension_sampler,
)
from .kernels import kernel_sampler


class FamilyError(ValueError):
    """Unknown family name or malformed parameters."""


def _split(spec: str):
    parts = spec.split(":")
    return parts[0], parts[1:]


def _kwargs(arg: str) -> dict:
    out = {}
    for item in arg.split(","):
        if not item:
            continue
        key, _, value = item.partition("=")
        out[key.strip()] = float(value)
    return out


def resolve_circle_function(spec: str, n: int = 256) -> CircleFunction:
    """Boundary data on the circle from a family spec string.

    Families: ``constant:<c>``, ``exp:<k>`` (the wave ``e^{ik theta}``),
    ``cos:<k>``, ``trig:seed=<s>,degree=<d>[,decay=<g>]`` (seeded random
    polynomial), ``csv:<path>``.
    """
    name, args = _split(spec)
    if name == "constant":
        return CircleFunction(np.full(n, complex(float(args[0]))))
    if name == "exp":
        k = int(float(args[0]))
        return CircleFunction.from_callable(lambda t: np.exp(1j * k * t), n)
    if name == "cos":
        k = int(float(args[0]))
        return CircleFunction.from_callable(lambda t: np.cos(k * t) + 0j, n)
    if name == "trig":
        kw = _kwargs(args[0]) if args else {}
        return seeded_trig_polynomial(
            int(kw.get("seed", 0)), degree=int(kw.get("degree", 8)), n=n,
            decay=kw.get("decay", 2.0),
        )
    if name == "csv":
        return CircleFunction.from_csv(":".join(args))
    raise FamilyError(f"unknown circle function family {spec!r}")


def resolve_disk_sampler(spec: str, n: int = 256) -> DiskSampler:
    """Disk sampler from a family spec string.

    Families: ``constant:<c>``, ``poly:<c0>,<c1>,...``, ``power:<+1|-1>:<s>``
    (``(1 - z/zeta0)**-s`` with the singular point ``zeta0``), ``geom:<a>``
    (``1/(1 - a z)``), ``kernel:<re>,<im>`` (reproducing kernel), and
    ``extension-of:<circle spec>`` (Poisson extension of boundary data).
    """
    name, args = _split(spec)
    if name == "constant":
        c = complex(float(args[0]))
        return DiskSampler(lambda z: np.full(np.shape(z), c), kind="analytic",
                           label=spec)
    if name == "poly":
        coeffs = [complex(float(x)) for x in args[0].split(",")]
        return polynomial_sampler(coeffs)
    if name == "power":
        return power_sampler(float(args[1]), singular_point=float(args[0]))
    if name == "geom":
        a = complex(float(args[0]))
        if abs(a) >= 1.0:
            raise FamilyError("geom parameter must have modulus < 1")
        return DiskSampler(lambda z: 1.0 / (1.0 - a * z), kind="analytic",
                           label=spec)
    if name == "kernel":
        re, im = (float(x) for x in args[0].split(","))
        return kernel_sampler(complex(re, im))
    if name == "extension-of":
        return poisson_extension(resolve_circle_function(":".join(args), n))
    raise FamilyError(f"unknown disk sampler family {spec!r}")


def resolve_line_function(spec: str, halfwidth: float = 32.0,
                          spacing: float = 2.0**-11) -> LineFunction:
    """Line data from a family spec string.

    Families: ``gaussian:<sigma>[,<amp>]``, ``cosbump:<support>[,<amp>]``,
    ``cauchy`` (the profile ``1/(1+t^2)`` with exact tail model),
    ``csv:<path>``.
    """
    name, args = _split(spec)
    if name == "gaussian":
        params = [float(x) for x in args[0].split(",")] if args else [2.0]
        sigma = params[0]
        amp = params[1] if len(params) > 1 else 1.0
        return gaussian_bump(sigma, amp, halfwidth, spacing)
    if name == "cosbump":
        params = [float(x) for x in args[0].split(",")] if args else [2.0]
        support = params[0]
        amp = params[1] if len(params) > 1 else 1.0
        return cosine_bump(support, amp, halfwidth, spacing)
    if name == "cauchy":
        return cauchy_profile(halfwidth, spacing)
    if name == "csv":
        return LineFunction.from_csv(":".join(args))
    raise FamilyError(f"unknown line function family {spec!r}")


def resolve_halfplane_sampler(spec: str) -> HalfplaneSampler:
    """Half-plane sampler from a family spec string.

    Families: ``cauchy-extension`` (closed-form extension of ``1/(1+t^2)``),
    ``constant:<c>``, ``inverse-pole`` (imaginary part of ``1/(z+i)``), and
    ``extension-of:<line spec>`` (kernel convolution extension).
    """
    name, args = _split(spec)
    if name == "cauchy-extension":
        return cauchy_extension_sampler()
    if name == "constant":
        return constant_sampler(complex(float(args[0])) if args else 1.0)
    if name == "inverse-pole":
        return inverse_pole_sampler()
    if name == "extension-of":
        return poisson_extension_sampler(resolve_line_function(":".join(args)))
    raise FamilyError(f"unknown half-plane sampler family {spec!r}")

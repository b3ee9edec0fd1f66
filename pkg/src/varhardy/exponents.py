"""Piecewise variable exponents on the circle and the real line.

An exponent is a measurable function ``p`` with values in ``[1, inf)`` that
replaces the constant ``p`` of a classical Lebesgue space.  Exponents here are
symbolic: an ordered list of pieces, each a half-open parameter interval with
a closed-form formula, so pointwise values and the essential bounds
``p_min``/``p_max`` are exact.  Grids only enter through the regularity
diagnostics at the bottom of this module.

Supported formulas per piece:

* ``constant``       -- ``p(t) = c``, params ``(c,)``
* ``affine``         -- ``p(t) = a*t + b``, params ``(a, b)``
* ``cosine_offset``  -- ``p(t) = cos(t) + c``, params ``(c,)``
* ``log_decay``      -- ``p(t) = c + a / log(e + |t|)``, params ``(c, a)``;
  the line-domain kind used to build exponents that level off at infinity.

Circle-domain exponents live on the parameter interval ``[0, 2*pi]`` and are
required to close up periodically; line-domain exponents tile all of R.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

TWO_PI = 2.0 * math.pi

#: Largest admissible exponent value.  Overridable per construction call.
DEFAULT_P_MAX_ALLOWED = 64.0

#: Absolute tolerance for the periodic closure p(0) = p(2*pi) and for
#: gap/overlap detection between adjacent pieces.
SEAM_TOL = 1e-12

#: Reserved names accepted wherever an exponent specification is expected.
RESERVED_EXPONENTS = ("paper-sec3", "lh-demo")


class ExponentError(ValueError):
    """Base class for exponent construction and usage errors."""


class PieceLayoutError(ExponentError):
    """Pieces do not tile the domain (gap, overlap, or bad ordering)."""


class ExponentRangeError(ExponentError):
    """A piece takes values outside [1, p_max_allowed]."""


class PeriodicityError(ExponentError):
    """A circle exponent fails the closure condition p(0) = p(2*pi)."""


class DomainKindError(ExponentError):
    """Operation applied to an exponent on the wrong domain kind."""


class ConjugateUnboundedError(ExponentError):
    """Conjugation requested for an exponent with p_min == 1."""


_FORMULA_KINDS = ("constant", "affine", "cosine_offset", "log_decay")
_PARAM_COUNTS = {"constant": 1, "affine": 2, "cosine_offset": 1, "log_decay": 2}


@dataclass(frozen=True)
class Piece:
    """One half-open interval ``[start, end)`` with a closed-form formula."""

    start: float
    end: float
    kind: str
    params: tuple[float, ...]

    def __post_init__(self):
        if self.kind not in _FORMULA_KINDS:
            raise ExponentError(f"unknown formula kind {self.kind!r}")
        if len(self.params) != _PARAM_COUNTS[self.kind]:
            raise ExponentError(
                f"{self.kind} expects {_PARAM_COUNTS[self.kind]} parameters, "
                f"got {len(self.params)}"
            )
        if not self.end > self.start:
            raise PieceLayoutError(
                f"piece interval [{self.start}, {self.end}) is empty"
            )

    def evaluate(self, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        if self.kind == "constant":
            return np.full_like(t, self.params[0])
        if self.kind == "affine":
            a, b = self.params
            return a * t + b
        if self.kind == "cosine_offset":
            return np.cos(t) + self.params[0]
        c, a = self.params
        return c + a / np.log(math.e + np.abs(t))

    def value_range(self) -> tuple[float, float]:
        """Exact (inf, sup) of the formula over the piece interval."""
        a, b = self.start, self.end
        if self.kind == "constant":
            c = self.params[0]
            return c, c
        if self.kind == "affine":
            sl, off = self.params
            if not (math.isfinite(a) and math.isfinite(b)):
                if sl != 0.0:
                    raise ExponentRangeError(
                        "affine piece on an unbounded interval is unbounded"
                    )
                return off, off
            lo, hi = sl * a + off, sl * b + off
            return min(lo, hi), max(lo, hi)
        if self.kind == "cosine_offset":
            c = self.params[0]
            if not (math.isfinite(a) and math.isfinite(b)):
                return c - 1.0, c + 1.0
            candidates = [math.cos(a) + c, math.cos(b) + c]
            # interior critical points of cos at multiples of pi
            k = math.ceil(a / math.pi)
            while k * math.pi < b:
                candidates.append(math.cos(k * math.pi) + c)
                k += 1
            return min(candidates), max(candidates)
        # log_decay: monotone in |t|, so extrema sit at the interval
        # endpoints and at the point of smallest |t| inside the interval.
        c, amp = self.params
        candidates = []
        for endpoint in (a, b):
            if math.isfinite(endpoint):
                candidates.append(c + amp / math.log(math.e + abs(endpoint)))
            else:
                candidates.append(c)  # limit value at infinity
        if a < 0.0 < b:
            candidates.append(c + amp)  # |t| minimized at t = 0
        return min(candidates), max(candidates)


class VariableExponent:
    """Common interface: pointwise evaluation plus cached essential bounds.

    Instances are immutable after construction and safe to share across
    threads; every operation in this package treats them as pure values.
    """

    domain: str  # "circle" | "line"
    p_min: float
    p_max: float
    p_infinity: float | None

    def __call__(self, t) -> np.ndarray:
        raise NotImplementedError

    def is_constant(self) -> bool:
        return self.p_min == self.p_max


class PiecewiseExponent(VariableExponent):
    """Exponent defined by an ordered tiling of formula pieces."""

    def __init__(
        self,
        pieces: Sequence[Piece],
        domain: str = "circle",
        p_infinity: float | None = None,
        p_max_allowed: float = DEFAULT_P_MAX_ALLOWED,
        exact_bounds: tuple[float, float] | None = None,
    ):
        if domain not in ("circle", "line"):
            raise DomainKindError(f"unknown domain kind {domain!r}")
        if not pieces:
            raise PieceLayoutError("at least one piece is required")
        pieces = tuple(sorted(pieces, key=lambda pc: pc.start))
        for left, right in zip(pieces, pieces[1:]):
            if abs(right.start - left.end) > SEAM_TOL:
                raise PieceLayoutError(
                    f"pieces do not tile: [{left.start}, {left.end}) then "
                    f"[{right.start}, {right.end})"
                )
        if domain == "circle":
            if abs(pieces[0].start) > SEAM_TOL or abs(pieces[-1].end - TWO_PI) > SEAM_TOL:
                raise PieceLayoutError(
                    "circle pieces must cover [0, 2*pi] exactly"
                )
        else:
            if math.isfinite(pieces[0].start) or math.isfinite(pieces[-1].end):
                raise PieceLayoutError("line pieces must cover all of R")

        lo = min(pc.value_range()[0] for pc in pieces)
        hi = max(pc.value_range()[1] for pc in pieces)
        if exact_bounds is not None:
            # analytically known extrema, e.g. where a seam value like
            # cos(2*pi/3) rounds away from the exact -1/2
            if abs(lo - exact_bounds[0]) > 1e-9 or abs(hi - exact_bounds[1]) > 1e-9:
                raise ExponentRangeError(
                    f"declared bounds {exact_bounds} disagree with computed "
                    f"({lo}, {hi})"
                )
            lo, hi = exact_bounds
        if lo < 1.0:
            raise ExponentRangeError(f"exponent attains {lo} < 1")
        if hi > p_max_allowed:
            raise ExponentRangeError(
                f"exponent attains {hi} > p_max_allowed = {p_max_allowed}"
            )

        if domain == "circle":
            left_val = float(pieces[0].evaluate(np.array(0.0)))
            right_val = float(pieces[-1].evaluate(np.array(TWO_PI)))
            if abs(left_val - right_val) > SEAM_TOL:
                raise PeriodicityError(
                    f"p(0) = {left_val} != {right_val} = p(2*pi)"
                )

        self.pieces = pieces
        self.domain = domain
        self.p_min = lo
        self.p_max = hi
        self.p_infinity = p_infinity
        self._starts = np.array([pc.start for pc in pieces])

    def __call__(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        scalar = t.ndim == 0
        t = np.atleast_1d(t)
        if self.domain == "circle":
            t = np.mod(t, TWO_PI)
        idx = np.searchsorted(self._starts, t, side="right") - 1
        idx = np.clip(idx, 0, len(self.pieces) - 1)
        out = np.empty_like(t)
        for i, pc in enumerate(self.pieces):
            mask = idx == i
            if mask.any():
                out[mask] = pc.evaluate(t[mask])
        return out[0] if scalar else out


class ConjugateExponent(VariableExponent):
    """Lazy pointwise conjugate q(t) = p(t) / (p(t) - 1).

    Stored as a wrapper over the base exponent so evaluation stays exact at
    every queried point; the conjugate of a cosine piece has no closed-form
    piece representation.
    """

    def __init__(self, base: VariableExponent):
        if base.p_min <= 1.0:
            raise ConjugateUnboundedError(
                "conjugate requires p_min > 1 (otherwise q is unbounded)"
            )
        self.base = base
        self.domain = base.domain
        self.p_min = base.p_max / (base.p_max - 1.0)
        self.p_max = base.p_min / (base.p_min - 1.0)
        if base.p_infinity is not None and base.p_infinity > 1.0:
            self.p_infinity = base.p_infinity / (base.p_infinity - 1.0)
        else:
            self.p_infinity = None

    def __call__(self, t) -> np.ndarray:
        p = self.base(t)
        return p / (p - 1.0)


def make_piecewise_exponent(
    pieces: Iterable[tuple[tuple[float, float], str, Sequence[float]]],
    domain: str = "circle",
    p_infinity: float | None = None,
    p_max_allowed: float = DEFAULT_P_MAX_ALLOWED,
    exact_bounds: tuple[float, float] | None = None,
) -> PiecewiseExponent:
    """Build a :class:`PiecewiseExponent` from ``((a, b), kind, params)`` triples.

    Pieces must tile the domain with half-open intervals; values must stay in
    ``[1, p_max_allowed]``; circle exponents must close up, ``p(0) = p(2*pi)``.
    Violations raise :class:`PieceLayoutError`, :class:`ExponentRangeError`,
    or :class:`PeriodicityError` respectively.
    """
    built = [
        Piece(float(a), float(b), kind, tuple(float(x) for x in params))
        for (a, b), kind, params in pieces
    ]
    return PiecewiseExponent(
        built,
        domain=domain,
        p_infinity=p_infinity,
        p_max_allowed=p_max_allowed,
        exact_bounds=exact_bounds,
    )


def constant_exponent(c: float, domain: str = "circle") -> PiecewiseExponent:
    """Exponent identically equal to ``c``."""
    if domain == "circle":
        return make_piecewise_exponent([((0.0, TWO_PI), "constant", (c,))])
    return make_piecewise_exponent(
        [((-math.inf, math.inf), "constant", (c,))], domain="line", p_infinity=c
    )


def counterexample_exponent() -> PiecewiseExponent:
    """Circle exponent with plateaus at 3 and 2 joined by cosine arcs.

    Takes the value 3 on the arcs around angle 0, the value 2 on the arc
    around angle pi, and ``cos(t) + 5/2`` in between, which makes the joins
    continuous (``cos(pi/3) + 5/2 = 3`` and ``cos(2*pi/3) + 5/2 = 2``) and the
    whole exponent log-Hoelder continuous with range exactly [2, 3].  This is
    the exponent the membership counterexample experiments run under; it is
    addressable in configs under the reserved name ``"paper-sec3"``.
    """
    third = math.pi / 3.0
    return make_piecewise_exponent(
        [
            ((0.0, third), "constant", (3.0,)),
            ((third, 2 * third), "cosine_offset", (2.5,)),
            ((2 * third, 4 * third), "constant", (2.0,)),
            ((4 * third, 5 * third), "cosine_offset", (2.5,)),
            ((5 * third, TWO_PI), "constant", (3.0,)),
        ],
        exact_bounds=(2.0, 3.0),
    )


def lh_demo_exponent() -> PiecewiseExponent:
    """Line exponent ``p(x) = 2 + 1/log(e + |x|)``.

    Levels off at ``p_infinity = 2`` with decay constant exactly 1, peaks at
    ``p(0) = 3``, and is log-Hoelder continuous; the stock member of the LH
    class used by the half-plane experiments.  Reserved config name
    ``"lh-demo"``.
    """
    return make_piecewise_exponent(
        [((-math.inf, math.inf), "log_decay", (2.0, 1.0))],
        domain="line",
        p_infinity=2.0,
    )


def essential_bounds(p: VariableExponent) -> tuple[float, float]:
    """Return ``(p_min, p_max)``, computed in closed form per piece."""
    return p.p_min, p.p_max


def conjugate(p: VariableExponent) -> VariableExponent:
    """Pointwise conjugate exponent, ``1/p(t) + 1/q(t) = 1``.

    Conjugating a conjugate returns the original base exponent object, so the
    involution is exact.
    """
    if isinstance(p, ConjugateExponent):
        return p.base
    return ConjugateExponent(p)


@dataclass(frozen=True)
class RegularityReport:
    """Grid-based regularity diagnostics for an exponent.

    ``c_log_estimate`` is the max over examined grid pairs with separation in
    ``(0, 1/2]`` of ``|p(x) - p(y)| * log(1 / |x - y|)``; it is monotone
    nondecreasing under grid refinement since a finer grid examines a
    superset of pairs.  ``c_infinity_estimate`` is the analogous decay
    constant at infinity for line exponents with a declared limit value.
    """

    c_log_estimate: float
    worst_pair: tuple[float, float]
    c_infinity_estimate: float | None
    pairs_examined: int

    def is_log_holder(self, ceiling: float) -> bool:
        return self.c_log_estimate <= ceiling


#: Pair separations above this are excluded from the log-Hoelder estimator:
#: log(1/|x-y|) changes sign at separation 1, so the constant is only
#: meaningful for nearby pairs.
LOG_HOLDER_WINDOW = 0.5


def log_holder_constant(
    p: VariableExponent,
    grid_size: int,
    line_halfwidth: float = 8.0,
) -> RegularityReport:
    """Estimate the log-Hoelder constant of ``p`` on a uniform grid.

    Examines all grid pairs with separation in ``(0, 1/2]`` (arc-parameter
    distance modulo ``2*pi`` on the circle) and maximizes
    ``|p(x) - p(y)| * log(1/|x - y|)``.  Line exponents are sampled on
    ``[-line_halfwidth, line_halfwidth]``.  For exponents with a jump the
    estimate diverges as the grid refines; compare against a ceiling with
    :meth:`RegularityReport.is_log_holder`.
    """
    if grid_size < 16:
        raise ValueError("grid_size must be at least 16")
    if p.domain == "circle":
        grid = np.arange(grid_size) * (TWO_PI / grid_size)
    else:
        grid = np.linspace(-line_halfwidth, line_halfwidth, grid_size)
    vals = np.asarray(p(grid), dtype=float)

    dist = np.abs(grid[:, None] - grid[None, :])
    if p.domain == "circle":
        dist = np.minimum(dist, TWO_PI - dist)
    ii, jj = np.nonzero((dist > 0.0) & (dist <= LOG_HOLDER_WINDOW))
    prods = np.abs(vals[ii] - vals[jj]) * np.log(1.0 / dist[ii, jj])
    best = int(np.argmax(prods))
    i, j = int(ii[best]), int(jj[best])
    c_log = float(prods[best])

    c_inf = None
    if p.domain == "line" and p.p_infinity is not None:
        c_inf = float(np.max(np.abs(vals - p.p_infinity) * np.log(math.e + np.abs(grid))))

    return RegularityReport(
        c_log_estimate=c_log,
        worst_pair=(float(grid[i]), float(grid[j])),
        c_infinity_estimate=c_inf,
        pairs_examined=int(ii.size),
    )


def lh_infinity_constant(p, p_inf: float, grid: Sequence[float]) -> float:
    """Max over the grid of ``|p(x) - p_inf| * log(e + |x|)``.

    Quantifies how fast a line exponent levels off at infinity.  ``p`` needs
    only pointwise evaluation and a ``domain`` attribute; circle exponents
    are rejected.
    """
    if getattr(p, "domain", None) != "line":
        raise DomainKindError("lh_infinity_constant requires a line-domain exponent")
    grid = np.asarray(list(grid), dtype=float)
    if grid.size == 0:
        raise ValueError("grid must be nonempty")
    vals = np.asarray(p(grid), dtype=float)
    return float(np.max(np.abs(vals - p_inf) * np.log(math.e + np.abs(grid))))


# ---------------------------------------------------------------------------
# configuration parsing


def exponent_from_config(obj: dict) -> PiecewiseExponent:
    """Build an exponent from a config mapping.

    Expected shape::

        {"domain": "circle" | "line",
         "pieces": [{"interval": [a, b], "kind": ..., "params": [...]}, ...],
         "p_infinity": optional number}

    Interval endpoints may be the strings ``"-inf"``/``"inf"`` on the line.
    """
    known = {"domain", "pieces", "p_infinity", "p_max_allowed"}
    extra = set(obj) - known
    if extra:
        raise ExponentError(f"unknown exponent config keys: {sorted(extra)}")
    domain = obj.get("domain", "circle")
    pieces = []
    for entry in obj["pieces"]:
        unknown = set(entry) - {"interval", "kind", "params"}
        if unknown:
            raise ExponentError(f"unknown piece keys: {sorted(unknown)}")
        a, b = (float(x) for x in entry["interval"])
        pieces.append(((a, b), entry["kind"], entry.get("params", [])))
    return make_piecewise_exponent(
        pieces,
        domain=domain,
        p_infinity=obj.get("p_infinity"),
        p_max_allowed=obj.get("p_max_allowed", DEFAULT_P_MAX_ALLOWED),
    )


def resolve_exponent(spec) -> VariableExponent:
    """Resolve an exponent from a reserved name, inline spec, dict, or file.

    Accepted forms: ``"paper-sec3"``, ``"lh-demo"``, ``"constant:2"``,
    ``"constant:2:line"``, a dict (see :func:`exponent_from_config`), or a
    path to a JSON file containing such a dict.
    """
    if isinstance(spec, VariableExponent):
        return spec
    if isinstance(spec, dict):
        return exponent_from_config(spec)
    if not isinstance(spec, str):
        raise ExponentError(f"cannot interpret exponent spec {spec!r}")
    if spec == "paper-sec3":
        return counterexample_exponent()
    if spec == "lh-demo":
        return lh_demo_exponent()
    if spec.startswith("constant:"):
        parts = spec.split(":")
        value = float(parts[1])
        domain = parts[2] if len(parts) > 2 else "circle"
        return constant_exponent(value, domain=domain)
    if spec.endswith(".json"):
        with open(spec) as fh:
            return exponent_from_config(json.load(fh))
    raise ExponentError(
        f"cannot interpret exponent spec {spec!r}; expected a reserved name "
        f"{RESERVED_EXPONENTS}, 'constant:<value>[:<domain>]', or a JSON file"
    )

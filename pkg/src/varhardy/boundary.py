"""Sampled boundary data on the unit circle and on the real line.

These containers are what the norms and transforms act on.  A circle function
holds complex samples at the uniform nodes ``theta_j = 2*pi*j/N`` with ``N`` a
power of two (so Fourier transforms are fast and exact for band-limited
data).  A line function holds samples on a strictly increasing grid plus an
optional power-law tail model for the part of the line the grid truncates.

Functions may carry an off-grid evaluator and declared singular points; the
quadrature layer uses both to refine geometrically toward singularities.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Singularity:
    """A parameter location where the underlying function blows up.

    ``strength`` is the local power: ``|f| ~ distance**(-strength)`` as the
    singular location is approached.  For dilations of a function singular on
    the boundary the samples stay finite but peak here; the quadrature layer
    refines toward the location either way.
    """

    location: float
    strength: float


@dataclass(frozen=True)
class TailModel:
    """Power decay ``|f(x)| ~ amplitude * (|x|/T)**(-exponent)`` for ``|x| > T``."""

    exponent: float
    amplitude: float | None = None  # None: calibrate from the edge samples


class BoundaryFunction:
    """Base class; concrete grids are :class:`CircleFunction` and :class:`LineFunction`."""

    domain_kind: str


class CircleFunction(BoundaryFunction):
    """Complex samples at ``theta_j = 2*pi*j/N``, ``N`` a power of two, ``N >= 8``."""

    domain_kind = "circle"

    def __init__(self, values, evaluator=None, singularities=()):
        values = np.asarray(values, dtype=complex)
        n = values.size
        if n < 8 or n & (n - 1):
            raise ValueError(f"circle grid size must be a power of two >= 8, got {n}")
        if not np.all(np.isfinite(values.real) & np.isfinite(values.imag)):
            raise ValueError("circle samples must be finite")
        self.values = values
        self.values.setflags(write=False)
        self.evaluator = evaluator
        self.singularities = tuple(singularities)

    @property
    def n(self) -> int:
        return self.values.size

    @property
    def nodes(self) -> np.ndarray:
        return np.arange(self.n) * (TWO_PI / self.n)

    @classmethod
    def from_callable(cls, fn: Callable, n: int, singularities=()) -> "CircleFunction":
        nodes = np.arange(n) * (TWO_PI / n)
        return cls(np.asarray(fn(nodes), dtype=complex), evaluator=fn,
                   singularities=singularities)

    def map_values(self, new_values) -> "CircleFunction":
        """Same grid and metadata, new samples (evaluator no longer valid)."""
        return CircleFunction(new_values, evaluator=None,
                              singularities=self.singularities)

    def to_csv(self, path) -> None:
        _write_csv(path, "theta", self.nodes, self.values)

    @classmethod
    def from_csv(cls, path) -> "CircleFunction":
        coords, values = _read_csv(path)
        n = coords.size
        expected = np.arange(n) * (TWO_PI / n)
        if n < 8 or n & (n - 1) or not np.allclose(coords, expected, atol=1e-9):
            raise ValueError(
                f"{path}: circle CSV must sample theta_j = 2*pi*j/N "
                "with N a power of two >= 8"
            )
        return cls(values)


class LineFunction(BoundaryFunction):
    """Complex samples on a strictly increasing grid spanning ``[-T, T]``."""

    domain_kind = "line"

    def __init__(self, x, values, evaluator=None, tail: TailModel | None = None,
                 singularities=()):
        x = np.asarray(x, dtype=float)
        values = np.asarray(values, dtype=complex)
        if x.ndim != 1 or x.size < 2 or x.size != values.size:
            raise ValueError("line grid and values must be 1-d with matching length")
        if not np.all(np.diff(x) > 0):
            raise ValueError("line grid must be strictly increasing")
        if not np.all(np.isfinite(values.real) & np.isfinite(values.imag)):
            raise ValueError("line samples must be finite")
        self.x = x
        self.values = values
        self.x.setflags(write=False)
        self.values.setflags(write=False)
        self.evaluator = evaluator
        self.tail = tail
        self.singularities = tuple(singularities)

    @property
    def span(self) -> float:
        return float(self.x[-1] - self.x[0])

    @classmethod
    def from_callable(cls, fn: Callable, x, tail: TailModel | None = None,
                      singularities=()) -> "LineFunction":
        x = np.asarray(x, dtype=float)
        return cls(x, np.asarray(fn(x), dtype=complex), evaluator=fn,
                   tail=tail, singularities=singularities)

    @classmethod
    def uniform(cls, fn: Callable, halfwidth: float, spacing: float,
                tail: TailModel | None = None) -> "LineFunction":
        """Uniform grid on ``[-halfwidth, halfwidth]`` with step <= ``spacing``."""
        m = int(math.ceil(halfwidth / spacing))
        x = np.arange(-m, m + 1) * (halfwidth / m)
        return cls.from_callable(fn, x, tail=tail)

    def map_values(self, new_values, tail: TailModel | None = None) -> "LineFunction":
        return LineFunction(self.x, new_values, evaluator=None,
                            tail=self.tail if tail is None else tail,
                            singularities=self.singularities)

    def edge_magnitude(self) -> float:
        return float(max(abs(self.values[0]), abs(self.values[-1])))

    def truncation_uncertain(self, atol: float = 1e-8) -> bool:
        """True when mass may be lost past the grid: visible edge values, no tail model."""
        return self.tail is None and self.edge_magnitude() > atol

    def to_csv(self, path) -> None:
        _write_csv(path, "x", self.x, self.values)

    @classmethod
    def from_csv(cls, path, tail: TailModel | None = None) -> "LineFunction":
        coords, values = _read_csv(path)
        return cls(coords, values, tail=tail)


def _write_csv(path, coord_name: str, coords, values) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([coord_name, "re", "im"])
        for c, v in zip(coords, values):
            writer.writerow([repr(float(c)), repr(float(v.real)), repr(float(v.imag))])


def _read_csv(path):
    coords, re_part, im_part = [], [], []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if len(header) != 3 or header[1:] != ["re", "im"]:
            raise ValueError(f"{path}: expected header '<coord>,re,im'")
        for row in reader:
            coords.append(float(row[0]))
            re_part.append(float(row[1]))
            im_part.append(float(row[2]))
    return np.asarray(coords), np.asarray(re_part) + 1j * np.asarray(im_part)


# ---------------------------------------------------------------------------
# seeded corpora for property tests and experiments


def trig_polynomial_coefficients(rng: np.random.Generator, degree: int,
                                 decay: float = 2.0) -> np.ndarray:
    """Complex coefficients ``c_k`` for ``k = -degree..degree``.

    Drawn from a complex normal and damped by ``(1 + |k|)**(-decay)`` so the
    corpus is dominated by low frequencies; deficits of smoothing operators
    then shrink at the rates the convergence experiments assert.
    """
    k = np.arange(-degree, degree + 1)
    raw = rng.standard_normal(k.size) + 1j * rng.standard_normal(k.size)
    return raw / (1.0 + np.abs(k)) ** decay


def trig_polynomial_samples(coeffs: np.ndarray, n: int) -> np.ndarray:
    """Evaluate ``sum_k c_k e^{i k theta}`` on the uniform ``n``-grid."""
    degree = (coeffs.size - 1) // 2
    if n < 2 * degree + 2:
        raise ValueError("grid too coarse for the polynomial degree")
    nodes = np.arange(n) * (TWO_PI / n)
    k = np.arange(-degree, degree + 1)
    return np.exp(1j * np.outer(nodes, k)) @ coeffs


def seeded_trig_polynomial(seed: int, degree: int = 8, n: int = 256,
                           decay: float = 2.0) -> CircleFunction:
    rng = np.random.default_rng(seed)
    coeffs = trig_polynomial_coefficients(rng, degree, decay)
    return CircleFunction(trig_polynomial_samples(coeffs, n))

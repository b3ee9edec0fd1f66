"""Least-squares power-law fits on log-log axes."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class LogLogFit:
    slope: float
    intercept: float
    residual: float  # root-mean-square deviation of log values from the line
    points_used: int


def fit_loglog(x, y) -> LogLogFit:
    """Fit ``log y = slope * log x + intercept`` by least squares.

    Non-finite or non-positive pairs are dropped.  With fewer than two usable
    points the fit degenerates to slope 0 and infinite residual.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    good = np.isfinite(x) & np.isfinite(y) & (x > 0) & (y > 0)
    x, y = x[good], y[good]
    if x.size < 2:
        return LogLogFit(0.0, 0.0, math.inf, int(x.size))
    lx, ly = np.log(x), np.log(y)
    slope, intercept = np.polyfit(lx, ly, 1)
    rms = float(np.sqrt(np.mean((ly - (slope * lx + intercept)) ** 2)))
    return LogLogFit(float(slope), float(intercept), rms, int(x.size))


def tail_window(values, fraction: float = 0.5, minimum: int = 4):
    """Index slice selecting the asymptotic tail of a schedule.

    Power-law behaviour only emerges once the scale parameter is small, so
    fits use the last ``fraction`` of the points (at least ``minimum``, at
    most all of them).
    """
    n = len(values)
    keep = max(minimum, int(math.ceil(n * fraction)))
    keep = min(keep, n)
    return slice(n - keep, n)

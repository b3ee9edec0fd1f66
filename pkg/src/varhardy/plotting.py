"""Figure rendering for reports; every function writes a file and returns its path."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

FIGSIZE = (6.0, 4.0)
DPI = 150


def _finish(fig, ax, path, title):
    ax.set_title(title)
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)
    return path


def plot_scaling(report, path, title="kernel norm scaling"):
    """Log-log points with the fitted and theoretical slopes."""
    x = np.array([a for a, _ in report.points])
    y = np.array([b for _, b in report.points])
    fig, ax = plt.subplots(figsize=FIGSIZE)
    ax.loglog(x, y, "o", label="measured")
    anchor = y[-1] / x[-1] ** report.fitted_slope
    ax.loglog(x, anchor * x**report.fitted_slope, "-",
              label=f"fit slope {report.fitted_slope:.3f}")
    ax.loglog(x, anchor * x**report.theoretical_slope, "--",
              label=f"theory slope {report.theoretical_slope:.3f}")
    ax.set_xlabel("scale")
    ax.set_ylabel("value")
    ax.legend()
    return _finish(fig, ax, path, title)


def plot_hardy(report, path, title="norms along the schedule"):
    if report.scale_parameter == "1-r":
        x = 1.0 - np.asarray(report.schedule)
        xlabel = "1 - r"
    else:
        x = np.asarray(report.schedule)
        xlabel = report.scale_parameter
    y = np.array([nr.value for nr in report.norms])
    good = np.isfinite(y)
    fig, ax = plt.subplots(figsize=FIGSIZE)
    ax.loglog(x[good], y[good], "o-", label=f"norms ({report.verdict})")
    if report.growth_exponent is not None and np.any(good):
        anchor = y[good][-1] / x[good][-1] ** report.growth_exponent
        ax.loglog(x, anchor * x**report.growth_exponent, "--",
                  label=f"fit slope {report.growth_exponent:.3f}")
    ax.set_xlabel(xlabel)
    ax.set_ylabel("Luxemburg norm")
    ax.legend()
    return _finish(fig, ax, path, title)


def plot_pair(report, path, title="membership counterexample pair"):
    fig, axes = plt.subplots(1, 2, figsize=(9.0, 4.0))
    for ax, hardy, name in (
        (axes[0], report.f_variable, "f = (1+z)^-s"),
        (axes[1], report.g_variable, "g = (1-z)^-s"),
    ):
        x = 1.0 - np.asarray(hardy.schedule)
        y = np.asarray(hardy.modulars)
        ax.loglog(x, y, "o-", label=f"modular ({hardy.verdict})")
        ax.set_xlabel("1 - r")
        ax.set_ylabel("modular")
        ax.set_title(name)
        ax.grid(True, which="both", alpha=0.3)
        ax.legend()
    fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)
    return path


def plot_deficits(scales, deficits, path, title="approach deficits",
                  xlabel="scale"):
    fig, ax = plt.subplots(figsize=FIGSIZE)
    ax.loglog(np.asarray(scales), np.asarray(deficits), "o-")
    ax.set_xlabel(xlabel)
    ax.set_ylabel("deficit norm")
    return _finish(fig, ax, path, title)


def plot_exponent(p, path, title="exponent profile"):
    if p.domain == "circle":
        t = np.linspace(0.0, 2.0 * math.pi, 2049)
        xlabel = "theta"
    else:
        t = np.linspace(-16.0, 16.0, 2049)
        xlabel = "x"
    fig, ax = plt.subplots(figsize=FIGSIZE)
    ax.plot(t, p(t))
    ax.set_xlabel(xlabel)
    ax.set_ylabel("p(t)")
    return _finish(fig, ax, path, title)


def plot_ratio_histogram(ratios, path, title="projection norm ratios"):
    fig, ax = plt.subplots(figsize=FIGSIZE)
    ax.hist(np.asarray(ratios), bins=40)
    ax.set_xlabel("norm ratio")
    ax.set_ylabel("count")
    return _finish(fig, ax, path, title)

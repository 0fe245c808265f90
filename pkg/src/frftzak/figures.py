"""Matplotlib renderings of traces, grids, and verification artifacts.

matplotlib is imported lazily so the numerical library works without a
graphics stack; the command-line tool calls these next to its CSV/JSON
output.  Figures avoid wall-clock metadata so reruns produce identical
files.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .approx import ApproxSolution, evaluate_modulus
from .counterexample import CounterexampleFamily, FamilyTraces
from .reporting import SampledTrace

DPI = 110
_SAVE_KWARGS = {"dpi": DPI, "metadata": {"Software": None}}


def _pyplot():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def save_trace_figure(path, trace: SampledTrace, *, title: str,
                      xlabel: str = "t") -> Path:
    """Real part, imaginary part, and magnitude of one sampled trace."""
    plt = _pyplot()
    t = trace.grid
    fig, ax = plt.subplots(figsize=(7.0, 4.0))
    ax.plot(t, trace.values.real, label="re", linewidth=1.0)
    ax.plot(t, trace.values.imag, label="im", linewidth=1.0)
    ax.plot(t, np.abs(trace.values), label="abs", linewidth=1.4,
            color="black")
    ax.set_xlabel(xlabel)
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    ax.legend(loc="upper right")
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, **_SAVE_KWARGS)
    plt.close(fig)
    return path


def save_overlay_figure(path, x, series: Mapping[str, np.ndarray], *,
                        title: str, xlabel: str, ylabel: str) -> Path:
    """Several curves over one grid; complex input is drawn as magnitude."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7.0, 4.0))
    for label, values in series.items():
        vals = np.asarray(values)
        if np.iscomplexobj(vals):
            vals = np.abs(vals)
        ax.plot(x, vals, label=label, linewidth=1.2)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    ax.legend(loc="upper right")
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, **_SAVE_KWARGS)
    plt.close(fig)
    return path


def save_zak_figure(path, x: np.ndarray, xi: np.ndarray,
                    values: np.ndarray, *, title: str) -> Path:
    """Magnitude heat map over the sampled rectangle (x rows, xi columns)."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(5.6, 4.6))
    mesh = ax.pcolormesh(xi, x, np.abs(values), shading="auto",
                         cmap="viridis")
    fig.colorbar(mesh, ax=ax, label="abs")
    ax.set_xlabel("xi")
    ax.set_ylabel("x")
    ax.set_title(title)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, **_SAVE_KWARGS)
    plt.close(fig)
    return path


def save_coefficient_figure(path, ns: Sequence[int],
                            values: Sequence[complex], *,
                            expected_modulus: float, title: str) -> Path:
    """Modulus against the predicted level, plus the coefficient phases."""
    plt = _pyplot()
    vals = np.asarray(values, dtype=complex)
    fig, (top, bottom) = plt.subplots(2, 1, figsize=(7.0, 5.2), sharex=True)
    top.stem(ns, np.abs(vals), basefmt=" ")
    top.axhline(expected_modulus, color="red", linewidth=1.0,
                linestyle="--", label="predicted level")
    top.set_ylabel("abs")
    top.set_ylim(0.0, 1.25 * expected_modulus)
    top.grid(True, alpha=0.3)
    top.legend(loc="lower right")
    bottom.plot(ns, np.angle(vals), "o", markersize=3.5)
    bottom.set_ylabel("arg")
    bottom.set_xlabel("n")
    bottom.set_ylim(-math.pi * 1.1, math.pi * 1.1)
    bottom.grid(True, alpha=0.3)
    fig.suptitle(title)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, **_SAVE_KWARGS)
    plt.close(fig)
    return path


def save_family_figure(path, family: CounterexampleFamily,
                       traces: FamilyTraces, *, title: str) -> Path:
    """One row per slope: member transform magnitudes over the shared grid,
    with each member's predicted frequency arcs shaded underneath."""
    plt = _pyplot()
    n_slopes = len(family.slopes)
    fig, axes = plt.subplots(n_slopes, 1, figsize=(7.5, 2.4 * n_slopes),
                             sharex=True, squeeze=False)
    xi = traces.xi
    for j, slope in enumerate(family.slopes):
        ax = axes[j, 0]
        sups = family.supports(slope)
        top = float(np.abs(traces.values[j]).max())
        for k in range(family.size):
            line, = ax.plot(xi, np.abs(traces.values[j, k]),
                            linewidth=1.0, label=f"member {k}")
            mask = sups[k].contains(xi)
            ax.fill_between(xi, 0.0, 1.05 * top, where=mask,
                            color=line.get_color(), alpha=0.12,
                            linewidth=0)
        ax.set_ylabel(f"slope {slope}")
        ax.grid(True, alpha=0.3)
        if j == 0:
            ax.legend(loc="upper right")
    axes[-1, 0].set_xlabel("xi")
    fig.suptitle(title)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, **_SAVE_KWARGS)
    plt.close(fig)
    return path


def save_margin_figure(path, reports, *, title: str) -> Path:
    """Log margin of every report: bars left of zero passed, right failed.

    Zero errors and zero tolerances are clamped so the exact checks still
    draw a finite bar.
    """
    plt = _pyplot()
    floor = 1e-18
    names = [r.check for r in reports]
    margins = [math.log10(max(r.max_error, floor)
                          / max(r.tolerance, floor)) for r in reports]
    colors = ["tab:green" if r.passed else "tab:red" for r in reports]
    fig, ax = plt.subplots(figsize=(8.0, 0.42 * len(reports) + 1.6))
    ax.barh(range(len(reports)), margins, color=colors, height=0.62)
    ax.axvline(0.0, color="black", linewidth=1.0)
    ax.set_yticks(range(len(reports)))
    ax.set_yticklabels(names, fontsize=8)
    ax.invert_yaxis()
    ax.set_xlabel("log10(max_error / tolerance)")
    ax.set_title(title)
    ax.grid(True, axis="x", alpha=0.3)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, **_SAVE_KWARGS)
    plt.close(fig)
    return path


def save_approx_figure(path, solution: ApproxSolution, *,
                       num: int = 801, title: str) -> Path:
    """Measured modulus against each target over the common window."""
    plt = _pyplot()
    n = solution.size
    fig, axes = plt.subplots(n, 1, figsize=(7.0, 2.6 * n), sharex=True,
                             squeeze=False)
    xi = np.linspace(-solution.t_radius, solution.t_radius, num)
    for k, comp in enumerate(solution.components):
        ax = axes[k, 0]
        ax.plot(xi, evaluate_modulus(solution, comp.angle, xi),
                linewidth=1.2, label="measured")
        ax.plot(xi, np.abs(comp.target(xi)), linewidth=1.0,
                linestyle="--", label="target")
        ax.set_ylabel(f"angle {comp.angle:.4g}")
        ax.grid(True, alpha=0.3)
        if k == 0:
            ax.legend(loc="upper right")
    axes[-1, 0].set_xlabel("xi")
    fig.suptitle(title)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, **_SAVE_KWARGS)
    plt.close(fig)
    return path

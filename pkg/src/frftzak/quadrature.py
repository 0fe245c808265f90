"""Composite Gauss-Legendre quadrature tuned to oscillatory integrands.

Panels are split at the integrand's rough points and capped in width so a
fixed-order rule holds a target number of nodes per oscillation cycle.
"""

from __future__ import annotations

import functools
import math
from typing import Callable, Iterable, Sequence

import numpy as np

from .signals import Signal

DEFAULT_ORDER = 16
POINTS_PER_CYCLE = 4.0


@functools.lru_cache(maxsize=None)
def gauss_rule(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the order-point Gauss-Legendre rule on [-1, 1]."""
    if order < 1:
        raise ValueError(f"quadrature order must be >= 1, got {order}")
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def panel_edges(a: float, b: float, *, breakpoints: Iterable[float] = (),
                cycles: float = 0.0, order: int = DEFAULT_ORDER,
                points_per_cycle: float = POINTS_PER_CYCLE,
                max_panel: float = 0.5) -> np.ndarray:
    """Sorted panel boundaries covering [a, b].

    Interior breakpoints become edges.  Panel width is capped at max_panel
    and, when the integrand oscillates at `cycles` cycles per unit length,
    at order / (points_per_cycle * cycles).
    """
    if not a < b:
        raise ValueError(f"empty integration window [{a}, {b}]")
    cap = max_panel
    if cycles > 0.0:
        cap = min(cap, order / (points_per_cycle * cycles))
    cuts = sorted({float(a), float(b), *(float(x) for x in breakpoints
                                         if a < x < b)})
    edges = [cuts[0]]
    for left, right in zip(cuts, cuts[1:]):
        n = max(1, math.ceil((right - left) / cap))
        step = (right - left) / n
        edges.extend(left + step * k for k in range(1, n + 1))
    edges[-1] = float(b)
    return np.array(edges)


def panel_nodes(edges: np.ndarray, order: int = DEFAULT_ORDER
                ) -> tuple[np.ndarray, np.ndarray]:
    """Quadrature nodes and weights for the given panel boundaries."""
    x, w = gauss_rule(order)
    left = edges[:-1]
    half = 0.5 * np.diff(edges)
    nodes = (left[:, None] + half[:, None] * (x[None, :] + 1.0)).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def quad_integrate(g: Callable[[np.ndarray], np.ndarray], a: float, b: float,
                   *, breakpoints: Iterable[float] = (), cycles: float = 0.0,
                   order: int = DEFAULT_ORDER) -> complex:
    """Integral of g over [a, b] with panels adapted to the stated cycles."""
    edges = panel_edges(a, b, breakpoints=breakpoints, cycles=cycles,
                        order=order)
    nodes, weights = panel_nodes(edges, order)
    return complex(np.sum(np.asarray(g(nodes), dtype=complex) * weights))


def l2_norm(f: Signal, window: tuple[float, float] | None = None, *,
            order: int = DEFAULT_ORDER) -> float:
    """L2 norm of f over its support (or over an explicit window).

    An explicit window must contain the support; silently chopping mass
    would corrupt every identity downstream.
    """
    lo, hi = f.support
    if window is not None:
        if window[0] > lo or window[1] < hi:
            raise ValueError(f"window {window} truncates support ({lo}, {hi})")
        lo, hi = window
    total = 0.0
    # |f|^2 oscillates at most twice as fast as f itself.
    cycles = 2.0 * f.cycles_hint()
    for seg_a, seg_b in f.segments():
        seg_a, seg_b = max(seg_a, lo), min(seg_b, hi)
        if seg_a >= seg_b:
            continue
        cuts = [x for x in f.breakpoints() if seg_a < x < seg_b]
        val = quad_integrate(lambda t: np.abs(f(t)) ** 2, seg_a, seg_b,
                             breakpoints=cuts, cycles=cycles, order=order)
        total += val.real
    return math.sqrt(total)

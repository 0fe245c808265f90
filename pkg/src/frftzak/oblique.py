"""Oblique route to the fractional Fourier transform through Zak rows.

At an angle with rational cotangent p/q, the chirped moment integral

    M(f, w) = integral f(t) e^{-i pi (p/q) t^2} e^{-2 i pi w t} dt

can be rebuilt from Zak-transform samples along the admissible slope-(p/q)
lines over the unit interval:

    M(f, w) = integral_0^1 e^{-2 i pi w x - i pi (p/q) x^2}
              sum_{n in A(x)} c'_n  Zf(x, w + xi_n(x)) dx

with c'_n the moment coefficients and A(x) the half-open admissible window.
Since G_a f(xi) = c(a) e^{-i pi (p/q) xi^2} M(f, xi / sin(a)), the transform
itself acquires a second, independent evaluation route.  Everything here is
specific to the default chirp sign (-1); the opposite sign is reachable
through the modulus bridge on the transform side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .chirpsums import (admissible_set, moment_coefficient,
                        xi_boundary_points)
from .frft import c_alpha, frft_trace
from .quadrature import DEFAULT_ORDER, panel_edges, panel_nodes
from .reporting import VerificationReport
from .signals import Signal
from .slopes import RationalSlope


@dataclass(frozen=True)
class MomentPlan:
    """Prepared x-quadrature for one (signal, slope) pair.

    Zak rows share the same x nodes for every requested frequency, so the
    expensive pieces (panels, signal samples over the integer window, the
    admissible-window starts) are computed once.
    """

    slope: RationalSlope
    nodes: np.ndarray          # x quadrature nodes in [0, 1]
    weights: np.ndarray
    samples: np.ndarray        # f(x + k), shape (nodes, ks)
    ks: np.ndarray             # integer shift window
    n_start: np.ndarray        # first admissible n at each node
    coeffs: np.ndarray         # moment coefficients c'_0 .. c'_{q-1}


def build_moment_plan(f: Signal, slope: RationalSlope, w_max: float, *,
                      order: int = DEFAULT_ORDER) -> MomentPlan:
    p, q = slope.p, slope.q
    lo, hi = f.support
    k_lo, k_hi = math.ceil(lo - 1.0), math.floor(hi)
    ks = np.arange(k_lo, k_hi + 1)
    k_peak = max((abs(int(k)) for k in ks), default=0)

    cuts = {float(x) for x in xi_boundary_points(slope)}
    cuts.update(float(b) % 1.0 for b in f.breakpoints())
    cuts.discard(0.0)
    cycles = (f.cycles_hint() + abs(slope.cot) * (1.0 + k_peak)
              + abs(w_max) + 1.0)
    edges = panel_edges(0.0, 1.0, breakpoints=sorted(cuts), cycles=cycles,
                        order=order)
    nodes, weights = panel_nodes(edges, order)

    samples = np.empty((nodes.size, ks.size), dtype=complex)
    for j, k in enumerate(ks):
        samples[:, j] = f(nodes + float(k))

    n_start = np.array([admissible_set(slope, x).start for x in nodes])
    coeffs = np.array([moment_coefficient(n, slope) for n in range(q)])
    return MomentPlan(slope=slope, nodes=nodes, weights=weights,
                      samples=samples, ks=ks, n_start=n_start, coeffs=coeffs)


def moment_from_plan(plan: MomentPlan, w: float) -> complex:
    """Evaluate the Zak-side moment integral at one frequency."""
    p, q = plan.slope.p, plan.slope.q
    x = plan.nodes
    acc = np.zeros(x.size, dtype=complex)
    for j in range(q):
        n = plan.n_start + j
        xi_n = (p * x + n) / q + 0.5 * p
        # Zak row at (x, w + xi_n): sum_k f(x+k) e^{-2 i pi k (w + xi_n)}
        phases = np.exp(-2j * math.pi * np.outer(w + xi_n, plan.ks))
        rows = np.sum(plan.samples * phases, axis=1)
        acc += plan.coeffs[np.mod(n, q)] * rows
    r = plan.slope.cot
    integrand = acc * np.exp(-2j * math.pi * w * x - 1j * math.pi * r * x * x)
    return complex(np.sum(plan.weights * integrand))


def chirp_moment(f: Signal, slope: RationalSlope, w, *,
                 order: int = DEFAULT_ORDER) -> np.ndarray | complex:
    """Zak-route values of M(f, w); w may be a scalar or an array."""
    w_arr = np.atleast_1d(np.asarray(w, dtype=float))
    plan = build_moment_plan(f, slope, float(np.max(np.abs(w_arr))),
                             order=order)
    out = np.array([moment_from_plan(plan, float(wi)) for wi in w_arr])
    return complex(out[0]) if np.isscalar(w) or np.asarray(w).ndim == 0 else out


def oblique_frft(f: Signal, slope: RationalSlope, xi, *,
                 sin_alpha_override: float | None = None,
                 order: int = DEFAULT_ORDER) -> np.ndarray:
    """G_alpha f on a grid, via the oblique Zak route (chirp sign -1).

    sin_alpha_override replaces the correct sin(alpha) = q/sqrt(p^2+q^2)
    in the frequency rescaling; it exists so tests can show the identity
    breaks under a wrong normalization, and has no production use.
    """
    xi_arr = np.atleast_1d(np.asarray(xi, dtype=float))
    sin_a = slope.sin_alpha if sin_alpha_override is None else sin_alpha_override
    if abs(sin_a) < 1e-12:
        raise ValueError("sin(alpha) must be nonzero")
    ws = xi_arr / sin_a
    plan = build_moment_plan(f, slope, float(np.max(np.abs(ws))), order=order)
    moments = np.array([moment_from_plan(plan, float(w)) for w in ws])
    r = slope.cot
    prefactor = (c_alpha(slope.angle)
                 * np.exp(-1j * math.pi * r * xi_arr * xi_arr))
    return prefactor * moments


def verify_oblique_identity(f: Signal, slope: RationalSlope, xi, *,
                            tolerance: float,
                            order: int = DEFAULT_ORDER) -> VerificationReport:
    """Compare the Zak route against direct quadrature, sup-relative."""
    xi_arr = np.atleast_1d(np.asarray(xi, dtype=float))
    via_zak = oblique_frft(f, slope, xi_arr, order=order)
    direct = frft_trace(f, slope.angle, xi_arr, order=order)
    scale = float(np.max(np.abs(direct)))
    err = float(np.max(np.abs(via_zak - direct))) / scale
    return VerificationReport.build(
        f"oblique identity slope={slope}", err, tolerance,
        {"slope": str(slope), "points": int(xi_arr.size),
         "reference_peak": scale})

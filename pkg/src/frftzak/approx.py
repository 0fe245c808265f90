"""Approximate simultaneous modulus prescriptions at several angles.

Given targets (alpha_k, f_k), the solution h is a sum of back-transformed
modulated copies, h = sum_k G_{-alpha_k}[f_k e^{2 i pi omega_k t}].  At
angle alpha_k the k-th term reproduces f_k exactly (up to a unimodular
factor), while every other term is a transform at the angle gap
theta = alpha_k - alpha_j of a compactly supported signal, which the
modulation pushes out of the measurement window: its magnitude there is
|c(theta)| |uhat(xi/sin(theta) - omega_j)| with u the gap-chirped target,
so a frequency-tail threshold on uhat plus a window offset bounds every
cross term by epsilon/(n-1).

Angle gaps that are multiples of pi admit no such suppression (modulation
only translates the signal), so target angles must be distinct mod pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .frft import c_alpha, composition_rule, frft_multiple_pi, frft_trace
from .quadrature import DEFAULT_ORDER
from .reporting import VerificationReport
from .signals import Signal

PI_GAP_TOL = 1e-9


class ScanLimitError(ValueError):
    """The tail scan ended before the requested level was certified."""


def _pi_multiple(theta: float) -> int | None:
    k = round(theta / math.pi)
    return k if abs(theta - k * math.pi) < PI_GAP_TOL else None


def tail_threshold(u: Signal, level: float, *, t_radius: float | None = None,
                   scan_limit: float | None = None,
                   order: int = DEFAULT_ORDER) -> float:
    """Smallest A (on a step-1/(8T) grid) with |uhat(w)| <= level beyond A.

    Scans both signs of the frequency axis at step 1/(8T), fine enough
    that no side lobe of a [-T, T]-supported signal slips between nodes;
    one step is added past the last excursion to clear its descent.
    Raises when the excursions persist into the last tenth of the scan
    range, since then no threshold can be certified.
    """
    if level <= 0:
        raise ValueError(f"level must be positive, got {level}")
    lo, hi = u.support
    t = t_radius if t_radius is not None else max(abs(lo), abs(hi))
    step = 1.0 / (8.0 * t)
    limit = scan_limit if scan_limit is not None else 64.0 * max(t, 1.0)
    w = np.arange(0.0, limit + step, step)
    grid = np.concatenate([-w[:0:-1], w])
    mags = np.abs(frft_trace(u, 0.5 * math.pi, grid, order=order))
    above = np.abs(grid[mags > level])
    if above.size == 0:
        return 0.0
    last = float(above.max())
    if last > 0.9 * limit:
        raise ScanLimitError(
            f"|uhat| still exceeds {level} at |w| = {last:.2f}; "
            f"scan limit {limit:.0f} cannot certify a threshold")
    return last + step


@dataclass(frozen=True)
class ApproxComponent:
    """One target with its back-transform bookkeeping."""

    angle: float
    target: Signal
    omega: float        # modulation pushing cross terms out of the window
    threshold: float    # certified frequency-tail radius of the target
    signal: Signal      # target.modulated(omega); h sums G_{-angle}[signal]


def _term(component: ApproxComponent, angle: float, xi,
          *, order: int = DEFAULT_ORDER) -> np.ndarray:
    """G_angle applied to the component's part of h, on the xi grid.

    composition_rule collapses G_angle G_{-alpha_k} to one transform at
    the angle gap; in the generic case that carries a reflection of the
    signal and the scalar u, while gaps that are multiples of pi reduce
    to identity or reflection with scalar 1.
    """
    scalar, theta, reflect = composition_rule(angle, -component.angle)
    g = component.signal.reflected() if reflect else component.signal
    m = _pi_multiple(theta)
    if m is None:
        return scalar * frft_trace(g, theta, xi, order=order)
    folded = frft_multiple_pi(g, m)
    return scalar * np.asarray(folded(np.asarray(xi, dtype=float)))


@dataclass(frozen=True)
class ApproxSolution:
    """Constructed h with its measured guarantees."""

    components: tuple[ApproxComponent, ...]
    epsilon: float
    t_radius: float
    achieved_errors: tuple[float, ...]       # sup | |G h| - |target| |
    cross_maxima: tuple[tuple[float, ...], ...]  # per angle, other terms
    measure_points: int

    @property
    def size(self) -> int:
        return len(self.components)


def evaluate_field(solution: ApproxSolution, angle: float, xi, *,
                   order: int = DEFAULT_ORDER) -> np.ndarray:
    """G_angle h on the xi grid, exact in the composition constants."""
    xi_arr = np.asarray(xi, dtype=float)
    total = np.zeros(xi_arr.shape, dtype=complex)
    for comp in solution.components:
        total += _term(comp, angle, xi_arr, order=order)
    return total


def evaluate_modulus(solution: ApproxSolution, angle: float, xi, *,
                     order: int = DEFAULT_ORDER) -> np.ndarray:
    return np.abs(evaluate_field(solution, angle, xi, order=order))


def build_solution(targets: Sequence[tuple[float, Signal]], *,
                   epsilon: float = 0.05, measure_points: int = 801,
                   t_radius: float | None = None,
                   order: int = DEFAULT_ORDER) -> ApproxSolution:
    """Choose modulations meeting the per-pair proof bound, then measure.

    For each k the threshold A_k certifies |uhat| <= eps/((n-1)|c(theta)|)
    past A_k for every gap-chirped target, and omega_k = A_k + T/sin(gap)
    keeps the whole measurement window [-T, T] past the threshold.  The
    returned solution records the measured sup errors and cross maxima
    on the window grid.  t_radius widens the window beyond the targets'
    own supports; it may not shrink it.
    """
    if not targets:
        raise ValueError("need at least one target")
    if epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    angles = [float(a) for a, _ in targets]
    signals = [f for _, f in targets]
    n = len(targets)
    for j in range(n):
        for k in range(j + 1, n):
            if _pi_multiple(angles[j] - angles[k]) is not None:
                raise ValueError(
                    f"angles {angles[j]} and {angles[k]} coincide mod pi; "
                    "cross terms cannot be suppressed")
    support_radius = max(max(abs(f.support[0]), abs(f.support[1]))
                         for f in signals)
    if t_radius is None:
        t_radius = support_radius
    elif t_radius < support_radius:
        raise ValueError(
            f"window radius {t_radius} cannot hold targets supported "
            f"out to {support_radius}")
    grid = np.linspace(-t_radius, t_radius, measure_points)
    for k, f in enumerate(signals):
        vals = np.asarray(f(grid))
        if np.any(vals.real < -1e-12) or np.any(np.abs(vals.imag) > 1e-12):
            raise ValueError(f"target {k} must be nonnegative")

    components = []
    for k in range(n):
        if n == 1:
            omega, a_k = 0.0, 0.0
        else:
            a_k = 0.0
            min_sin = 1.0
            for j in range(n):
                if j == k:
                    continue
                theta = angles[j] - angles[k]
                level = epsilon / ((n - 1) * abs(c_alpha(theta)))
                chirped = signals[k].chirped(1.0 / math.tan(theta))
                a_k = max(a_k, tail_threshold(chirped, level,
                                              t_radius=t_radius,
                                              order=order))
                min_sin = min(min_sin, abs(math.sin(theta)))
            omega = a_k + t_radius / min_sin
        components.append(ApproxComponent(
            angle=angles[k], target=signals[k], omega=omega,
            threshold=a_k, signal=signals[k].modulated(omega)))

    achieved = []
    crosses = []
    for j in range(n):
        field = np.zeros(grid.shape, dtype=complex)
        row = []
        for k in range(n):
            term = _term(components[k], angles[j], grid, order=order)
            field += term
            if k != j:
                row.append(float(np.max(np.abs(term))))
        achieved.append(float(np.max(
            np.abs(np.abs(field) - np.abs(signals[j](grid))))))
        crosses.append(tuple(row))
    return ApproxSolution(
        components=tuple(components), epsilon=float(epsilon),
        t_radius=float(t_radius), achieved_errors=tuple(achieved),
        cross_maxima=tuple(crosses), measure_points=int(measure_points))


def verify_approx_solution(solution: ApproxSolution) -> \
        list[VerificationReport]:
    """Reports for the two measured guarantees of the construction."""
    worst_cross = max((c for row in solution.cross_maxima for c in row),
                      default=0.0)
    n = solution.size
    cross_budget = solution.epsilon / max(n - 1, 1)
    target_report = VerificationReport.build(
        "approx modulus targets", max(solution.achieved_errors),
        solution.epsilon,
        metadata={"per_angle": list(solution.achieved_errors),
                  "omegas": [c.omega for c in solution.components]})
    cross_report = VerificationReport.build(
        "approx cross terms", worst_cross, cross_budget,
        metadata={"per_pair": [list(r) for r in solution.cross_maxima],
                  "thresholds": [c.threshold
                                 for c in solution.components]})
    return [target_report, cross_report]

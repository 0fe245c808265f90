"""Interval geometry on the circle and slope-p/q line bundles on the torus.

A closed line of reduced slope p/q on the unit torus crosses x = 0 at q
equally spaced heights, so bundles of such lines are described by subsets
of the circle that are (1/q)-periodic.  This module provides exact-ish
interval bookkeeping on the circle (half-open arcs, merged), the two
derived families used by the phase-retrieval construction (cross sections
and periodized copies), a first-fit selector for non-interacting interval
families, and the predicted frequency support of a separable Zak patch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .slopes import RationalSlope


def _wrap_arc(a: float, b: float) -> list[tuple[float, float]]:
    if b - a >= 1.0:
        return [(0.0, 1.0)]
    a0 = a % 1.0
    b0 = a0 + (b - a)
    if b0 <= 1.0:
        return [(a0, b0)]
    return [(a0, 1.0), (0.0, b0 - 1.0)]


@dataclass(frozen=True)
class CircleIntervalSet:
    """Disjoint, sorted, half-open arcs [a, b) with 0 <= a < b <= 1."""

    arcs: tuple[tuple[float, float], ...]

    @classmethod
    def from_intervals(cls, pairs: Iterable[tuple[float, float]]
                       ) -> "CircleIntervalSet":
        raw: list[tuple[float, float]] = []
        for a, b in pairs:
            if b <= a:
                raise ValueError(f"arc ({a}, {b}) has nonpositive length")
            raw.extend(_wrap_arc(float(a), float(b)))
        if not raw:
            return cls(arcs=())
        raw.sort()
        merged = [list(raw[0])]
        for a, b in raw[1:]:
            if a <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], b)
            else:
                merged.append([a, b])
        # seam: last arc ending at 1 joins a first arc starting at 0
        if (len(merged) > 1 and merged[0][0] == 0.0
                and merged[-1][1] == 1.0):
            merged[-1][1] = 1.0 + merged[0][1]
            merged.pop(0)
            if merged[-1][1] - merged[-1][0] >= 1.0:
                merged = [[0.0, 1.0]]
        out = []
        for a, b in merged:
            out.extend(_wrap_arc(a, b))
        out.sort()
        return cls(arcs=tuple((a, b) for a, b in out))

    @property
    def measure(self) -> float:
        return sum(b - a for a, b in self.arcs)

    def contains(self, x) -> np.ndarray | bool:
        x_arr = np.asarray(x, dtype=float)
        frac = np.mod(np.atleast_1d(x_arr), 1.0)
        hit = np.zeros(frac.shape, dtype=bool)
        for a, b in self.arcs:
            hit |= (frac >= a) & (frac < b)
        return bool(hit.ravel()[0]) if x_arr.ndim == 0 else hit

    def translate(self, t: float) -> "CircleIntervalSet":
        return CircleIntervalSet.from_intervals(
            [(a + t, b + t) for a, b in self.arcs])

    def dilate(self, eps: float) -> "CircleIntervalSet":
        if eps < 0:
            raise ValueError(f"dilation must be >= 0, got {eps}")
        if not self.arcs or eps == 0.0:
            return self
        return CircleIntervalSet.from_intervals(
            [(a - eps, b + eps) for a, b in self.arcs])

    def union(self, other: "CircleIntervalSet") -> "CircleIntervalSet":
        return CircleIntervalSet.from_intervals(
            list(self.arcs) + list(other.arcs))

    def complement(self) -> "CircleIntervalSet":
        if not self.arcs:
            return CircleIntervalSet(arcs=((0.0, 1.0),))
        gaps = []
        first_a, last_b = self.arcs[0][0], self.arcs[-1][1]
        if first_a > 0.0:
            gaps.append((0.0, first_a))
        for (a0, b0), (a1, _) in zip(self.arcs, self.arcs[1:]):
            if b0 < a1:
                gaps.append((b0, a1))
        if last_b < 1.0:
            gaps.append((last_b, 1.0))
        # gaps of a canonical set are already canonical
        return CircleIntervalSet(arcs=tuple(gaps))

    def intersect(self, other: "CircleIntervalSet") -> "CircleIntervalSet":
        out = []
        for a0, b0 in self.arcs:
            for a1, b1 in other.arcs:
                lo, hi = max(a0, a1), min(b0, b1)
                if lo < hi:
                    out.append((lo, hi))
        return (CircleIntervalSet.from_intervals(out) if out
                else CircleIntervalSet(arcs=()))

    def intersects(self, other: "CircleIntervalSet") -> bool:
        return bool(self.intersect(other).arcs)


def cross_section(slope: RationalSlope, interval: tuple[float, float], *,
                  sin_alpha: float | None = None) -> CircleIntervalSet:
    """Heights (mod 1) at x = 0 of the bundle lines active over a
    frequency interval.

    Each active line of reduced slope p/q crosses x = 0 at q points spaced
    1/q apart, so the section carries q congruent arcs and total measure
    |interval| * sqrt(p^2 + q^2).  The interval must be short enough that
    the arcs do not wrap onto themselves.
    """
    a, b = interval
    if b <= a:
        raise ValueError(f"empty interval ({a}, {b})")
    sin_a = slope.sin_alpha if sin_alpha is None else sin_alpha
    if (b - a) * slope.length >= 1.0:
        raise ValueError(
            f"interval of width {b - a} wraps on itself for slope {slope} "
            f"(width * length = {(b - a) * slope.length:.3f} >= 1)")
    p, q = slope.p, slope.q
    base = 0.5 * p
    return CircleIntervalSet.from_intervals(
        [(base + a / sin_a + m / q, base + b / sin_a + m / q)
         for m in range(q)])


def periodized(q: int, interval: tuple[float, float]) -> CircleIntervalSet:
    """The q copies of an arc shifted by the (1/q)-lattice on the circle."""
    a, b = interval
    if b <= a:
        raise ValueError(f"empty interval ({a}, {b})")
    if (b - a) * q >= 1.0:
        raise ValueError(
            f"interval of width {b - a} covers the circle under "
            f"(1/{q})-periodization")
    return CircleIntervalSet.from_intervals(
        [(a + m / q, b + m / q) for m in range(q)])


def interaction_load(slopes: Sequence[RationalSlope], count: int,
                     width: float, margin: float) -> float:
    """Blocked-measure estimate count*(width+2*margin)*sum(L_j + q_j)."""
    return count * (width + 2.0 * margin) * sum(
        s.length + s.q for s in slopes)


def select_intervals(slopes: Sequence[RationalSlope], count: int,
                     width: float, margin: float) -> list[float]:
    """First-fit offsets t_1 < ... < t_count of width-`width` intervals
    whose derived families stay `margin`-separated.

    Two families are kept disjoint across all chosen intervals and all
    slopes: the cross sections (heights of active bundle lines) and the
    (1/q)-periodized copies on the master circle.  Periodized copies are
    what keeps the predicted patch supports disjoint; cross sections are
    the stricter classical criterion, enforced as well.  Raises when the
    interaction load leaves no room or the scan finds no slot.
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if width <= 0 or margin <= 0:
        raise ValueError("width and margin must be positive")
    if not slopes:
        raise ValueError("need at least one slope")
    load = interaction_load(slopes, count, width, margin)
    if load >= 1.0:
        raise ValueError(
            f"requested family cannot fit: interaction load {load:.3f} >= 1 "
            f"(count={count}, width={width}, margin={margin})")

    # per circle: the candidate-image maps (rate, offset) and blocked arcs
    circles: dict[object, dict] = {}
    for j, s in enumerate(slopes):
        sect_maps = {(1.0 / s.sin_alpha, (0.5 * s.p + m / s.q) % 1.0)
                     for m in range(s.q)}
        circles[("sect", j)] = {"maps": sorted(sect_maps), "arcs": []}
    per_maps = {(1.0, m / s.q % 1.0) for s in slopes for m in range(s.q)}
    circles[("per",)] = {"maps": sorted(per_maps), "arcs": []}

    chosen: list[float] = []
    t_hi = 1.0 - width - margin
    for _ in range(count):
        forbidden: list[tuple[float, float]] = []
        for circle in circles.values():
            for r, c in circle["maps"]:
                w_img = r * width + 2.0 * margin
                for u, v in circle["arcs"]:
                    k_lo = math.floor(c - margin - v)
                    k_hi = math.ceil(r + c + w_img - margin - u) + 1
                    for k in range(k_lo, k_hi + 1):
                        lo = (u - w_img + margin - c + k) / r
                        hi = (v + margin - c + k) / r
                        if hi > 0.0 and lo < 1.0:
                            forbidden.append((max(lo, 0.0), min(hi, 1.0)))
        forbidden.sort()
        t = margin
        for lo, hi in forbidden:
            if t < lo:
                break
            t = max(t, hi)
        if t > t_hi:
            raise ValueError(
                f"no slot left for interval {len(chosen) + 1} of {count}; "
                f"interaction load {load:.3f}")
        chosen.append(t)
        span = (t, t + width)
        for j, s in enumerate(slopes):
            circles[("sect", j)]["arcs"].extend(
                cross_section(s, span).arcs)
            circles[("per",)]["arcs"].extend(
                periodized(s.q, span).arcs)
    return chosen


@dataclass(frozen=True)
class XiSupport:
    """Predicted output-frequency support of a Zak patch at one slope.

    Membership: xi is in the support iff the wrapped value
    (xi / sin(alpha)) mod 1 lands in the stored circle set, which is
    (1/q)-periodic by construction; the xi-support inherits period
    sin(alpha)/q.
    """

    slope: RationalSlope
    circle: CircleIntervalSet

    def contains(self, xi) -> np.ndarray | bool:
        xi_arr = np.asarray(xi, dtype=float)
        return self.circle.contains(xi_arr / self.slope.sin_alpha)

    @property
    def period(self) -> float:
        return self.slope.sin_alpha / self.slope.q

    def dilate(self, xi_eps: float) -> "XiSupport":
        return XiSupport(self.slope,
                         self.circle.dilate(xi_eps / self.slope.sin_alpha))


def predict_support(slope: RationalSlope, x_range: tuple[float, float],
                    y_range: tuple[float, float]) -> XiSupport:
    """Frequency support of a patch on [x0,x1] x [y0,y1] of the unit square.

    A Zak row at (x, eta) can feed the oblique transform at xi exactly when
    xi/sin(alpha) + p/2 is congruent to a patch height y - (p/q) x modulo
    the (1/q)-lattice; sweeping the rectangle gives one height interval
    periodized q ways.
    """
    x0, x1 = x_range
    y0, y1 = y_range
    if not (0.0 <= x0 < x1 <= 1.0 and 0.0 <= y0 < y1 <= 1.0):
        raise ValueError("patch rectangle must sit inside the unit square")
    r = slope.cot
    if r >= 0:
        lo, hi = y0 - r * x1, y1 - r * x0
    else:
        lo, hi = y0 - r * x0, y1 - r * x1
    if hi - lo >= 1.0:
        raise ValueError("patch is too wide: its heights cover the circle")
    shifted = (lo - 0.5 * slope.p, hi - 0.5 * slope.p)
    return XiSupport(slope, periodized(slope.q, shifted))

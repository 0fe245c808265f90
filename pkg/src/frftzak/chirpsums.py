"""Finite chirp sums and the line geometry attached to a rational slope.

A reduced slope p/q carries a family of affine lines on the time-frequency
plane, indexed by an integer n:

    xi_n(x) = (p/q) x + p/2 + n/q

and a q-periodic family of unimodular-sum coefficients c_n of modulus
1/sqrt(q).  The coefficients weight the lines that pass through the unit
square in frequency; summed over that admissible window (half-open in xi)
they telescope to exactly 1 at every x.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Optional

from .slopes import RationalSlope


def gauss_coefficient(n: int, slope: RationalSlope) -> complex:
    """c_n = (1/q) sum_k (-1)^{kp} e^{i pi (p/q) k^2} e^{-2 i pi n k / q}.

    The exponent collapses to pi * N_k / q with the integer
    N_k = p*k*(k+q) - 2*n*k, reduced mod 2q before any float touches it,
    so c_{n+q} == c_n holds bit for bit.
    """
    p, q = slope.p, slope.q
    total = 0j
    for k in range(q):
        n_k = (p * k * (k + q) - 2 * n * k) % (2 * q)
        total += cmath.exp(1j * math.pi * n_k / q)
    return total / q


def moment_coefficient(n: int, slope: RationalSlope) -> complex:
    """Line weight paired with the default (-1) chirp sign.

    The conjugate-phase mate of gauss_coefficient: with it, the weighted
    Zak rows over the admissible window reproduce the chirped moment
    integral exactly.  Same modulus 1/sqrt(q), same exact q-periodicity,
    and the same telescoping sum of 1 over the half-open window.
    """
    return gauss_coefficient(-n, slope).conjugate()


def xi_line(n: int, slope: RationalSlope, x: float) -> float:
    """Height of line n over x: (p/q) x + p/2 + n/q."""
    p, q = slope.p, slope.q
    return (p * x + n) / q + 0.5 * p


def _exact(x) -> Fraction:
    # Fraction(float) is the exact binary value, so integer-boundary
    # detection stays consistent with float evaluation of xi_line
    return x if isinstance(x, Fraction) else Fraction(x)


def admissible_set(slope: RationalSlope, x, boundary: str = "half_open"
                   ) -> range:
    """Integers n whose line passes through [0, 1] (or [0, 1)) above x.

    The condition 0 <= p*x + p*q/2 + n <= q is solved exactly, so exact
    rational x values land on the correct side of the boundary.
    """
    if boundary not in ("half_open", "closed"):
        raise ValueError(f"boundary must be half_open or closed, got {boundary!r}")
    p, q = slope.p, slope.q
    shift = -p * _exact(x) - Fraction(p * q, 2)
    n_min = math.ceil(shift)
    n_max = math.floor(shift + q)
    if boundary == "half_open" and shift + q == n_max:
        n_max -= 1
    return range(n_min, n_max + 1)


def line_sum(slope: RationalSlope, x, boundary: str = "half_open") -> complex:
    """Sum of c_n over the admissible window at x; identically 1 half-open."""
    return sum(gauss_coefficient(n, slope) for n in admissible_set(
        slope, x, boundary))


def b_region(n: int, slope: RationalSlope
             ) -> Optional[tuple[Fraction, Fraction]]:
    """Exact x-interval in [0, 1] where line n stays inside 0 <= xi <= 1.

    None when the line misses the square over (0, 1) entirely (including
    grazing contact at a single point).
    """
    p, q = slope.p, slope.q
    if p == 0:
        return (Fraction(0), Fraction(1)) if n in (0, q) else None
    lo = Fraction(-p * q - 2 * n, 2 * p)
    hi = Fraction(2 * q - p * q - 2 * n, 2 * p)
    if p < 0:
        lo, hi = hi, lo
    lo, hi = max(lo, Fraction(0)), min(hi, Fraction(1))
    return (lo, hi) if lo < hi else None


def xi_boundary_points(slope: RationalSlope) -> tuple[Fraction, ...]:
    """x in (0, 1) where some admissible line crosses xi = 0 or xi = 1.

    These are the only points where the admissible window changes, hence
    the natural quadrature panel boundaries.
    """
    p, q = slope.p, slope.q
    points: set[Fraction] = set()
    if p == 0:
        return ()
    n_lo = math.ceil(Fraction(-p * q, 2) - max(p, 0))
    n_hi = math.floor(q - Fraction(p * q, 2) - min(p, 0))
    for n in range(n_lo, n_hi + 1):
        for c in (0, 1):
            x = Fraction(2 * c * q - p * q - 2 * n, 2 * p)
            if 0 < x < 1:
                points.add(x)
    return tuple(sorted(points))

"""Closed-form signal expressions with declared support windows.

Signals are immutable expression trees built from a few primitive shapes
(gaussian, box, bump, triangle, raised cosine) and wrappers (chirp,
modulation, shift, scalar multiple, reflection, finite sum).  Every node
knows its support window, its rough points (jumps/kinks), and a bound on
how fast its phase oscillates; quadrature routines use all three.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

# Relative magnitude of a gaussian tail at the edge of its declared window.
GAUSSIAN_TAIL = 1e-16


def _as_array(t):
    arr = np.asarray(t, dtype=float)
    return arr, arr.ndim == 0


class Signal:
    """A complex-valued function of one real variable, supported on a window."""

    support: tuple[float, float]

    def _eval(self, t: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def __call__(self, t):
        arr, scalar = _as_array(t)
        vals = self._eval(np.atleast_1d(arr))
        return complex(vals[0]) if scalar else vals

    def breakpoints(self) -> tuple[float, ...]:
        """Sorted quadrature cut points: jumps, kinks, edges, sharp layers."""
        return self.support

    def segments(self) -> list[tuple[float, float]]:
        """Disjoint intervals covering the support, merged and sorted."""
        return [self.support]

    def cycles_hint(self) -> float:
        """Upper estimate of phase oscillation in cycles per unit length."""
        return 0.0

    # -- structural helpers -------------------------------------------------

    def shifted(self, delay: float) -> "Signal":
        return Shift(float(delay), self)

    def modulated(self, freq: float) -> "Signal":
        return Modulation(float(freq), self)

    def chirped(self, rate: float) -> "Signal":
        return Chirp(float(rate), self)

    def reflected(self) -> "Signal":
        return Reflect(self)

    def scaled(self, factor) -> "Signal":
        return Scale(complex(factor), self)

    def __add__(self, other):
        if not isinstance(other, Signal):
            return NotImplemented
        parts = []
        for s in (self, other):
            parts.extend(s.terms if isinstance(s, Sum) else [s])
        return Sum(parts)

    def __mul__(self, factor):
        if isinstance(factor, (int, float, complex)):
            return self.scaled(factor)
        return NotImplemented

    __rmul__ = __mul__


def _check_window(a: float, b: float):
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ValueError("support window must be finite")
    if not a < b:
        raise ValueError(f"empty support window [{a}, {b}]")


class Gaussian(Signal):
    """gamma_u(t) = exp(-u*pi*t^2); Re(u) > 0 so the window is finite."""

    def __init__(self, u=1.0):
        u = complex(u)
        if u.real <= 0:
            raise ValueError("gaussian parameter needs Re(u) > 0; "
                             "use .chirped() for pure quadratic phases")
        self.u = u
        half = math.sqrt(-math.log(GAUSSIAN_TAIL) / (math.pi * u.real))
        self.support = (-half, half)

    def _eval(self, t):
        return np.exp(-self.u * math.pi * t * t)

    def breakpoints(self):
        return self.support

    def cycles_hint(self):
        return abs(self.u.imag) * self.support[1]


class Box(Signal):
    """Indicator of the half-open interval [a, b)."""

    def __init__(self, a: float, b: float):
        _check_window(a, b)
        self.support = (float(a), float(b))

    def _eval(self, t):
        a, b = self.support
        return ((t >= a) & (t < b)).astype(complex)


class Bump(Signal):
    """Smooth bump exp(1 - 1/(1-s^2)) on (a, b), zero outside; peak 1."""

    def __init__(self, a: float, b: float):
        _check_window(a, b)
        self.support = (float(a), float(b))

    def _eval(self, t):
        a, b = self.support
        s = (2.0 * t - (a + b)) / (b - a)
        out = np.zeros(t.shape, dtype=complex)
        inside = np.abs(s) < 1.0
        si = s[inside]
        out[inside] = np.exp(1.0 - 1.0 / (1.0 - si * si))
        return out

    def breakpoints(self):
        # geometric grading: fixed-order panels lose accuracy in the
        # boundary layers where the derivatives of exp(-1/(1-s^2)) spike
        a, b = self.support
        w = b - a
        cuts = {a, b}
        for k in range(1, 8):
            cuts.add(a + w * 0.5**k)
            cuts.add(b - w * 0.5**k)
        return tuple(sorted(cuts))


class Triangle(Signal):
    """Hat function: 1 at the midpoint, linear to 0 at the endpoints."""

    def __init__(self, a: float, b: float):
        _check_window(a, b)
        self.support = (float(a), float(b))

    def _eval(self, t):
        a, b = self.support
        s = (2.0 * t - (a + b)) / (b - a)
        return (np.maximum(0.0, 1.0 - np.abs(s))).astype(complex)

    def breakpoints(self):
        a, b = self.support
        return (a, 0.5 * (a + b), b)


class RaisedCosine(Signal):
    """cos^2 taper on [a, b]: value cos(pi*s/2)^2 with s in [-1, 1]; peak 1."""

    def __init__(self, a: float, b: float):
        _check_window(a, b)
        self.support = (float(a), float(b))

    def _eval(self, t):
        a, b = self.support
        s = (2.0 * t - (a + b)) / (b - a)
        out = np.zeros(t.shape, dtype=complex)
        inside = np.abs(s) <= 1.0
        c = np.cos(0.5 * math.pi * s[inside])
        out[inside] = c * c
        return out


class Chirp(Signal):
    """Multiply by the quadratic phase exp(-i*pi*rate*t^2)."""

    def __init__(self, rate: float, child: Signal):
        self.rate = float(rate)
        self.child = child
        self.support = child.support

    def _eval(self, t):
        return np.exp(-1j * math.pi * self.rate * t * t) * self.child._eval(t)

    def breakpoints(self):
        return self.child.breakpoints()

    def segments(self):
        return self.child.segments()

    def cycles_hint(self):
        edge = max(abs(self.support[0]), abs(self.support[1]))
        return self.child.cycles_hint() + abs(self.rate) * edge


class Modulation(Signal):
    """Multiply by exp(2*i*pi*freq*t)."""

    def __init__(self, freq: float, child: Signal):
        self.freq = float(freq)
        self.child = child
        self.support = child.support

    def _eval(self, t):
        return np.exp(2j * math.pi * self.freq * t) * self.child._eval(t)

    def breakpoints(self):
        return self.child.breakpoints()

    def segments(self):
        return self.child.segments()

    def cycles_hint(self):
        return self.child.cycles_hint() + abs(self.freq)


class Shift(Signal):
    """Translate the child: value(t) = child(t - delay)."""

    def __init__(self, delay: float, child: Signal):
        self.delay = float(delay)
        self.child = child
        a, b = child.support
        self.support = (a + self.delay, b + self.delay)

    def _eval(self, t):
        return self.child._eval(t - self.delay)

    def breakpoints(self):
        return tuple(x + self.delay for x in self.child.breakpoints())

    def segments(self):
        return [(a + self.delay, b + self.delay) for a, b in self.child.segments()]

    def cycles_hint(self):
        return self.child.cycles_hint()


class Scale(Signal):
    """Complex scalar multiple of the child."""

    def __init__(self, factor: complex, child: Signal):
        self.factor = complex(factor)
        self.child = child
        self.support = child.support

    def _eval(self, t):
        return self.factor * self.child._eval(t)

    def breakpoints(self):
        return self.child.breakpoints()

    def segments(self):
        return self.child.segments()

    def cycles_hint(self):
        return self.child.cycles_hint()


class Reflect(Signal):
    """Reflected child: value(t) = child(-t)."""

    def __init__(self, child: Signal):
        self.child = child
        a, b = child.support
        self.support = (-b, -a)

    def _eval(self, t):
        return self.child._eval(-t)

    def breakpoints(self):
        return tuple(sorted(-x for x in self.child.breakpoints()))

    def segments(self):
        return sorted((-b, -a) for a, b in self.child.segments())

    def cycles_hint(self):
        return self.child.cycles_hint()


class Sum(Signal):
    """Finite sum of signals.

    Evaluation slices sorted inputs with searchsorted so trains of many
    narrow pieces cost O(total nodes), not O(pieces * nodes).
    """

    def __init__(self, terms: Sequence[Signal]):
        terms = list(terms)
        if not terms:
            raise ValueError("empty sum")
        self.terms = terms
        self.support = (min(s.support[0] for s in terms),
                        max(s.support[1] for s in terms))

    def _eval(self, t):
        out = np.zeros(t.shape, dtype=complex)
        sorted_input = t.size > 1 and bool(np.all(np.diff(t) >= 0.0))
        for term in self.terms:
            a, b = term.support
            if sorted_input:
                lo = int(np.searchsorted(t, a, side="left"))
                hi = int(np.searchsorted(t, b, side="right"))
                if lo < hi:
                    out[lo:hi] += term._eval(t[lo:hi])
            else:
                mask = (t >= a) & (t <= b)
                if mask.any():
                    out[mask] += term._eval(t[mask])
        return out

    def breakpoints(self):
        pts: set[float] = set()
        for term in self.terms:
            pts.update(term.breakpoints())
        return tuple(sorted(pts))

    def segments(self):
        raw = []
        for term in self.terms:
            raw.extend(term.segments())
        raw.sort()
        merged = [list(raw[0])]
        for a, b in raw[1:]:
            if a <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], b)
            else:
                merged.append([a, b])
        return [tuple(seg) for seg in merged]

    def cycles_hint(self):
        return max(term.cycles_hint() for term in self.terms)


# -- constructors ------------------------------------------------------------

def gaussian(u=1.0) -> Signal:
    return Gaussian(u)


def box(a: float, b: float) -> Signal:
    return Box(a, b)


def bump(a: float, b: float) -> Signal:
    return Bump(a, b)


def triangle(a: float, b: float) -> Signal:
    return Triangle(a, b)


def raised_cosine(a: float, b: float) -> Signal:
    return RaisedCosine(a, b)


def raised_cosine_coefficient(a: float, b: float, m: int) -> complex:
    """Circle Fourier coefficient integral(cos^2 taper on [a,b] * e^{2i pi m x}).

    Closed form: with width w = b-a and center c,
    e^{2 i pi m c} * sin(pi m w) / (2 pi m (1 - (m w)^2)), continued through
    the removable points m = 0 and |m| = 1/w.
    """
    w = b - a
    c = 0.5 * (a + b)
    phase = complex(math.cos(2 * math.pi * m * c), math.sin(2 * math.pi * m * c))
    mw = m * w
    if m == 0:
        base = w / 2.0
    elif abs(1.0 - mw * mw) < 1e-9:
        base = w / 4.0
    else:
        base = math.sin(math.pi * mw) / (2.0 * math.pi * m * (1.0 - mw * mw))
    return phase * base

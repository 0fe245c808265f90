"""Zak transform: evaluation, inversion, separable patches, identity checks.

For a compactly supported signal f,

    Zf(x, xi) = sum_k f(x + k) e^{-2 i pi k xi}

(a finite sum).  Zf is 1-periodic in xi and quasi-periodic in x:
Zf(x + n, xi) = e^{2 i pi n xi} Zf(x, xi), so values on the unit square
determine everything.  Row Fourier coefficients invert the transform:
f(x + m) = integral_0^1 Zf(x, xi) e^{2 i pi m xi} dxi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .frft import frft_trace
from .quadrature import (DEFAULT_ORDER, l2_norm, panel_edges, panel_nodes,
                         quad_integrate)
from .reporting import VerificationReport
from .signals import Signal, Sum


def zak_eval(f: Signal, x, xi) -> np.ndarray | complex:
    """Zf at broadcast-compatible arrays of time and frequency points."""
    x_arr = np.asarray(x, dtype=float)
    xi_arr = np.asarray(xi, dtype=float)
    scalar = x_arr.ndim == 0 and xi_arr.ndim == 0
    x_b, xi_b = np.broadcast_arrays(np.atleast_1d(x_arr), np.atleast_1d(xi_arr))
    lo, hi = f.support
    k_min = math.ceil(lo - float(np.max(x_b)))
    k_max = math.floor(hi - float(np.min(x_b)))
    out = np.zeros(x_b.shape, dtype=complex)
    for k in range(k_min, k_max + 1):
        out += f(x_b + k) * np.exp(-2j * math.pi * k * xi_b)
    return complex(out.ravel()[0]) if scalar else out


def inverse_zak_sample(f: Signal, x: float, m: int, *,
                       order: int = DEFAULT_ORDER) -> complex:
    """Recover f(x + m) from the m-th row Fourier coefficient of Zf."""
    lo, hi = f.support
    k_span = abs(math.floor(hi - x)) + abs(math.ceil(lo - x)) + 1
    return quad_integrate(
        lambda u: zak_eval(f, x, u) * np.exp(2j * math.pi * m * u),
        0.0, 1.0, cycles=abs(m) + k_span, order=order)


@dataclass(frozen=True)
class ZakPatch:
    """Separable function u(x) v(xi) on the unit square, extended to the
    plane by quasi-periodicity in x and periodicity in xi."""

    envelope: Signal   # u, supported inside [0, 1]
    profile: Signal    # v, supported inside [0, 1], read as a circle function

    def __post_init__(self):
        for name, g in (("envelope", self.envelope), ("profile", self.profile)):
            if g.support[0] < 0.0 or g.support[1] > 1.0:
                raise ValueError(f"{name} support {g.support} leaves [0, 1]")

    def value(self, x, xi) -> np.ndarray | complex:
        x_arr = np.asarray(x, dtype=float)
        xi_arr = np.asarray(xi, dtype=float)
        scalar = x_arr.ndim == 0 and xi_arr.ndim == 0
        x_b, xi_b = np.broadcast_arrays(np.atleast_1d(x_arr),
                                        np.atleast_1d(xi_arr))
        n = np.floor(x_b)
        out = (np.exp(2j * math.pi * n * xi_b)
               * self.envelope(x_b - n) * self.profile(np.mod(xi_b, 1.0)))
        return complex(out.ravel()[0]) if scalar else out


def fourier_coefficient(v: Signal, m: int, *,
                        order: int = DEFAULT_ORDER) -> complex:
    """integral_0^1 v(xi) e^{2 i pi m xi} dxi by adapted quadrature."""
    lo, hi = v.support
    cuts = [b for b in v.breakpoints() if lo < b < hi]
    return quad_integrate(lambda u: v(u) * np.exp(2j * math.pi * m * u),
                          lo, hi, breakpoints=cuts,
                          cycles=abs(m) + v.cycles_hint(), order=order)


def synthesize(patch: ZakPatch, m_range: int, *,
               coefficients: Callable[[int], complex] | None = None,
               order: int = DEFAULT_ORDER) -> Signal:
    """Signal whose Zak transform matches the patch up to profile truncation.

    Inverting row by row gives f = sum_m vhat(m) * u(. - m) with vhat the
    circle Fourier coefficients of the profile; the sum is truncated to
    |m| <= m_range.  Pass `coefficients` when a closed form is available.
    """
    if m_range < 0:
        raise ValueError(f"m_range must be >= 0, got {m_range}")
    coeff = coefficients or (
        lambda m: fourier_coefficient(patch.profile, m, order=order))
    terms = []
    for m in range(-m_range, m_range + 1):
        c = complex(coeff(m))
        if c != 0.0:
            terms.append(patch.envelope.shifted(float(m)).scaled(c))
    if not terms:
        raise ValueError("all profile coefficients vanish in the range")
    return Sum(terms)


def verify_zak_identities(f: Signal, *, tolerance: float,
                          xs: Sequence[float] = (0.15, 0.4, 0.75),
                          xis: Sequence[float] = (0.1, 0.35, 0.8),
                          shifts: Sequence[int] = (-2, 1, 3),
                          fhat_cutoff: float = 1e-8, max_terms: int = 512,
                          order: int = DEFAULT_ORDER
                          ) -> list[VerificationReport]:
    """Six structural checks of the transform on a grid of sample points.

    Returns one report each for norm preservation on the unit square,
    quasi-periodicity in x, periodicity in xi, the Poisson-style link to
    the Fourier side, and the two marginals (time reconstruction and
    frequency projection).
    """
    half_pi = 0.5 * math.pi
    lo, hi = f.support
    frac_cuts = sorted({float(b) % 1.0 for b in f.breakpoints()} - {0.0})
    xs = np.asarray(xs, dtype=float)
    xis = np.asarray(xis, dtype=float)
    x_grid, xi_grid = np.meshgrid(xs, xis, indexing="ij")
    base = zak_eval(f, x_grid, xi_grid)
    scale = float(np.max(np.abs(base))) or 1.0
    reports = []

    # unitarity: square mass over the unit square equals the signal's norm.
    # The xi integral of |Zf|^2 is a trig polynomial of degree < lattice
    # span, so both directions are plain quadratures.
    span = float(math.floor(hi) - math.ceil(lo) + 2)
    x_nodes, x_w = panel_nodes(panel_edges(
        0.0, 1.0, breakpoints=frac_cuts, cycles=f.cycles_hint(),
        order=order), order)
    xi_nodes, xi_w = panel_nodes(panel_edges(
        0.0, 1.0, cycles=span, order=order), order)
    square = np.abs(zak_eval(f, x_nodes[:, None], xi_nodes[None, :])) ** 2
    mass = float(np.real(x_w @ square @ xi_w))
    norm = l2_norm(f, order=order)
    reports.append(VerificationReport.build(
        "zak unitarity", abs(math.sqrt(mass) - norm) / norm, tolerance,
        {"square_mass": mass, "signal_norm": norm}))

    err = 0.0
    for n in shifts:
        lhs = zak_eval(f, x_grid + n, xi_grid)
        rhs = np.exp(2j * math.pi * n * xi_grid) * base
        err = max(err, float(np.max(np.abs(lhs - rhs))))
    reports.append(VerificationReport.build(
        "zak quasi-periodicity", err / scale, tolerance,
        {"shifts": list(shifts)}))

    err = 0.0
    for n in shifts:
        lhs = zak_eval(f, x_grid, xi_grid + n)
        err = max(err, float(np.max(np.abs(lhs - base))))
    reports.append(VerificationReport.build(
        "zak frequency periodicity", err / scale, tolerance, {}))

    # Poisson link: Zf(x, xi) = e^{2 i pi x xi} sum_k fhat(xi + k) e^{2 i pi k x}
    peak = float(np.max(np.abs(frft_trace(f, half_pi,
                                          np.linspace(-2, 2, 41),
                                          order=order))))
    k_half = 8
    while True:
        band = np.concatenate([np.arange(-k_half, -k_half // 2),
                               np.arange(k_half // 2 + 1, k_half + 1)])
        band_mag = np.abs(frft_trace(f, half_pi, band.astype(float),
                                     order=order))
        if float(band_mag.max()) <= fhat_cutoff * peak or k_half >= max_terms:
            break
        k_half *= 2
    ks = np.arange(-k_half, k_half + 1)
    err = 0.0
    tail = float(band_mag.max()) * 2 * k_half  # crude leftover bound
    for xi0 in xis:
        fhat = frft_trace(f, half_pi, xi0 + ks, order=order)
        for x0 in xs:
            rhs = (np.exp(2j * math.pi * x0 * xi0)
                   * np.sum(fhat * np.exp(2j * math.pi * ks * x0)))
            lhs = zak_eval(f, x0, xi0)
            err = max(err, abs(lhs - rhs))
    reports.append(VerificationReport.build(
        "zak poisson", err / scale, tolerance,
        {"terms": int(2 * k_half + 1), "truncation_bound": tail / scale}))

    # time marginal: integral over one xi period returns f(x) pointwise
    err = 0.0
    for x0 in np.concatenate([xs, xs + 1.0, xs - 2.0]):
        k_peak = max(abs(math.ceil(lo - x0)), abs(math.floor(hi - x0)), 1)
        got = quad_integrate(lambda u: zak_eval(f, x0, u), 0.0, 1.0,
                             cycles=k_peak, order=order)
        err = max(err, abs(got - f(x0)))
    reports.append(VerificationReport.build(
        "zak time marginal", err / scale, tolerance, {}))

    # frequency marginal: weighted x-average over one period gives fhat(xi)
    err = 0.0
    for xi0 in xis:
        got = quad_integrate(
            lambda u: zak_eval(f, u, xi0) * np.exp(-2j * math.pi * u * xi0),
            0.0, 1.0, breakpoints=frac_cuts,
            cycles=abs(xi0) + f.cycles_hint() + 1.0, order=order)
        expect = frft_trace(f, half_pi, np.array([xi0]), order=order)[0]
        err = max(err, abs(got - expect))
    reports.append(VerificationReport.build(
        "zak frequency marginal", err / scale, tolerance, {}))

    return reports

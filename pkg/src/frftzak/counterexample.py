"""Non-uniqueness families for phase retrieval from several transform moduli.

The construction places separable Zak patches over a shared narrow
envelope at circle offsets chosen so that, for every measured slope, each
member's transform occupies its own family of frequency arcs.  Unimodular
recombinations of the members then change the signal but leave every
measured modulus unchanged up to the profile-truncation tail.

Members are truncated profile Fourier series, so all disjointness claims
hold up to an explicit tail bound; the verification functions measure the
actual leakage and modulus drift on a fixed frequency grid and report
against the requested tolerances.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .frft import frft_trace
from .quadrature import DEFAULT_ORDER, l2_norm
from .reporting import VerificationReport
from .signals import Signal, raised_cosine, raised_cosine_coefficient
from .slopes import RationalSlope
from .torus import XiSupport, predict_support, select_intervals
from .zak import ZakPatch, synthesize

DEFAULT_RATIOS = ((1, 1), (2, 1), (1, 2))


def profile_tail_bound(profile_width: float, m_range: int) -> float:
    """sup |v - v_M| <= 1 / (2 pi w^2 M^2) for the cos^2 taper of width w."""
    return 1.0 / (2.0 * math.pi * profile_width ** 2 * m_range ** 2)


def default_m_range(profile_width: float, tail_target: float) -> int:
    """Smallest truncation order whose tail bound meets the target."""
    if tail_target <= 0:
        raise ValueError("tail target must be positive")
    return math.ceil(math.sqrt(
        1.0 / (2.0 * math.pi * profile_width ** 2 * tail_target)))


@dataclass(frozen=True)
class CounterexampleFamily:
    """Orthogonal members with slope-wise separated transform supports."""

    slopes: tuple[RationalSlope, ...]
    offsets: tuple[float, ...]
    width: float
    margin: float
    envelope_width: float
    m_range: int
    tail_bound: float
    envelope: Signal
    profiles: tuple[Signal, ...]
    members: tuple[Signal, ...]
    coefficients: np.ndarray     # shape (n, 2*m_range+1), row k = profile k
    gram: np.ndarray             # exact member inner products

    @property
    def size(self) -> int:
        return len(self.members)

    def supports(self, slope: RationalSlope) -> list[XiSupport]:
        x_range = (0.0, self.envelope_width)
        return [predict_support(slope, x_range, p.support)
                for p in self.profiles]

    def member_combination(self, phases: Sequence[complex]) -> Signal:
        if len(phases) != self.size:
            raise ValueError(
                f"need {self.size} phases, got {len(phases)}")
        terms = [m.scaled(complex(c)) for m, c in zip(self.members, phases)]
        return terms[0] if len(terms) == 1 else sum(terms[1:], terms[0])

    def correlation(self, phases_a: Sequence[complex],
                    phases_b: Sequence[complex]) -> float:
        """|<f_a, f_b>| / (|f_a| |f_b|) from the exact Gram matrix."""
        a = np.asarray(phases_a, dtype=complex)
        b = np.asarray(phases_b, dtype=complex)
        inner = a @ self.gram @ b.conj()
        na = math.sqrt(abs(a @ self.gram @ a.conj()))
        nb = math.sqrt(abs(b @ self.gram @ b.conj()))
        return abs(inner) / (na * nb)


def assemble_family(slopes: Sequence[RationalSlope],
                    offsets: Sequence[float], width: float, margin: float,
                    *, m_range: int | None = None,
                    envelope_width: float | None = None,
                    tail_target: float | None = None,
                    order: int = DEFAULT_ORDER) -> CounterexampleFamily:
    """Build the family at explicit offsets, without safety selection.

    The envelope is a cos^2 taper on [0, d] with d = margin / (4 max L),
    small enough that the shear by any slope thickens a patch's height
    set by less than half the margin.  Profiles are cos^2 tapers on the
    offset intervals shrunk by margin/2 per side, truncated at m_range.
    """
    slopes = tuple(slopes)
    if not slopes:
        raise ValueError("need at least one slope")
    if envelope_width is None:
        if margin <= 0:
            raise ValueError(
                "envelope_width is required when margin is zero")
        envelope_width = margin / (4.0 * max(s.length for s in slopes))
    profile_width = width - margin
    if profile_width <= 0:
        raise ValueError("margin leaves no room for the profile")
    if m_range is None:
        if tail_target is None:
            raise ValueError("need m_range or tail_target")
        m_range = default_m_range(profile_width, tail_target)

    envelope = raised_cosine(0.0, envelope_width)
    profiles = []
    members = []
    coeff_rows = []
    ms = np.arange(-m_range, m_range + 1)
    for t in offsets:
        a, b = t + 0.5 * margin, t + width - 0.5 * margin
        if not (0.0 < a < b < 1.0):
            raise ValueError(f"profile interval ({a}, {b}) leaves (0, 1)")
        profiles.append(raised_cosine(a, b))
        row = np.array([raised_cosine_coefficient(a, b, int(m))
                        for m in ms])
        coeff_rows.append(row)
        members.append(synthesize(
            ZakPatch(envelope, profiles[-1]), m_range,
            coefficients=lambda m, a=a, b=b:
                raised_cosine_coefficient(a, b, m)))
    coefficients = np.vstack(coeff_rows)
    # envelope shifts never overlap, so the Gram matrix is exact
    env_norm_sq = l2_norm(envelope, order=order) ** 2
    gram = env_norm_sq * (coefficients @ coefficients.conj().T)
    return CounterexampleFamily(
        slopes=slopes, offsets=tuple(float(t) for t in offsets),
        width=float(width), margin=float(margin),
        envelope_width=float(envelope_width), m_range=int(m_range),
        tail_bound=profile_tail_bound(profile_width, m_range),
        envelope=envelope, profiles=tuple(profiles), members=tuple(members),
        coefficients=coefficients, gram=gram)


def build_family(ratios: Sequence[tuple[int, int]] = DEFAULT_RATIOS,
                 count: int = 2, *, width: float = 0.03,
                 margin: float = 0.006, m_range: int | None = None,
                 phase_tol: float = 1e-3,
                 order: int = DEFAULT_ORDER) -> CounterexampleFamily:
    """Select non-interacting offsets, then assemble the family.

    The default truncation order is set from the phase tolerance: the
    modulus drift under recombination is bounded by 2 n q_max times the
    profile tail, so the tail is pushed below phase_tol / 24.
    """
    slopes = tuple(RationalSlope(p, q) for p, q in ratios)
    offsets = select_intervals(slopes, count, width, margin)
    return assemble_family(
        slopes, offsets, width, margin, m_range=m_range,
        tail_target=phase_tol / 24.0 if m_range is None else None,
        order=order)


@dataclass(frozen=True)
class FamilyTraces:
    """Member transforms sampled on one fixed frequency grid."""

    xi: np.ndarray
    values: np.ndarray   # shape (n_slopes, n_members, len(xi))


def family_traces(family: CounterexampleFamily, *, xi_min: float = -3.0,
                  xi_max: float = 3.0, num: int = 2048,
                  order: int = DEFAULT_ORDER) -> FamilyTraces:
    """Transform every member along every slope once; reused by checks."""
    xi = np.linspace(xi_min, xi_max, num)
    values = np.empty((len(family.slopes), family.size, num), dtype=complex)
    for j, slope in enumerate(family.slopes):
        for k, f in enumerate(family.members):
            values[j, k] = frft_trace(f, slope.angle, xi, order=order)
    return FamilyTraces(xi=xi, values=values)


def verify_disjoint_supports(family: CounterexampleFamily,
                             traces: FamilyTraces, *,
                             leak_tol: float) -> list[VerificationReport]:
    """Geometric separation of predicted supports, then measured leakage.

    Separation: pairwise intersection measure of the predicted height
    arcs, which must be exactly zero.  Leakage: for each member and slope,
    the fraction of on-grid transform energy outside the member's own
    predicted support, which must stay under `leak_tol`.
    """
    worst_overlap = 0.0
    overlap_at = None
    worst_leak = 0.0
    leak_at = None
    for j, slope in enumerate(family.slopes):
        sups = family.supports(slope)
        for k in range(family.size):
            for l in range(k + 1, family.size):
                m = sups[k].circle.intersect(sups[l].circle).measure
                if m > worst_overlap:
                    worst_overlap, overlap_at = m, (k, l, str(slope))
        for k in range(family.size):
            power = np.abs(traces.values[j, k]) ** 2
            total = power.sum()
            inside = sups[k].contains(traces.xi)
            leak = power[~inside].sum() / total
            if leak > worst_leak:
                worst_leak, leak_at = leak, (k, str(slope))
    sep = VerificationReport.build(
        "counterexample support separation", worst_overlap, 0.0,
        metadata={"worst_pair": overlap_at})
    leak = VerificationReport.build(
        "counterexample support leakage", worst_leak, leak_tol,
        metadata={"worst_member": leak_at,
                  "tail_bound": family.tail_bound})
    return [sep, leak]


def default_alternates(size: int) -> list[tuple[complex, ...]]:
    """Unimodular recombinations tested against the all-ones member."""
    if size < 2:
        raise ValueError("recombination needs at least two members")
    flip = [1.0 + 0.0j] * size
    flip[-1] = -1.0 + 0.0j
    turn = [1.0 + 0.0j] * size
    turn[-1] = cmath.exp(1j * math.pi / 3.0)
    return [tuple(flip), tuple(turn)]


def verify_phase_invariance(family: CounterexampleFamily,
                            traces: FamilyTraces, *, phase_tol: float,
                            correlation_max: float,
                            alternates: Sequence[Sequence[complex]] | None
                            = None) -> list[VerificationReport]:
    """Moduli of recombined members agree; the members still differ.

    For each alternate phase vector c the check compares |sum_k c_k T_k|
    with the all-ones modulus on the grid, normalized by the all-ones
    peak per slope.  The companion report shows the recombinations are
    far from scalar multiples of the baseline signal (correlation bound).
    """
    if alternates is None:
        alternates = default_alternates(family.size)
    ones = tuple([1.0 + 0.0j] * family.size)
    worst_drift = 0.0
    drift_at = None
    per_slope = {}
    for j, slope in enumerate(family.slopes):
        base = np.abs(traces.values[j].sum(axis=0))
        scale = base.max()
        for c in alternates:
            mixed = np.abs(
                np.tensordot(np.asarray(c, dtype=complex),
                             traces.values[j], axes=1))
            drift = np.max(np.abs(mixed - base)) / scale
            per_slope[f"{slope} {np.round(np.angle(c), 3).tolist()}"] = drift
            if drift > worst_drift:
                worst_drift, drift_at = drift, (str(slope), list(map(str, c)))
    correlations = [family.correlation(ones, c) for c in alternates]
    invariance = VerificationReport.build(
        "counterexample phase invariance", worst_drift, phase_tol,
        metadata={"worst_case": drift_at, "tail_bound": family.tail_bound,
                  "per_case": per_slope})
    distinct = VerificationReport.build(
        "counterexample members differ", max(correlations), correlation_max,
        metadata={"correlations": correlations})
    return [invariance, distinct]

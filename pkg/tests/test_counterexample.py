import math

import numpy as np
import pytest

from frftzak.counterexample import (
    assemble_family,
    build_family,
    default_alternates,
    default_m_range,
    family_traces,
    profile_tail_bound,
    verify_disjoint_supports,
    verify_phase_invariance,
)
from frftzak.slopes import RationalSlope

SLOPES = (RationalSlope(1, 1), RationalSlope(2, 1), RationalSlope(1, 2))


def test_default_m_range_frozen():
    # tail 1/(2 pi w^2 M^2) pushed under (1e-3)/24 at profile width 0.024
    assert default_m_range(0.024, 1e-3 / 24.0) == 2576
    assert profile_tail_bound(0.024, 2576) <= 1e-3 / 24.0
    assert profile_tail_bound(0.024, 2575) > 1e-3 / 24.0


def test_tail_bound_decreases():
    assert profile_tail_bound(0.024, 800) < profile_tail_bound(0.024, 400)
    with pytest.raises(ValueError):
        default_m_range(0.024, 0.0)


def test_family_structure():
    fam = build_family(count=2, m_range=150)
    assert fam.size == 2
    assert fam.m_range == 150
    # envelope narrow enough that the worst shear keeps inside the margin
    assert fam.envelope_width == pytest.approx(
        0.006 / (4.0 * math.sqrt(5.0)))
    assert fam.envelope.support == (0.0, fam.envelope_width)
    for t, prof in zip(fam.offsets, fam.profiles):
        assert prof.support[0] == pytest.approx(t + 0.003)
        assert prof.support[1] == pytest.approx(t + 0.027)
    lo, hi = fam.members[0].support
    assert lo == pytest.approx(-150.0)
    assert hi == pytest.approx(150.0 + fam.envelope_width)
    assert fam.coefficients.shape == (2, 301)


def test_members_nearly_orthogonal():
    fam = build_family(count=2, m_range=150)
    g = fam.gram
    cross = abs(g[0, 1]) / math.sqrt(abs(g[0, 0]) * abs(g[1, 1]))
    # exact profiles are disjoint; only the truncation tail survives
    assert cross < 1e-4
    ones = (1.0, 1.0)
    assert fam.correlation(ones, (1.0, -1.0)) < 1e-4
    turn = (1.0, np.exp(1j * math.pi / 3.0))
    assert fam.correlation(ones, turn) == pytest.approx(
        math.cos(math.pi / 6.0), abs=1e-4)


def test_default_alternates():
    alts = default_alternates(2)
    assert alts[0] == (1.0, -1.0)
    assert alts[1][1] == pytest.approx(np.exp(1j * math.pi / 3.0))
    with pytest.raises(ValueError):
        default_alternates(1)


def test_assemble_validation():
    with pytest.raises(ValueError, match="envelope_width"):
        assemble_family(SLOPES, (0.1, 0.5), 0.03, 0.0, m_range=50)
    with pytest.raises(ValueError, match="profile"):
        assemble_family(SLOPES, (0.1,), 0.03, 0.04, m_range=50)
    with pytest.raises(ValueError, match="leaves"):
        assemble_family(SLOPES, (0.99,), 0.03, 0.006, m_range=50)
    with pytest.raises(ValueError, match="m_range or tail_target"):
        assemble_family(SLOPES, (0.1,), 0.03, 0.006)
    fam = build_family(count=2, m_range=50)
    with pytest.raises(ValueError, match="phases"):
        fam.member_combination((1.0,))


def test_infeasible_count_propagates():
    with pytest.raises(ValueError, match="interaction load"):
        build_family(count=5, m_range=50)


@pytest.fixture(scope="module")
def fam():
    return build_family(count=2, m_range=400)


@pytest.fixture(scope="module")
def traces(fam):
    return family_traces(fam, num=512)


class TestVerification:
    def test_supports_separate_and_leak_small(self, fam, traces):
        sep, leak = verify_disjoint_supports(fam, traces, leak_tol=1e-3)
        assert sep.passed and sep.max_error == 0.0
        assert leak.passed
        assert leak.max_error < 1e-4

    def test_phase_invariance_at_truncation_level(self, fam, traces):
        inv, distinct = verify_phase_invariance(
            fam, traces, phase_tol=2.5e-2, correlation_max=0.99)
        # drift is truncation-limited: about 2*n*q_max*tail at m_range=400
        assert inv.passed
        assert inv.max_error < 8.0 * profile_tail_bound(0.024, 400) + 1e-6
        assert distinct.passed
        assert distinct.max_error == pytest.approx(
            math.cos(math.pi / 6.0), abs=1e-6)

    def test_energy_actually_on_grid(self, traces):
        # the grid window must capture real transform mass for the
        # leakage fraction to mean anything
        power = np.abs(traces.values) ** 2
        assert power.sum(axis=-1).min() > 0.0


def test_overlapping_offsets_fail_checks():
    # skip the selector and force colliding intervals: the geometry
    # check must fail and recombination must move the measured modulus
    fam = assemble_family(SLOPES, (0.1, 0.115), 0.03, 0.006, m_range=150)
    traces = family_traces(fam, num=256)
    sep, _ = verify_disjoint_supports(fam, traces, leak_tol=1e-3)
    assert not sep.passed
    assert sep.max_error > 0.0
    inv, _ = verify_phase_invariance(fam, traces, phase_tol=1e-3,
                                     correlation_max=0.99)
    assert not inv.passed
    assert inv.max_error > 0.05

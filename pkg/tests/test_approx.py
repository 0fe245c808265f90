"""Tests for the approximate multi-angle modulus construction."""

from __future__ import annotations

import math

import numpy as np
import pytest

from frftzak.approx import (ApproxSolution, ScanLimitError, build_solution,
                            evaluate_field, evaluate_modulus, tail_threshold,
                            verify_approx_solution)
from frftzak.frft import frft_trace
from frftzak.quadrature import panel_edges, panel_nodes
from frftzak.signals import box, bump, triangle


def test_tail_threshold_frozen_values():
    # triangle FT is sinc^2: drops below 0.05 inside the main lobe, so
    # the scan stops at the first sub-level grid point; box FT lobes peak
    # at 1/(pi w), last one above 0.05 is at w = 6.25
    assert tail_threshold(triangle(-1, 1), 0.05) == 0.875
    assert tail_threshold(box(-1, 1), 0.05) == 6.375


@pytest.mark.parametrize("sig", [triangle(-1, 1), box(-1, 1)])
def test_tail_threshold_guarantee_on_fine_grid(sig):
    a = tail_threshold(sig, 0.05)
    w = np.arange(a, 3 * a + 12.0, 0.01)
    grid = np.concatenate([-w[::-1], w])
    mags = np.abs(frft_trace(sig, 0.5 * math.pi, grid))
    assert float(np.max(mags)) <= 0.05


def test_tail_threshold_edge_cases():
    # level above the peak: no excursion at all
    assert tail_threshold(triangle(-1, 1), 2.5) == 0.0
    with pytest.raises(ValueError, match="level"):
        tail_threshold(triangle(-1, 1), 0.0)
    # box tails decay like 1/w: a short scan cannot certify them
    with pytest.raises(ValueError, match="cannot certify"):
        tail_threshold(box(-1, 1), 1e-4, scan_limit=8.0)


def test_build_solution_two_angle_config():
    sol = build_solution([(0.0, triangle(-1, 1)),
                          (math.pi / 2, box(-1, 1))], epsilon=0.05)
    assert sol.t_radius == 1.0
    assert [c.threshold for c in sol.components] == [0.875, 6.375]
    assert [c.omega for c in sol.components] == [1.875, 7.375]
    assert sol.achieved_errors == pytest.approx(
        (0.04072651675336231, 0.04674864260192935), rel=1e-9)
    assert sol.cross_maxima[0] == pytest.approx(
        (0.047168690803553195,), rel=1e-9)
    assert sol.cross_maxima[1] == pytest.approx(
        (0.04719040823262799,), rel=1e-9)
    for err in sol.achieved_errors:
        assert err <= 0.05
    for row in sol.cross_maxima:
        for c in row:
            assert c <= 0.05
    reports = verify_approx_solution(sol)
    assert [r.check for r in reports] == ["approx modulus targets",
                                          "approx cross terms"]
    assert all(r.passed for r in reports)


def test_single_target_is_exact():
    sol = build_solution([(0.3, triangle(-1, 1))], epsilon=0.05)
    assert sol.components[0].omega == 0.0
    assert sol.achieved_errors == (0.0,)
    assert sol.cross_maxima == ((),)
    xi = np.linspace(-1.0, 1.0, 11)
    got = evaluate_modulus(sol, 0.3, xi)
    want = np.abs(triangle(-1, 1)(xi))
    assert np.max(np.abs(got - want)) < 1e-12


def test_duplicate_angles_mod_pi_rejected():
    pair = [(0.0, triangle(-1, 1)), (math.pi, box(-1, 1))]
    with pytest.raises(ValueError, match="mod pi"):
        build_solution(pair)
    with pytest.raises(ValueError, match="mod pi"):
        build_solution([(0.4, triangle(-1, 1)), (0.4, box(-1, 1))])


def test_bad_inputs_rejected():
    with pytest.raises(ValueError, match="at least one"):
        build_solution([])
    with pytest.raises(ValueError, match="epsilon"):
        build_solution([(0.0, triangle(-1, 1))], epsilon=0.0)
    with pytest.raises(ValueError, match="nonnegative"):
        build_solution([(0.0, triangle(-1, 1).scaled(-1.0))])


def test_scan_failure_has_its_own_type():
    with pytest.raises(ScanLimitError):
        tail_threshold(box(-1, 1), 1e-4, scan_limit=8.0)


def test_window_radius_override():
    # widening T pushes omega up by the extra T/sin(gap) but keeps the
    # guarantees; shrinking below the support is refused
    base = build_solution([(0.0, triangle(-1, 1)),
                           (math.pi / 2, box(-1, 1))], epsilon=0.05)
    wide = build_solution([(0.0, triangle(-1, 1)),
                           (math.pi / 2, box(-1, 1))], epsilon=0.05,
                          t_radius=2.0)
    assert wide.t_radius == 2.0
    # the scan step refines with T, so the shift is near (not exactly)
    # the extra T / sin(gap) = 1
    for b, w in zip(base.components, wide.components):
        assert b.omega + 0.8 <= w.omega <= b.omega + 1.2
    assert max(w for row in wide.cross_maxima for w in row) <= 0.05
    with pytest.raises(ValueError, match="cannot hold"):
        build_solution([(0.0, triangle(-1, 1))], t_radius=0.5)


def test_field_reflection_identity():
    sol = build_solution([(0.0, triangle(-1, 1)),
                          (math.pi / 2, box(-1, 1))], epsilon=0.05)
    xi = np.linspace(-2.0, 2.0, 9)
    lhs = evaluate_field(sol, math.pi, xi)
    rhs = evaluate_field(sol, 0.0, -xi)
    assert np.max(np.abs(lhs - rhs)) < 1e-12


def test_modulus_is_abs_of_field():
    sol = build_solution([(0.0, triangle(-1, 1)),
                          (math.pi / 2, box(-1, 1))], epsilon=0.05)
    xi = np.linspace(-1.0, 1.0, 7)
    assert np.array_equal(evaluate_modulus(sol, 0.7, xi),
                          np.abs(evaluate_field(sol, 0.7, xi)))


def _brute_ft(sol: ApproxSolution, xi: np.ndarray, x_max: float,
              cycles: float, order: int = 24) -> np.ndarray:
    """FT of the materialized h by outer quadrature over [-x_max, x_max]."""
    edges = panel_edges(-x_max, x_max, cycles=cycles, order=order)
    nodes, weights = panel_nodes(edges, order)
    h = np.zeros(nodes.shape, dtype=complex)
    for c in sol.components:
        if abs(math.sin(c.angle)) < 1e-12:
            h += np.asarray(c.signal(nodes), dtype=complex)
        else:
            h += frft_trace(c.signal, -c.angle, nodes)
    kernel = np.exp(-2j * math.pi * np.outer(xi, nodes))
    return kernel @ (h * weights)


def test_field_matches_brute_force_fourier_transform():
    # materialize h on a wide window and transform it by quadrature; the
    # residual is the window boundary term, ~1/(pi X dist)
    sol = build_solution([(0.0, triangle(-1, 1)),
                          (math.pi / 2, box(-1, 1))], epsilon=0.05)
    xi = np.array([-3.0, -2.4, 0.0, 2.2, 2.8])
    direct = evaluate_field(sol, math.pi / 2, xi)
    x_max = 600.0
    cycles = sol.components[0].omega + 3.0 + 1.0
    brute = _brute_ft(sol, xi, x_max, cycles)
    assert np.max(np.abs(brute - direct)) < 1.5e-4


def test_field_matches_brute_force_at_nontrivial_gap():
    # neither angle is 0 mod pi, so the pi/2 evaluation composes two
    # genuine transforms: this pins the scalar AND the reflection of the
    # composition law (it failed by 8e-1 with the unreflected law)
    sol = build_solution([(math.pi / 5, triangle(-1, 1)),
                          (math.pi / 2, box(-1, 1))], epsilon=0.05)
    assert [c.omega for c in sol.components] == pytest.approx(
        [2.4860679774997896, 8.11106797749979], rel=1e-12)
    for r in verify_approx_solution(sol):
        assert r.passed
    xi = np.array([-3.0, -1.8, -0.5, 0.0, 0.4, 1.6, 2.8])
    direct = evaluate_field(sol, math.pi / 2, xi)
    x_max = 100.0
    cot = abs(1.0 / math.tan(math.pi / 5))
    cycles = cot * x_max + sol.components[1].omega + 3.0 + 2.0
    brute = _brute_ft(sol, xi, x_max, cycles)
    assert np.max(np.abs(brute - direct)) < 2.5e-3


def test_three_angle_build():
    sol = build_solution([(0.3, triangle(-1, 1)), (1.1, box(-1, 1)),
                          (2.0, bump(-1, 1))], epsilon=0.25)
    assert sol.size == 3
    reports = verify_approx_solution(sol)
    assert all(r.passed for r in reports)
    assert max(sol.achieved_errors) <= 0.25
    assert max(c for row in sol.cross_maxima for c in row) <= 0.125

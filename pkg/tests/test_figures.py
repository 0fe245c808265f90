"""Figure renderers: files come out nonempty and byte-stable."""

from __future__ import annotations

import math

import numpy as np

from frftzak.chirpsums import gauss_coefficient
from frftzak.counterexample import build_family, family_traces
from frftzak.approx import build_solution
from frftzak.figures import (save_approx_figure, save_coefficient_figure,
                             save_family_figure, save_margin_figure,
                             save_overlay_figure, save_trace_figure,
                             save_zak_figure)
from frftzak.frft import frft
from frftzak.reporting import VerificationReport
from frftzak.signals import box, bump, gaussian, triangle
from frftzak.slopes import RationalSlope
from frftzak.zak import zak_eval


def _assert_png(path):
    data = path.read_bytes()
    assert data[:8] == b"\x89PNG\r\n\x1a\n"
    assert len(data) > 1000


def test_trace_and_overlay(tmp_path):
    trace = frft(bump(-0.4, 0.8), math.pi / 3, (-2.0, 2.0), 65)
    _assert_png(save_trace_figure(tmp_path / "t.png", trace, title="t"))
    x = np.linspace(-2, 2, 65)
    series = {"one": trace.values, "two": 0.5 * trace.values}
    _assert_png(save_overlay_figure(tmp_path / "o.png", x, series,
                                    title="o", xlabel="xi", ylabel="mag"))


def test_zak_heatmap(tmp_path):
    x = np.arange(16) / 16
    xi = np.arange(16) / 16
    vals = zak_eval(gaussian(), x[:, None], xi[None, :])
    _assert_png(save_zak_figure(tmp_path / "z.png", x, xi, vals, title="z"))


def test_coefficient_stems(tmp_path):
    slope = RationalSlope(2, 3)
    ns = list(range(-6, 7))
    values = [gauss_coefficient(n, slope) for n in ns]
    _assert_png(save_coefficient_figure(
        tmp_path / "c.png", ns, values,
        expected_modulus=1 / math.sqrt(3), title="c"))


def test_margin_bars(tmp_path):
    reports = [
        VerificationReport.build("good", 1e-9, 1e-6, {}),
        VerificationReport.build("bad", 1e-3, 1e-6, {}),
        VerificationReport.build("exact", 0.0, 0.0, {}),
    ]
    _assert_png(save_margin_figure(tmp_path / "m.png", reports, title="m"))


def test_family_shading(tmp_path):
    fam = build_family(ratios=((1, 1), (2, 1)), count=2)
    traces = family_traces(fam, xi_min=-1.0, xi_max=1.0, num=65)
    _assert_png(save_family_figure(tmp_path / "f.png", fam, traces,
                                   title="f"))


def test_approx_panels_and_determinism(tmp_path):
    sol = build_solution(
        [(0.0, triangle(-1, 1)), (math.pi / 2, box(-1, 1))], epsilon=0.05)
    first = save_approx_figure(tmp_path / "a1.png", sol, num=101, title="a")
    second = save_approx_figure(tmp_path / "a2.png", sol, num=101, title="a")
    _assert_png(first)
    assert first.read_bytes() == second.read_bytes()

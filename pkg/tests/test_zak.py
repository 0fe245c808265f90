import cmath
import math

import numpy as np
import pytest

from frftzak.signals import (box, bump, gaussian, raised_cosine,
                             raised_cosine_coefficient, triangle)
from frftzak.zak import (ZakPatch, fourier_coefficient, inverse_zak_sample,
                         synthesize, verify_zak_identities, zak_eval)


def test_zak_eval_single_cell_box():
    f = box(0.0, 1.0)
    for x, xi in [(0.25, 0.3), (0.7, 0.9), (0.5, 0.0)]:
        assert zak_eval(f, x, xi) == pytest.approx(1.0, abs=1e-15)


def test_zak_eval_two_cell_box_closed_form():
    f = box(0.0, 2.0)
    x, xi = 0.25, 0.3
    expect = 1.0 + cmath.exp(-2j * math.pi * xi)
    assert zak_eval(f, x, xi) == pytest.approx(expect, abs=1e-15)
    # broadcasting over arrays
    xis = np.array([0.1, 0.3, 0.9])
    got = zak_eval(f, 0.25, xis)
    expect = 1.0 + np.exp(-2j * math.pi * xis)
    assert np.max(np.abs(got - expect)) < 1e-14


def test_zak_quasi_periodicity_direct():
    f = bump(-0.8, 1.3)
    for n in (-2, 1, 4):
        for x, xi in [(0.3, 0.45), (0.9, 0.2)]:
            lhs = zak_eval(f, x + n, xi)
            rhs = cmath.exp(2j * math.pi * n * xi) * zak_eval(f, x, xi)
            assert lhs == pytest.approx(rhs, abs=1e-14)


def test_inverse_zak_recovers_samples():
    f = bump(-0.3, 1.2)
    for x, m in [(0.4, 0), (0.4, 1), (0.4, -1), (0.9, 0), (0.05, -2)]:
        got = inverse_zak_sample(f, x, m)
        assert got == pytest.approx(f(x + m), abs=1e-10)


def test_patch_validation():
    with pytest.raises(ValueError):
        ZakPatch(triangle(-0.1, 0.5), raised_cosine(0.0, 1.0))
    with pytest.raises(ValueError):
        ZakPatch(triangle(0.1, 0.5), raised_cosine(0.5, 1.5))


def test_patch_value_quasi_periodic_extension():
    patch = ZakPatch(triangle(0.2, 0.45), raised_cosine(0.3, 0.8))
    x, xi = 0.3, 0.6
    base = patch.value(x, xi)
    assert patch.value(x + 2, xi) == pytest.approx(
        cmath.exp(4j * math.pi * xi) * base, abs=1e-14)
    assert patch.value(x, xi + 3) == pytest.approx(base, abs=1e-14)
    assert patch.value(0.1, xi) == 0.0  # off the envelope


def test_fourier_coefficient_against_closed_form():
    v = raised_cosine(0.3, 0.8)
    for m in (-9, -1, 0, 2, 5):
        got = fourier_coefficient(v, m)
        assert got == pytest.approx(raised_cosine_coefficient(0.3, 0.8, m),
                                    abs=1e-11)


def test_synthesize_matches_truncated_patch():
    u = triangle(0.2, 0.45)
    v = raised_cosine(0.3, 0.8)
    patch = ZakPatch(u, v)
    m_range = 64
    f = synthesize(patch, m_range,
                   coefficients=lambda m: raised_cosine_coefficient(0.3, 0.8, m))
    ms = np.arange(-m_range, m_range + 1)
    coeffs = np.array([raised_cosine_coefficient(0.3, 0.8, m) for m in ms])
    for x in (0.25, 0.3, 0.41):
        for xi in (0.1, 0.77):
            lhs = zak_eval(f, x, xi)
            profile_trunc = np.sum(coeffs * np.exp(-2j * math.pi * ms * xi))
            assert lhs == pytest.approx(u(x) * profile_trunc, abs=1e-12)
            # truncation tail of a cubic-decay series, generous cover
            assert abs(lhs - patch.value(x, xi)) < 5e-4


def test_synthesize_rejects_bad_range():
    patch = ZakPatch(triangle(0.2, 0.45), raised_cosine(0.3, 0.8))
    with pytest.raises(ValueError):
        synthesize(patch, -1)


@pytest.mark.parametrize("make", [gaussian,
                                  lambda: bump(-0.8, 1.3),
                                  lambda: raised_cosine(-0.5, 0.75)])
def test_identity_suite_smooth_corpus(make):
    reports = verify_zak_identities(make(), tolerance=1e-6)
    assert len(reports) == 6
    for rep in reports:
        assert rep.passed, rep.line()


def test_identity_suite_box_exact_checks_only():
    # slow Fourier decay rules the box out of the Poisson sum; the exact
    # structural identities still hold
    reports = verify_zak_identities(box(-0.25, 1.5), tolerance=1e-6)
    by_name = {r.check: r for r in reports}
    for name in ("zak unitarity", "zak quasi-periodicity",
                 "zak frequency periodicity", "zak time marginal",
                 "zak frequency marginal"):
        assert by_name[name].passed, by_name[name].line()
    assert not by_name["zak poisson"].passed

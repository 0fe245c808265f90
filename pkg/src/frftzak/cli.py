"""Command line front end producing deterministic batch artifacts.

Every subcommand echoes its fully resolved configuration as JSON into the
output directory, writes delimited data plus a report bundle, and renders
matplotlib figures next to them unless --no-figures is given.  Reruns
with identical configuration produce byte-identical files: nothing here
writes clocks, hostnames, or locale-dependent text.

Exit codes: 0 every check passed; 1 a tolerance failed or a requested
accuracy could not be certified; 2 bad input; 3 an artifact could not be
read or written.
"""

from __future__ import annotations

import argparse
import cmath
import json
import math
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from .approx import ScanLimitError, build_solution, evaluate_modulus, \
    verify_approx_solution
from .chirpsums import gauss_coefficient
from .counterexample import (DEFAULT_RATIOS, build_family, family_traces,
                             verify_disjoint_supports,
                             verify_phase_invariance)
from .frft import frft, frft_trace, parseval_report
from .oblique import oblique_frft
from .reporting import (FLOAT_FMT, SampledTrace, Tolerances,
                        VerificationReport, render_report_bundle)
from .selftest import CRITERIA, report_bundle, run_selftest
from .signals import Signal, box, bump, gaussian, raised_cosine, triangle
from .slopes import RationalSlope
from .zak import verify_zak_identities, zak_eval


class InputError(Exception):
    """Unusable command line input; reported on stderr with exit code 2."""


# ---------------------------------------------------------------- parsing

_ANGLE_RE = re.compile(r"^([+-]?\d*\.?\d*)\s*pi\s*(?:/\s*(\d*\.?\d+))?$",
                       re.IGNORECASE)

_SIGNAL_MAKERS = {"box": box, "bump": bump, "triangle": triangle,
                  "raised_cosine": raised_cosine}


def parse_angle(text: str) -> float:
    """Angles as plain floats or pi fractions: 0.7, pi/4, 3pi/5, -pi/6."""
    s = text.strip()
    m = _ANGLE_RE.match(s)
    if m:
        head = m.group(1).strip()
        if head in ("", "+"):
            coef = 1.0
        elif head == "-":
            coef = -1.0
        else:
            coef = float(head)
        den = float(m.group(2)) if m.group(2) else 1.0
        if den == 0.0:
            raise InputError(f"zero denominator in angle {text!r}")
        return coef * math.pi / den
    try:
        return float(s)
    except ValueError:
        raise InputError(f"cannot parse angle {text!r}; "
                         "use forms like 0.7, pi/4, or 3pi/5") from None


def parse_signal(text: str) -> Signal:
    """Signal specs: gaussian[:width] or shape:a:b with a shape from
    box, bump, triangle, raised-cosine."""
    parts = [p.strip() for p in text.strip().split(":")]
    name = parts[0].lower().replace("-", "_")
    params = []
    for p in parts[1:]:
        try:
            params.append(float(p))
        except ValueError:
            raise InputError(
                f"bad numeric parameter {p!r} in signal {text!r}") from None
    try:
        if name == "gaussian":
            if len(params) > 1:
                raise InputError("gaussian takes at most one width")
            return gaussian(*params)
        maker = _SIGNAL_MAKERS.get(name)
        if maker is None:
            raise InputError(
                f"unknown signal {parts[0]!r}; choose gaussian, box, bump, "
                "triangle, or raised-cosine")
        if len(params) != 2:
            raise InputError(
                f"{parts[0]} needs a window, e.g. {parts[0]}:-1:1")
        return maker(*params)
    except ValueError as exc:      # window rejected by the constructor
        raise InputError(str(exc)) from None


def parse_range(text: str, what: str) -> tuple[float, float, int]:
    bits = text.split(":")
    if len(bits) != 3:
        raise InputError(f"{what} must be start:stop:count, got {text!r}")
    try:
        a, b, n = float(bits[0]), float(bits[1]), int(bits[2])
    except ValueError:
        raise InputError(f"cannot parse {what} {text!r}") from None
    if not a < b:
        raise InputError(f"{what} window [{a}, {b}] is empty")
    if n < 2:
        raise InputError(f"{what} needs at least 2 points, got {n}")
    return a, b, n


def parse_grid(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"(\d+)x(\d+)", text.strip(), re.IGNORECASE)
    if not m:
        raise InputError(f"grid must look like 64x64, got {text!r}")
    rows, cols = int(m.group(1)), int(m.group(2))
    if rows < 2 or cols < 2:
        raise InputError(f"grid {text!r} is too small; need at least 2x2")
    return rows, cols


def parse_ratio(text: str) -> tuple[int, int]:
    try:
        fr = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise InputError(f"cannot parse slope ratio {text!r}") from None
    if fr == 0:
        raise InputError("slope ratios must be nonzero")
    return fr.numerator, fr.denominator


def parse_phases(text: str) -> tuple[complex, ...]:
    """Comma separated unimodular phases given in half-turn units, so
    '0,1' means (1, -1) and '0,1/3' means (1, e^{i pi/3})."""
    out = []
    for tok in text.split(","):
        try:
            val = Fraction(tok.strip())
        except (ValueError, ZeroDivisionError):
            raise InputError(
                f"phase {tok!r} must be a real number of half turns"
            ) from None
        out.append(cmath.exp(1j * math.pi * float(val)))
    return tuple(out)


def coprime_slope(p: int, q: int) -> RationalSlope:
    if q < 1:
        raise InputError(f"q must be a positive integer, got {q}")
    if math.gcd(abs(p), q) != 1:
        raise InputError(f"p and q must be coprime, got ({p}, {q})")
    return RationalSlope(p, q)


# ---------------------------------------------------------------- writing

def _prepare(args) -> tuple[Path, Tolerances]:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    tol = (Tolerances.from_file(args.tol_file) if args.tol_file
           else Tolerances())
    return out, tol


def _write_config(out: Path, command: str, config: dict):
    payload = {"command": command, "config": config}
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    (out / f"{command}_config.json").write_text(text, encoding="utf-8")


def _write_trace(path: Path, trace: SampledTrace):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        trace.write_csv(fh)


def _emit_reports(out: Path, command: str,
                  reports: Sequence[VerificationReport],
                  extra: dict | None = None) -> int:
    (out / f"{command}_report.json").write_bytes(
        render_report_bundle(reports, extra))
    for r in reports:
        print(r.line())
    return 0 if all(r.passed for r in reports) else 1


# ------------------------------------------------------------- subcommands

def cmd_frft(args) -> int:
    out, tol = _prepare(args)
    f = parse_signal(args.signal)
    alpha = parse_angle(args.angle)
    a, b, n = parse_range(args.window, "--window")
    _write_config(out, "frft", {
        "signal": args.signal, "support": list(f.support), "angle": alpha,
        "window": [a, b, n], "chirp_sign": args.chirp_sign,
        "figures": not args.no_figures, "tolerances": tol.to_dict()})
    trace = frft(f, alpha, (a, b), n, chirp_sign=args.chirp_sign)
    _write_trace(out / "frft_trace.csv", trace)
    reports = [parseval_report(f, alpha, tolerance=tol.frft_parseval,
                               chirp_sign=args.chirp_sign)]
    if not args.no_figures:
        from .figures import save_trace_figure
        save_trace_figure(out / "frft_trace.png", trace,
                          title=f"transform at angle {alpha:.6g}",
                          xlabel="xi")
    return _emit_reports(out, "frft", reports)


def cmd_zak(args) -> int:
    out, tol = _prepare(args)
    f = parse_signal(args.signal)
    rows, cols = parse_grid(args.grid)
    _write_config(out, "zak", {
        "signal": args.signal, "support": list(f.support),
        "grid": [rows, cols], "figures": not args.no_figures,
        "tolerances": tol.to_dict()})
    x = np.arange(rows) / rows
    xi = np.arange(cols) / cols
    vals = zak_eval(f, x[:, None], xi[None, :])
    table = np.column_stack([
        np.repeat(x, cols), np.tile(xi, rows),
        vals.real.ravel(), vals.imag.ravel()])
    with open(out / "zak_grid.csv", "w", encoding="utf-8",
              newline="") as fh:
        fh.write("x,xi,re,im\n")
        np.savetxt(fh, table, fmt=FLOAT_FMT, delimiter=",")
    reports = verify_zak_identities(f, tolerance=tol.zak_identities)
    if not args.no_figures:
        from .figures import save_zak_figure
        save_zak_figure(out / "zak_grid.png", x, xi, vals,
                        title=f"zak magnitude of {args.signal}")
    return _emit_reports(out, "zak", reports)


def cmd_coeffs(args) -> int:
    out, tol = _prepare(args)
    slope = coprime_slope(args.p, args.q)
    if args.n_range:
        bits = args.n_range.split(":")
        try:
            n0, n1 = int(bits[0]), int(bits[1])
        except (ValueError, IndexError):
            raise InputError(
                f"--n-range must be two integers a:b, got {args.n_range!r}"
            ) from None
        if len(bits) != 2 or n1 < n0:
            raise InputError(f"bad --n-range {args.n_range!r}")
    else:
        n0, n1 = -2 * args.q, 2 * args.q
    _write_config(out, "coeffs", {
        "p": args.p, "q": args.q, "n_range": [n0, n1],
        "figures": not args.no_figures, "tolerances": tol.to_dict()})
    ns = list(range(n0, n1 + 1))
    values = [gauss_coefficient(n, slope) for n in ns]
    expect = 1.0 / math.sqrt(args.q)
    lines = ["n,re,im,abs"]
    lines += [f"{n},{FLOAT_FMT % v.real},{FLOAT_FMT % v.imag},"
              f"{FLOAT_FMT % abs(v)}" for n, v in zip(ns, values)]
    table = "\n".join(lines) + "\n"
    (out / "coeffs.csv").write_text(table, encoding="utf-8")
    print(table, end="")
    err = max(abs(abs(v) - expect) for v in values)
    reports = [VerificationReport.build(
        f"gauss coefficient modulus slope={slope}", err, tol.gauss_modulus,
        {"expected_modulus": expect, "n_range": [n0, n1]})]
    if not args.no_figures:
        from .figures import save_coefficient_figure
        save_coefficient_figure(out / "coeffs.png", ns, values,
                                expected_modulus=expect,
                                title=f"coefficients for slope {slope}")
    return _emit_reports(out, "coeffs", reports)


def cmd_oblique_check(args) -> int:
    out, tol = _prepare(args)
    slope = coprime_slope(args.p, args.q)
    f = parse_signal(args.signal)
    a, b, n = parse_range(args.xi_range, "--xi-range")
    tolerance = args.tol if args.tol is not None else tol.oblique_rel
    if tolerance <= 0:
        raise InputError(f"--tol must be positive, got {tolerance}")
    _write_config(out, "oblique-check", {
        "p": args.p, "q": args.q, "signal": args.signal,
        "xi_range": [a, b, n], "tol": tolerance,
        "figures": not args.no_figures, "tolerances": tol.to_dict()})
    xi = np.linspace(a, b, n)
    step = (b - a) / (n - 1)
    via_zak = oblique_frft(f, slope, xi)
    direct = frft_trace(f, slope.angle, xi)
    _write_trace(out / "oblique-check_zak_route.csv",
                 SampledTrace(a, step, via_zak))
    _write_trace(out / "oblique-check_direct.csv",
                 SampledTrace(a, step, direct))
    scale = float(np.max(np.abs(direct)))
    err = float(np.max(np.abs(via_zak - direct))) / scale
    reports = [VerificationReport.build(
        f"oblique identity slope={slope}", err, tolerance,
        {"points": n, "reference_peak": scale})]
    if not args.no_figures:
        from .figures import save_overlay_figure
        save_overlay_figure(
            out / "oblique-check_traces.png", xi,
            {"zak route": via_zak, "direct": direct,
             "difference": np.abs(via_zak - direct)},
            title=f"oblique route at slope {slope}", xlabel="xi",
            ylabel="abs")
    return _emit_reports(out, "oblique-check", reports)


def cmd_counterexample(args) -> int:
    out, tol = _prepare(args)
    ratios = [parse_ratio(t) for t in args.angles.split(",")]
    if args.n < 2:
        raise InputError(f"--n must be at least 2, got {args.n}")
    phases = ([parse_phases(t) for t in args.phases]
              if args.phases else None)
    if phases is not None:
        for vec in phases:
            if len(vec) != args.n:
                raise InputError(
                    f"each --phases vector needs {args.n} entries")
    a, b, num = parse_range(args.xi_range, "--xi-range")
    leak_tol = args.leak_tol if args.leak_tol is not None \
        else tol.leak_fraction
    _write_config(out, "counterexample", {
        "angles": args.angles, "n": args.n, "width": args.width,
        "margin": args.margin, "xi_range": [a, b, num],
        "leak_tol": leak_tol,
        "phases": args.phases or ["library defaults"],
        "figures": not args.no_figures, "tolerances": tol.to_dict()})
    try:
        family = build_family(ratios, args.n, width=args.width,
                              margin=args.margin,
                              phase_tol=tol.phase_invariance)
    except ValueError as exc:      # infeasible packing and friends
        raise InputError(str(exc)) from None
    traces = family_traces(family, xi_min=a, xi_max=b, num=num)
    step = (b - a) / (num - 1)
    for k in range(family.size):
        for j, slope in enumerate(family.slopes):
            name = f"counterexample_member{k}_slope{slope.p}_{slope.q}.csv"
            _write_trace(out / name,
                         SampledTrace(a, step, traces.values[j, k]))
    supports = {
        "offsets": list(family.offsets), "width": family.width,
        "margin": family.margin, "m_range": family.m_range,
        "tail_bound": family.tail_bound,
        "members": [
            {"index": k,
             "per_slope": [
                 {"slope": str(slope),
                  "sin_alpha": slope.sin_alpha,
                  "xi_period": sup.period,
                  "circle_arcs": [list(arc) for arc in sup.circle.arcs]}
                 for slope, sup in zip(family.slopes,
                                       [family.supports(s)[k]
                                        for s in family.slopes])]}
            for k in range(family.size)]}
    (out / "counterexample_supports.json").write_text(
        json.dumps(supports, sort_keys=True, indent=2) + "\n",
        encoding="utf-8")
    reports = verify_disjoint_supports(family, traces, leak_tol=leak_tol)
    reports += verify_phase_invariance(
        family, traces, phase_tol=tol.phase_invariance,
        correlation_max=tol.correlation_max, alternates=phases)
    if not args.no_figures:
        from .figures import save_family_figure
        save_family_figure(out / "counterexample_traces.png", family,
                           traces, title="member transforms by slope")
    return _emit_reports(out, "counterexample", reports)


def _load_targets(path: Path) -> list[Signal]:
    """targets.json: a list of {"shape": box|triangle|bump, "a": .., "b": ..}."""
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InputError(f"targets file {path}: {exc}") from None
    if not isinstance(raw, list) or not raw:
        raise InputError("targets file must hold a nonempty JSON list")
    allowed = {"box": box, "triangle": triangle, "bump": bump}
    signals = []
    for i, entry in enumerate(raw):
        if not isinstance(entry, dict) or "shape" not in entry:
            raise InputError(f"target {i} must be an object with a 'shape'")
        shape = str(entry["shape"]).lower().replace("-", "_")
        if shape not in allowed:
            raise InputError(
                f"target {i}: unknown shape {entry['shape']!r}; "
                "choose box, triangle, or bump")
        try:
            a, b = float(entry["a"]), float(entry["b"])
        except (KeyError, TypeError, ValueError):
            raise InputError(
                f"target {i} needs numeric window fields 'a' and 'b'"
            ) from None
        try:
            signals.append(allowed[shape](a, b))
        except ValueError as exc:
            raise InputError(f"target {i}: {exc}") from None
    return signals


def cmd_approx_pauli(args) -> int:
    out, tol = _prepare(args)
    signals = _load_targets(Path(args.targets))
    angles = [parse_angle(t) for t in args.angles.split(",")]
    if len(angles) != len(signals):
        raise InputError(
            f"{len(signals)} targets but {len(angles)} angles")
    epsilon = args.epsilon if args.epsilon is not None else tol.approx_error
    if epsilon <= 0:
        raise InputError(f"--epsilon must be positive, got {epsilon}")
    _write_config(out, "approx-pauli", {
        "targets": str(args.targets), "angles": angles,
        "epsilon": epsilon, "t_radius": args.T,
        "figures": not args.no_figures, "tolerances": tol.to_dict()})
    try:
        solution = build_solution(list(zip(angles, signals)),
                                  epsilon=epsilon, t_radius=args.T)
    except ScanLimitError as exc:
        print(f"epsilon={epsilon} is not certifiable: {exc}",
              file=sys.stderr)
        return 1
    grid_n = 801
    step = 2.0 * solution.t_radius / (grid_n - 1)
    xi = np.linspace(-solution.t_radius, solution.t_radius, grid_n)
    for k, comp in enumerate(solution.components):
        mod = evaluate_modulus(solution, comp.angle, xi)
        _write_trace(out / f"approx-pauli_angle{k}.csv",
                     SampledTrace(-solution.t_radius, step,
                                  mod.astype(complex)))
    extra = {"solution": {
        "epsilon": solution.epsilon, "t_radius": solution.t_radius,
        "angles": [c.angle for c in solution.components],
        "omegas": [c.omega for c in solution.components],
        "thresholds": [c.threshold for c in solution.components],
        "achieved_errors": list(solution.achieved_errors),
        "cross_maxima": [list(r) for r in solution.cross_maxima]}}
    reports = verify_approx_solution(solution)
    if not args.no_figures:
        from .figures import save_approx_figure
        save_approx_figure(out / "approx-pauli_moduli.png", solution,
                           title="measured moduli against targets")
    return _emit_reports(out, "approx-pauli", reports, extra)


def cmd_selftest(args) -> int:
    out, tol = _prepare(args)
    labels = ([t.strip() for t in args.criteria.split(",")]
              if args.criteria else None)
    _write_config(out, "selftest", {
        "criteria": labels or [name for name, _ in CRITERIA],
        "figures": not args.no_figures, "tolerances": tol.to_dict()})
    try:
        results = run_selftest(tol, labels=labels)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    (out / "selftest_report.json").write_bytes(report_bundle(results, tol))
    lines = ["criterion,check,max_error,tolerance,pass"]
    for res in results:
        lines += [f"{res.label},{rep.check},{FLOAT_FMT % rep.max_error},"
                  f"{FLOAT_FMT % rep.tolerance},{rep.passed}"
                  for rep in res.reports]
    (out / "selftest_summary.csv").write_text("\n".join(lines) + "\n",
                                              encoding="utf-8")
    if not args.no_figures:
        from .figures import save_margin_figure
        save_margin_figure(out / "selftest_margins.png",
                           [r for res in results for r in res.reports],
                           title="error to tolerance margins")
    ok = True
    for res in results:
        print(res.line())
        for rep in res.reports:
            print("  " + rep.line())
        ok = ok and res.passed
    return 0 if ok else 1


# ------------------------------------------------------------------ wiring

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frftzak",
        description="Fractional Fourier and Zak transform toolbox: "
                    "deterministic traces, identity checks, and the "
                    "phase-retrieval constructions.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=".",
                        help="output directory (created if missing)")
    common.add_argument("--tol-file", default=None,
                        help="JSON file overriding the tolerance registry")
    common.add_argument("--no-figures", action="store_true",
                        help="skip PNG rendering; data files only")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("frft", parents=[common],
                       help="transform one signal onto a uniform grid")
    p.add_argument("--signal", required=True,
                   help="gaussian[:width] or shape:a:b")
    p.add_argument("--angle", required=True,
                   help="angle, e.g. 0.7 or 3pi/5 (not a multiple of pi)")
    p.add_argument("--window", default="-4:4:401",
                   help="output grid start:stop:count")
    p.add_argument("--chirp-sign", type=int, choices=(-1, 1), default=-1,
                   help="sign convention of the quadratic phases")
    p.set_defaults(handler=cmd_frft)

    p = sub.add_parser("zak", parents=[common],
                       help="sample the unit square and run the identity "
                            "suite")
    p.add_argument("--signal", required=True)
    p.add_argument("--grid", default="64x64", help="x-by-xi samples, MxL")
    p.set_defaults(handler=cmd_zak)

    p = sub.add_parser("coeffs", parents=[common],
                       help="line-sum coefficients of a rational slope")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n-range", default=None,
                   help="index window a:b (default -2q:2q)")
    p.set_defaults(handler=cmd_coeffs)

    p = sub.add_parser("oblique-check", parents=[common],
                       help="compare the Zak route against direct "
                            "quadrature")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--signal", required=True)
    p.add_argument("--xi-range", default="-3:3:121")
    p.add_argument("--tol", type=float, default=None,
                   help="relative gate (default: registry oblique value)")
    p.set_defaults(handler=cmd_oblique_check)

    p = sub.add_parser("counterexample", parents=[common],
                       help="build and audit a non-uniqueness family")
    p.add_argument("--angles",
                   default=",".join(f"{pq[0]}/{pq[1]}"
                                    for pq in DEFAULT_RATIOS),
                   help="comma list of slope ratios, e.g. 1/1,2/1,1/2")
    p.add_argument("--n", type=int, default=2, help="family size")
    p.add_argument("--width", type=float, default=0.03)
    p.add_argument("--margin", type=float, default=0.006)
    p.add_argument("--phases", action="append", default=None,
                   help="phase vector in half-turn units, e.g. 0,1; "
                        "repeat the flag for more vectors")
    p.add_argument("--xi-range", default="-3:3:2048")
    p.add_argument("--leak-tol", type=float, default=None)
    p.set_defaults(handler=cmd_counterexample)

    p = sub.add_parser("approx-pauli", parents=[common],
                       help="build the multi-angle modulus matcher")
    p.add_argument("--targets", required=True,
                   help="JSON list of shapes: "
                        '[{"shape": "triangle", "a": -1, "b": 1}, ...]')
    p.add_argument("--angles", required=True,
                   help="comma list pairing an angle with each target")
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--T", type=float, default=None, dest="T",
                   help="measurement half-width (default: target support)")
    p.set_defaults(handler=cmd_approx_pauli)

    p = sub.add_parser("selftest", parents=[common],
                       help="run the acceptance criteria end to end")
    p.add_argument("--criteria", default=None,
                   help="comma subset of: "
                        + ", ".join(name for name, _ in CRITERIA))
    p.set_defaults(handler=cmd_selftest)
    return parser


# flags whose values may start with "-" (ranges, ratio lists, phases);
# argparse would read the bare value as an unknown option, so these are
# folded into --flag=value form before parsing
_VALUE_FLAGS = ("--window", "--xi-range", "--n-range", "--phases",
                "--angles")


def _normalize_argv(argv: Sequence[str]) -> list[str]:
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_FLAGS:
            nxt = next(it, None)
            if nxt is None:
                out.append(tok)
            else:
                out.append(f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(
        _normalize_argv(sys.argv[1:] if argv is None else argv))
    try:
        return args.handler(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

"""Fractional Fourier / Zak transform toolkit."""

from .approx import (ApproxSolution, ScanLimitError, build_solution,
                     evaluate_field, evaluate_modulus, tail_threshold,
                     verify_approx_solution)
from .chirpsums import gauss_coefficient
from .counterexample import (CounterexampleFamily, FamilyTraces, build_family,
                             family_traces, verify_disjoint_supports,
                             verify_phase_invariance)
from .frft import (c_alpha, composition_rule, frft, frft_trace, lambda_phase,
                   parseval_report)
from .oblique import chirp_moment, oblique_frft, verify_oblique_identity
from .quadrature import l2_norm
from .reporting import SampledTrace, Tolerances, VerificationReport
from .selftest import run_selftest
from .signals import (Signal, box, bump, gaussian, raised_cosine, triangle)
from .slopes import RationalSlope
from .torus import CircleIntervalSet, XiSupport, predict_support
from .zak import verify_zak_identities, zak_eval

__all__ = [
    "ApproxSolution",
    "CircleIntervalSet",
    "CounterexampleFamily",
    "FamilyTraces",
    "RationalSlope",
    "SampledTrace",
    "ScanLimitError",
    "Signal",
    "Tolerances",
    "VerificationReport",
    "XiSupport",
    "box",
    "build_family",
    "build_solution",
    "bump",
    "c_alpha",
    "chirp_moment",
    "composition_rule",
    "evaluate_field",
    "evaluate_modulus",
    "family_traces",
    "frft",
    "frft_trace",
    "gauss_coefficient",
    "gaussian",
    "l2_norm",
    "lambda_phase",
    "oblique_frft",
    "parseval_report",
    "predict_support",
    "raised_cosine",
    "run_selftest",
    "tail_threshold",
    "triangle",
    "verify_approx_solution",
    "verify_disjoint_supports",
    "verify_oblique_identity",
    "verify_phase_invariance",
    "verify_zak_identities",
    "zak_eval",
]

__version__ = "0.1.0"

"""Uniform result containers: sampled traces, check reports, tolerances.

Everything serializes deterministically (sorted keys, fixed float format,
no timestamps) so identical runs produce byte-identical output.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from typing import IO, Mapping, Sequence

import numpy as np

FLOAT_FMT = "%.17g"


@dataclass(frozen=True)
class SampledTrace:
    """Complex samples on a uniform grid start + step*k."""

    start: float
    step: float
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        object.__setattr__(self, "values", vals)
        if vals.ndim != 1 or vals.size == 0:
            raise ValueError("trace values must be a nonempty 1-d array")
        if self.step <= 0:
            raise ValueError(f"trace step must be positive, got {self.step}")

    @property
    def grid(self) -> np.ndarray:
        return self.start + self.step * np.arange(self.values.size)

    def write_csv(self, fh: IO[str]):
        fh.write("t,re,im\n")
        for t, v in zip(self.grid, self.values):
            fh.write(f"{FLOAT_FMT % t},{FLOAT_FMT % v.real},{FLOAT_FMT % v.imag}\n")


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one named check: worst error against a tolerance."""

    check: str
    max_error: float
    tolerance: float
    passed: bool
    metadata: Mapping[str, object] = field(default_factory=dict)

    @classmethod
    def build(cls, check: str, max_error: float, tolerance: float,
              metadata: Mapping[str, object] | None = None
              ) -> "VerificationReport":
        return cls(check=check, max_error=float(max_error),
                   tolerance=float(tolerance),
                   passed=bool(max_error <= tolerance),
                   metadata=dict(metadata or {}))

    def to_dict(self) -> dict:
        return {"check": self.check, "max_error": self.max_error,
                "tolerance": self.tolerance, "pass": self.passed,
                "metadata": _plain(self.metadata)}

    def line(self) -> str:
        word = "PASS" if self.passed else "FAIL"
        return (f"{word} {self.check}: max_error={self.max_error:.3e} "
                f"tolerance={self.tolerance:.3e}")


def _plain(obj):
    """Recursively convert numpy scalars/arrays so json can serialize."""
    if isinstance(obj, Mapping):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    return obj


def render_report_bundle(reports: Sequence[VerificationReport],
                         extra: Mapping[str, object] | None = None) -> bytes:
    """Serialize reports to canonical JSON bytes (stable across reruns)."""
    payload: dict = {"reports": [r.to_dict() for r in reports]}
    if extra:
        payload.update(_plain(extra))
    text = json.dumps(payload, sort_keys=True, indent=2)
    return (text + "\n").encode("utf-8")


@dataclass(frozen=True)
class Tolerances:
    """Numeric gates used by the verification suite and the CLI."""

    gauss_modulus: float = 1e-12
    frft_pointwise: float = 1e-8
    frft_parseval: float = 1e-4
    zak_identities: float = 1e-6
    chirp_moment_rel: float = 1e-6
    oblique_rel: float = 1e-4
    leak_fraction: float = 1e-3
    phase_invariance: float = 1e-3
    correlation_max: float = 0.99
    approx_error: float = 0.05

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_file(cls, path) -> "Tolerances":
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
        known = {f.name for f in dataclasses.fields(cls)}
        bad = sorted(set(raw) - known)
        if bad:
            raise ValueError(f"unknown tolerance keys: {', '.join(bad)}")
        return cls(**{k: float(v) for k, v in raw.items()})

"""Reduced rational slopes p/q and the angles they parameterize."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class RationalSlope:
    """A reduced fraction p/q with q >= 1, playing the role of cot(alpha).

    The associated angle lies in (0, pi): cos is proportional to p and sin
    to q, so alpha = atan2(q, p) and cot(alpha) = p/q exactly.
    """

    p: int
    q: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not isinstance(self.q, int):
            raise ValueError("slope components must be integers")
        if self.q < 1:
            raise ValueError(f"slope denominator must be >= 1, got q={self.q}")
        if math.gcd(self.p, self.q) != 1:
            raise ValueError(f"slope {self.p}/{self.q} is not reduced")

    @classmethod
    def from_ratio(cls, ratio) -> "RationalSlope":
        """Build from a Fraction, int, or 'p/q' string; the sign goes to p."""
        frac = Fraction(ratio)
        return cls(frac.numerator, frac.denominator)

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.p, self.q)

    @property
    def cot(self) -> float:
        return self.p / self.q

    @property
    def angle(self) -> float:
        return math.atan2(self.q, self.p)

    @property
    def sin_alpha(self) -> float:
        return self.q / math.hypot(self.p, self.q)

    @property
    def cos_alpha(self) -> float:
        return self.p / math.hypot(self.p, self.q)

    @property
    def length(self) -> float:
        """Length of the closed slope-p/q geodesic on the unit torus."""
        return math.hypot(self.p, self.q)

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"

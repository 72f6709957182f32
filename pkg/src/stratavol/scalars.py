"""Exact scalar arithmetic: rationals, Bernoulli numbers, pi-power values.

Every quantity in this package that feeds an exact identity is either an
arbitrary-precision integer, a :class:`fractions.Fraction`, or a
:class:`PiScaled` (a rational multiple of an even power of pi).  Floats
appear only in display helpers and in the numeric sanity checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "Rational",
    "PiScaled",
    "bernoulli",
    "zeta_even",
    "format_rational",
    "parse_rational",
]

# The universal exact scalar.  Fraction already guarantees the invariants we
# need: lowest terms, positive denominator, exact arithmetic.
Rational = Fraction


def format_rational(q: Fraction | int) -> str:
    """Serialize as "p/q", or just "p" when the denominator is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s)


_BERNOULLI_CACHE: list[Fraction] = []


def bernoulli(m: int) -> Fraction:
    """Bernoulli number B_m, convention B_1 = -1/2.

    Computed by the Akiyama-Tanigawa triangle, which yields B_1 = +1/2;
    the sign is flipped to match the B_1 = -1/2 convention.  Only even
    indices matter downstream, where the two conventions agree.
    """
    if m < 0:
        raise ValueError("Bernoulli index must be non-negative")
    while len(_BERNOULLI_CACHE) <= m:
        n = len(_BERNOULLI_CACHE)
        row = [Fraction(0)] * (n + 1)
        for k in range(n + 1):
            row[k] = Fraction(1, k + 1)
            for j in range(k, 0, -1):
                row[j - 1] = j * (row[j - 1] - row[j])
        b = row[0]
        if n == 1:
            b = -b
        _BERNOULLI_CACHE.append(b)
    return _BERNOULLI_CACHE[m]


@dataclass(frozen=True)
class PiScaled:
    """A rational multiple of an even power of pi: coeff * pi**pi_exponent."""

    coeff: Fraction
    pi_exponent: int

    def __post_init__(self) -> None:
        if self.pi_exponent < 0 or self.pi_exponent % 2 != 0:
            raise ValueError("pi exponent must be a non-negative even integer")
        object.__setattr__(self, "coeff", Fraction(self.coeff))

    def __add__(self, other: "PiScaled") -> "PiScaled":
        if not isinstance(other, PiScaled):
            return NotImplemented
        if self.pi_exponent != other.pi_exponent:
            raise ValueError(
                "cannot add pi-powers with different exponents: "
                f"{self.pi_exponent} vs {other.pi_exponent}"
            )
        return PiScaled(self.coeff + other.coeff, self.pi_exponent)

    def __mul__(self, other: "PiScaled | Fraction | int") -> "PiScaled":
        if isinstance(other, PiScaled):
            return PiScaled(self.coeff * other.coeff, self.pi_exponent + other.pi_exponent)
        return PiScaled(self.coeff * other, self.pi_exponent)

    __rmul__ = __mul__

    def scale(self, q: Fraction | int) -> "PiScaled":
        return PiScaled(self.coeff * q, self.pi_exponent)

    def is_zero(self) -> bool:
        return self.coeff == 0

    def to_float(self) -> float:
        return float(self.coeff) * math.pi**self.pi_exponent

    def to_json(self) -> dict[str, object]:
        return {"coeff": format_rational(self.coeff), "pi_exp": self.pi_exponent}

    def __str__(self) -> str:
        if self.pi_exponent == 0:
            return format_rational(self.coeff)
        return f"{format_rational(self.coeff)}*pi^{self.pi_exponent}"


def zeta_even(s: int) -> PiScaled:
    """zeta(2s) as an exact rational multiple of pi^(2s).

    Uses zeta(2s) = (-1)^(s+1) B_{2s} (2 pi)^{2s} / (2 (2s)!).
    """
    if s < 1:
        raise ValueError("zeta_even requires s >= 1")
    coeff = (
        Fraction((-1) ** (s + 1))
        * bernoulli(2 * s)
        * Fraction(2 ** (2 * s), 2 * math.factorial(2 * s))
    )
    return PiScaled(coeff, 2 * s)

"""Certified root isolation for admissible cubics by dyadic bisection.

Everything here is exact. Evaluation points are dyadic rationals
p / 2^e, and the cubic's sign there is read off the integer

    p^3 + b*p^2*2^e + c*p*4^e + d*8^e = 8^e * f(p / 2^e),

so no rounding enters anywhere. Bisecting [0, 1) then peels off the
binary expansion of the root one certified bit at a time, which is the
independent ground truth the orbit generator is checked against.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from .orbit import CoeffTriple


class CorruptState(ArithmeticError):
    """A bisection midpoint evaluated to exactly zero."""


@dataclass(frozen=True)
class Dyadic:
    """numerator / 2**exponent, kept canonical (odd numerator or exponent 0)."""

    numerator: int
    exponent: int

    def __post_init__(self) -> None:
        if self.exponent < 0:
            raise ValueError("exponent must be nonnegative")
        n, e = self.numerator, self.exponent
        while e > 0 and n % 2 == 0:
            n //= 2
            e -= 1
        object.__setattr__(self, "numerator", n)
        object.__setattr__(self, "exponent", e)

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.exponent)

    def __float__(self) -> float:
        return self.numerator / (1 << self.exponent)

    def __sub__(self, other: "Dyadic") -> "Dyadic":
        e = max(self.exponent, other.exponent)
        n = (self.numerator << (e - self.exponent)) - \
            (other.numerator << (e - other.exponent))
        return Dyadic(n, e)

    def __lt__(self, other: "Dyadic") -> bool:
        e = max(self.exponent, other.exponent)
        return (self.numerator << (e - self.exponent)) < \
               (other.numerator << (e - other.exponent))

    def __str__(self) -> str:
        return f"{self.numerator}/2^{self.exponent}" if self.exponent else str(self.numerator)


def poly_sign_at_dyadic(t: CoeffTriple, x: Dyadic) -> int:
    """Exact sign (-1, 0, +1) of x^3 + b x^2 + c x + d at a dyadic point."""
    p, e = x.numerator, x.exponent
    # Horner on integers scaled by 8^e.
    v = ((p + (t.b << e)) * p + (t.c << (2 * e))) * p + (t.d << (3 * e))
    return (v > 0) - (v < 0)


@dataclass(frozen=True)
class RootInterval:
    """Half-open dyadic interval certified to contain the real root.

    The certificate is f(lo) < 0 < f(hi), checked at construction.
    """

    lo: Dyadic
    hi: Dyadic
    triple: CoeffTriple

    def __post_init__(self) -> None:
        if not (0 <= self.lo.as_fraction() < self.hi.as_fraction() <= 1):
            raise ValueError("interval must sit inside [0, 1]")
        if poly_sign_at_dyadic(self.triple, self.lo) >= 0:
            raise ValueError("f(lo) must be negative")
        if poly_sign_at_dyadic(self.triple, self.hi) <= 0:
            raise ValueError("f(hi) must be positive")

    def width(self) -> Fraction:
        return self.hi.as_fraction() - self.lo.as_fraction()

    def __str__(self) -> str:
        w = self.width()
        digits = max(1, len(str(w.denominator)))
        mid = self.lo.as_fraction() + w / 2
        approx = f"{float(mid):.{min(digits, 17)}f}"
        return f"{approx} +/- {float(w) / 2:.3e} (width 1/{w.denominator})"


def _bisect(t: CoeffTriple, k: int) -> Tuple[str, "RootInterval"]:
    b, c, d = t.b, t.c, t.d
    lo_num = 0  # interval is [lo_num / 2^depth, (lo_num + 1) / 2^depth)
    bits = []
    for depth in range(1, k + 1):
        p = 2 * lo_num + 1  # midpoint numerator at this depth
        e = depth
        v = ((p + (b << e)) * p + (c << (2 * e))) * p + (d << (3 * e))
        if v < 0:       # root above the midpoint
            bits.append("1")
            lo_num = p
        elif v > 0:     # root below the midpoint
            bits.append("0")
            lo_num = 2 * lo_num
        else:
            raise CorruptState(f"midpoint {p}/2^{e} is a rational root")
    interval = RootInterval(Dyadic(lo_num, k), Dyadic(lo_num + 1, k), t)
    return "".join(bits), interval


def isolate_root_bits(t: CoeffTriple, k: int) -> Tuple[str, RootInterval]:
    """First k binary digits of the root, with the certifying interval.

    Bit i is 1 exactly when the root sits in the upper half of the depth-i
    interval, so the returned string is the root's binary expansion and the
    final interval has width 2**-k.
    """
    if k < 0:
        raise ValueError("bit count must be nonnegative")
    return _bisect(t, k)


def refine_to_resolution(t: CoeffTriple, eps_exponent: int) -> RootInterval:
    """Certified interval of width 2**-eps_exponent around the root."""
    if eps_exponent < 1:
        raise ValueError("eps_exponent must be at least 1")
    return _bisect(t, eps_exponent)[1]

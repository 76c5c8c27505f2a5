"""Exact doubling-map dynamics on integer coefficient triples.

A triple (b, c, d) stands for the monic cubic x^3 + b*x^2 + c*x + d.
Under the admissibility conditions

    (i)   b^2 - 3c <= 0          (the cubic is strictly increasing)
    (ii)  d < 0                  (value at 0 is negative)
    (iii) 1 + b + c + d > 0      (value at 1 is positive)

the cubic has a unique real root alpha in (0, 1), and alpha is
irrational, so the sign of 8*f(1/2) = 1 + 2b + 4c + 8d decides exactly
whether alpha lies below or above 1/2. Doubling alpha modulo 1 maps to
an integer-only update of the triple:

    alpha in (0, 1/2):  (b, c, d) -> (2b, 4c, 8d),             emit 0
    alpha in (1/2, 1):  (b, c, d) -> (2b+3, 4b+4c+3, t),       emit 1

where t = 1 + 2b + 4c + 8d (note t is exactly the new d). Both images
satisfy (i)-(iii) again, so iteration never leaves the admissible set,
and the emitted bits are the binary expansion of alpha.

The update uses only shifts by 1-3 bits and small-constant additions;
no general big-integer multiplication happens while generating. Each
step costs time linear in the coefficient size, which itself grows
linearly in the step count, so an n-bit run costs O(n^2) word
operations overall. Budget accordingly for long runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Tuple, Union

import numpy as np

from .bitstream import BitStream

try:
    from gmpy2 import mpz
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    mpz = int


class ConditionViolation(ValueError):
    """An admissibility condition failed; .condition is 'i', 'ii' or 'iii'."""

    def __init__(self, condition: str, b: int, c: int, d: int):
        self.condition = condition
        super().__init__(f"condition ({condition}) fails for (b,c,d)=({b},{c},{d})")


class HalfRoot(ValueError):
    """1 + 2b + 4c + 8d = 0, i.e. 1/2 would be a root; corrupt state."""


class CoefficientLimitExceeded(RuntimeError):
    """A configured maximum coefficient bit length was crossed."""


@dataclass(frozen=True)
class CoeffTriple:
    """Admissible coefficient triple; constructing one validates it."""

    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        b, c, d = self.b, self.c, self.d
        if b * b - 3 * c > 0:
            raise ConditionViolation("i", b, c, d)
        if d >= 0:
            raise ConditionViolation("ii", b, c, d)
        if 1 + b + c + d <= 0:
            raise ConditionViolation("iii", b, c, d)
        if self.half_value == 0:
            # Impossible when (i)-(iii) hold and the cubic is irreducible,
            # which (i)-(iii) force; kept as a corruption tripwire.
            raise HalfRoot(f"1+2b+4c+8d = 0 for (b,c,d)=({b},{c},{d})")

    @property
    def half_value(self) -> int:
        """8 times the cubic evaluated at 1/2."""
        return 1 + 2 * self.b + 4 * self.c + 8 * self.d

    @property
    def discriminant(self) -> int:
        b, c, d = self.b, self.c, self.d
        return 18 * b * c * d - 4 * b**3 * d + b * b * c * c - 4 * c**3 - 27 * d * d

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.b, self.c, self.d)

    def max_coeff_bits(self) -> int:
        return max(abs(self.b).bit_length(), abs(self.c).bit_length(),
                   abs(self.d).bit_length())


def validate_triple(b: int, c: int, d: int) -> CoeffTriple:
    """Check conditions (i)-(iii) and return the validated triple."""
    return CoeffTriple(int(b), int(c), int(d))


class Branch(Enum):
    LEFT = 0    # root below 1/2, emitted bit 0
    RIGHT = 1   # root above 1/2, emitted bit 1

    @property
    def bit(self) -> int:
        return self.value


def branch_sign(t: CoeffTriple) -> Branch:
    """Which half of (0,1) the root lies in, from integer arithmetic only."""
    h = t.half_value
    if h > 0:
        return Branch.LEFT
    if h < 0:
        return Branch.RIGHT
    raise HalfRoot("1+2b+4c+8d = 0; state is corrupt")  # pragma: no cover


def step(t: CoeffTriple) -> Tuple[CoeffTriple, int]:
    """One doubling-map step: the successor triple and the emitted bit."""
    b, c, d = t.b, t.c, t.d
    h = t.half_value
    if h > 0:
        return CoeffTriple(2 * b, 4 * c, 8 * d), 0
    return CoeffTriple(2 * b + 3, 4 * b + 4 * c + 3, h), 1


def inverse_step(t: CoeffTriple) -> CoeffTriple | None:
    """The unique predecessor triple, or None if t is a source point.

    The branch is read off the parity of b (images have b, c, d all even
    or all odd); the divisions must then be exact for a predecessor to
    exist in the admissible set.
    """
    b, c, d = t.b, t.c, t.d
    if b % 2 == 0:
        if c % 4 or d % 8:
            return None
        assert c % 2 == 0 and d % 2 == 0
        cand = (b // 2, c // 4, d // 8)
    else:
        b0 = (b - 3) // 2
        c0, r = divmod(c - 3 - 4 * b0, 4)
        if r:
            return None
        d0, r = divmod(d - 1 - 2 * b0 - 4 * c0, 8)
        if r:
            return None
        assert c % 2 == 1 and d % 2 == 1
        cand = (b0, c0, d0)
    try:
        return CoeffTriple(*cand)
    except ConditionViolation:  # pragma: no cover - unreachable, see tests
        return None


STATE_FORMAT = "cubicorbit-orbit-state 1"


@dataclass(frozen=True)
class OrbitState:
    """A triple together with how many steps produced it."""

    triple: CoeffTriple
    step_index: int = 0

    def to_text(self) -> str:
        t = self.triple
        return (f"{STATE_FORMAT}\n"
                f"b {t.b}\nc {t.c}\nd {t.d}\nstep {self.step_index}\n")

    @classmethod
    def from_text(cls, text: str) -> "OrbitState":
        lines = [ln.strip() for ln in text.strip().splitlines()]
        if not lines or lines[0] != STATE_FORMAT:
            raise ValueError("unrecognized orbit state header")
        fields = {}
        for ln in lines[1:]:
            key, _, value = ln.partition(" ")
            fields[key] = int(value)
        missing = {"b", "c", "d", "step"} - fields.keys()
        if missing:
            raise ValueError(f"orbit state missing fields: {sorted(missing)}")
        if fields["step"] < 0:
            raise ValueError("step index must be nonnegative")
        return cls(validate_triple(fields["b"], fields["c"], fields["d"]),
                   fields["step"])


def _run(b, c, d, out: bytearray) -> Tuple[int, int, int]:
    """Tight generation loop; fills out with bits, returns the final triple."""
    b, c, d = mpz(b), mpz(c), mpz(d)
    for i in range(len(out)):
        b2 = b << 1
        c4 = c << 2
        d8 = d << 3
        t = 1 + b2 + c4 + d8
        if t > 0:
            b, c, d = b2, c4, d8
        elif t < 0:
            out[i] = 1
            b, c, d = b2 + 3, ((b + c) << 2) + 3, t
        else:
            raise HalfRoot("1+2b+4c+8d = 0; state is corrupt")
    return int(b), int(c), int(d)


def _run_guarded(b, c, d, out: bytearray, limit: int) -> Tuple[int, int, int]:
    b, c, d = mpz(b), mpz(c), mpz(d)
    for i in range(len(out)):
        b2 = b << 1
        c4 = c << 2
        d8 = d << 3
        t = 1 + b2 + c4 + d8
        if t > 0:
            b, c, d = b2, c4, d8
        elif t < 0:
            out[i] = 1
            b, c, d = b2 + 3, ((b + c) << 2) + 3, t
        else:
            raise HalfRoot("1+2b+4c+8d = 0; state is corrupt")
        if max(b.bit_length(), c.bit_length(), d.bit_length()) > limit:
            raise CoefficientLimitExceeded(
                f"coefficients crossed {limit} bits at step {i + 1}")
    return int(b), int(c), int(d)


def generate_bits(
    seed: Union[CoeffTriple, OrbitState],
    n: int,
    max_coeff_bits: int | None = None,
) -> Tuple[BitStream, OrbitState]:
    """Emit n bits from seed and return them with the final resumable state.

    Deterministic: a given seed and n always produce the same output, and
    generating a+b bits equals generating a bits and then b more from the
    returned state. max_coeff_bits, when set, aborts the run with
    CoefficientLimitExceeded once any coefficient outgrows that many bits.
    """
    if n < 0:
        raise ValueError("bit count must be nonnegative")
    state = seed if isinstance(seed, OrbitState) else OrbitState(seed, 0)
    out = bytearray(n)
    t = state.triple
    if max_coeff_bits is None:
        b, c, d = _run(t.b, t.c, t.d, out)
    else:
        b, c, d = _run_guarded(t.b, t.c, t.d, out, max_coeff_bits)
    final = OrbitState(CoeffTriple(b, c, d), state.step_index + n)
    return BitStream(np.frombuffer(bytes(out), dtype=np.uint8)), final

"""MT19937 reference generator and its tempered-output lag structure.

The tempered 32-bit outputs y_n of MT19937 satisfy a fixed linear
recurrence over GF(2),

    y_n = y_{n-227} ^ A y_{n-623} ^ B y_{n-624},    n >= 624,

for two constant 32x32 bit matrices A and B (B has rank one: its
nonzero rows are all copies of row 2). The matrices ship as data files
and can be recovered independently from output samples by solving the
recurrence as a linear system, which keeps the transcription honest.

The lag-coincidence scan looks for indices n where the top 8 bits of
A y_{n-623} vanish (rows 1-8 orthogonal to the word) and B y_{n-624}
vanishes (row 2 orthogonal). At such n the recurrence forces the top
bytes of y_n and y_{n-227} to coincide, a correlation that a generator
without this linear structure does not show.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .gf2 import Gf2Matrix32, solve_linear_system

N = 624
M = 397
MATRIX_A = 0x9908B0DF
UPPER_MASK = 0x80000000
LOWER_MASK = 0x7FFFFFFF
MASK32 = 0xFFFFFFFF
DEFAULT_SEED = 5489
LAG = 227  # N - M, the tempered-output coincidence lag


class MT19937:
    """Bit-exact MT19937 with the standard multiplier-based seeding."""

    def __init__(self, seed: int = DEFAULT_SEED):
        mt = [0] * N
        mt[0] = seed & MASK32
        for i in range(1, N):
            mt[i] = (1812433253 * (mt[i - 1] ^ (mt[i - 1] >> 30)) + i) & MASK32
        self._mt = mt
        self._index = N

    @property
    def key(self) -> Tuple[int, ...]:
        """The 624-word internal state array."""
        return tuple(self._mt)

    @property
    def position(self) -> int:
        return self._index

    def _twist(self) -> None:
        mt = self._mt
        for i in range(N):
            y = (mt[i] & UPPER_MASK) | (mt[(i + 1) % N] & LOWER_MASK)
            mt[i] = mt[(i + M) % N] ^ (y >> 1) ^ (MATRIX_A if y & 1 else 0)
        self._index = 0

    def next_u32(self) -> int:
        if self._index >= N:
            self._twist()
        y = self._mt[self._index]
        self._index += 1
        return temper(y)

    def generate(self, count: int) -> np.ndarray:
        """The next `count` outputs as a uint32 array."""
        return np.fromiter((self.next_u32() for _ in range(count)),
                           dtype=np.uint32, count=count)


def temper(y: int) -> int:
    y ^= y >> 11
    y ^= (y << 7) & 0x9D2C5680
    y ^= (y << 15) & 0xEFC60000
    y ^= y >> 18
    return y & MASK32


def untemper(y: int) -> int:
    y ^= y >> 18
    y ^= (y << 15) & 0xEFC60000
    x = y
    for _ in range(5):
        x = y ^ ((x << 7) & 0x9D2C5680)
    y = x
    for _ in range(3):
        x = y ^ (x >> 11)
    return x & MASK32


class DataCorrupt(ValueError):
    """Matrix data file failed its checksum or shape check."""


def parse_matrix_text(text: str, label: str = "matrix") -> Gf2Matrix32:
    """Parse the 32-rows-plus-checksum data format, verifying the checksum."""
    lines = [ln.strip() for ln in text.strip().splitlines()]
    if len(lines) != 33 or not lines[-1].startswith("sha256 "):
        raise DataCorrupt(f"{label}: expected 32 rows plus a checksum line")
    rows, checksum = lines[:32], lines[-1].split()[1]
    digest = hashlib.sha256("".join(r + "\n" for r in rows).encode()).hexdigest()
    if digest != checksum:
        raise DataCorrupt(f"{label}: checksum mismatch")
    try:
        return Gf2Matrix32.from_lines(rows)
    except ValueError as exc:
        raise DataCorrupt(f"{label}: {exc}") from None


def _load_matrix(filename: str) -> Gf2Matrix32:
    text = resources.files("cubicorbit.data").joinpath(filename).read_text()
    return parse_matrix_text(text, label=filename)


def load_recurrence_matrices() -> Tuple[Gf2Matrix32, Gf2Matrix32]:
    """The checked-in recurrence matrices (A, B), checksum-verified."""
    return _load_matrix("mt_matrix_a.txt"), _load_matrix("mt_matrix_b.txt")


def _as_words(outputs: Sequence[int] | np.ndarray) -> np.ndarray:
    arr = np.asarray(outputs, dtype=np.uint64) if not isinstance(outputs, np.ndarray) \
        else outputs.astype(np.uint64, copy=False)
    if arr.ndim != 1:
        raise ValueError("outputs must be one-dimensional")
    if arr.size and arr.max() > MASK32:
        raise ValueError("outputs must be 32-bit words")
    return arr.astype(np.uint32)


def _matvec_bulk(m: Gf2Matrix32, words: np.ndarray) -> np.ndarray:
    """Apply a bit matrix to every word of a uint32 array."""
    acc = np.zeros(words.shape, dtype=np.uint32)
    for row in m.rows:
        bit = np.bitwise_count(words & np.uint32(row)) & np.uint8(1)
        acc = (acc << np.uint32(1)) | bit.astype(np.uint32)
    return acc


@dataclass(frozen=True)
class RecurrenceCheck:
    ok: bool
    checked: int
    first_violation: Optional[int] = None


def verify_recurrence(outputs: Sequence[int] | np.ndarray,
                      a: Gf2Matrix32, b: Gf2Matrix32) -> RecurrenceCheck:
    """Check y_n = y_{n-227} ^ A y_{n-623} ^ B y_{n-624} for all n >= 624."""
    ys = _as_words(outputs)
    if ys.size < N + 1:
        raise ValueError(f"need at least {N + 1} outputs, got {ys.size}")
    L = ys.size
    predicted = ys[N - LAG:L - LAG] ^ _matvec_bulk(a, ys[1:L - N + 1]) \
        ^ _matvec_bulk(b, ys[:L - N])
    mism = np.nonzero(predicted != ys[N:])[0]
    if mism.size:
        return RecurrenceCheck(False, L - N, int(mism[0]) + N)
    return RecurrenceCheck(True, L - N)


class RankDeficient(ValueError):
    """Not enough independent output data to pin down the matrices."""


def recover_matrices(outputs: Sequence[int] | np.ndarray
                     ) -> Tuple[Gf2Matrix32, Gf2Matrix32]:
    """Solve the lagged recurrence for (A, B) from raw output words.

    Consumes equations at successive n until the 64-unknown system per
    matrix row block reaches full rank; raises RankDeficient if the data
    never gets there. Validation against held-out data is the caller's
    job (compose with verify_recurrence).
    """
    ys = [int(w) for w in np.asarray(outputs).tolist()]
    if len(ys) < N + 1:
        raise RankDeficient(f"need at least {N + 1} outputs, got {len(ys)}")

    def equations() -> Iterable[Tuple[int, int]]:
        for n in range(N, len(ys)):
            coeffs = (ys[n - N + 1] << 32) | ys[n - N]
            yield coeffs, ys[n] ^ ys[n - LAG]

    sols = solve_linear_system(equations(), 64, 32)
    if sols is None:
        raise RankDeficient("output sample spans a rank-deficient system")
    a_rows, b_rows = [], []
    for i in range(32):
        ra = rb = 0
        for k in range(32):
            ra = (ra << 1) | ((sols[k] >> (31 - i)) & 1)
            rb = (rb << 1) | ((sols[32 + k] >> (31 - i)) & 1)
        a_rows.append(ra)
        b_rows.append(rb)
    return Gf2Matrix32(tuple(a_rows)), Gf2Matrix32(tuple(b_rows))


@dataclass(frozen=True)
class LagPair:
    """Top bytes (Y_{n-227}, Y_n) at an index n passing both conditions."""

    n: int
    y_lag_top8: int
    y_top8: int


def scan_conditions_ab(outputs: Sequence[int] | np.ndarray,
                       a: Gf2Matrix32, b: Gf2Matrix32) -> List[LagPair]:
    """All (Y_{n-227}, Y_n) pairs at indices where the addends drop out.

    Condition (a): rows 1-8 of A are orthogonal to y_{n-623}; condition
    (b): row 2 of B is orthogonal to y_{n-624}, which for the rank-one B
    means B y_{n-624} = 0. Wherever both hold, the recurrence adds nothing
    to the top byte.
    """
    ys = _as_words(outputs)
    if ys.size < N + 1:
        raise ValueError(f"need at least {N + 1} outputs, got {ys.size}")
    L = ys.size
    lag623 = ys[1:L - N + 1]
    lag624 = ys[:L - N]
    bad = np.zeros(lag623.shape, dtype=np.uint8)
    for i in range(1, 9):
        bad |= np.bitwise_count(lag623 & np.uint32(a.row(i))) & np.uint8(1)
    bad |= np.bitwise_count(lag624 & np.uint32(b.row(2))) & np.uint8(1)
    ns = np.nonzero(bad == 0)[0] + N
    return [LagPair(int(n),
                    int(ys[n - LAG]) >> 24,
                    int(ys[n]) >> 24) for n in ns]


def lag_pairs_csv(pairs: Iterable[LagPair]) -> str:
    lines = ["n,y_lag,y_n"]
    lines.extend(f"{p.n},{p.y_lag_top8},{p.y_top8}" for p in pairs)
    return "\n".join(lines) + "\n"

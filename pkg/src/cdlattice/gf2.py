"""Exact GF(2) linear algebra and binary linear code bookkeeping.

Bit-vectors are plain Python integers with bit ``i`` holding coordinate
``i`` (LSB = coordinate 0), so row XOR, inner products and weight counts
are word-parallel no matter how long the vectors get.  The array-facing
helpers convert to/from ``numpy`` 0/1 vectors at the boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import BudgetExceededError, InvalidFamilyError

# Exhaustive weight enumeration walks 2**k codewords; beyond this the
# caller must supply the minimum distance.
MIN_DISTANCE_BUDGET = 28


def pack_bits(bits: Sequence[int] | np.ndarray | str) -> int:
    """Pack a 0/1 sequence (or a '0'/'1' string) into an integer bit-vector."""
    if isinstance(bits, str):
        bits = [int(ch) for ch in bits]
    word = 0
    for i, b in enumerate(bits):
        b = int(b)
        if b not in (0, 1):
            raise ValueError(f"bit {i} is {b}, expected 0 or 1")
        word |= b << i
    return word


def unpack_bits(word: int, n: int) -> np.ndarray:
    """Unpack an integer bit-vector into a length-``n`` uint8 array."""
    return np.array([(word >> i) & 1 for i in range(n)], dtype=np.uint8)


def dot2(u: int, v: int) -> int:
    """GF(2) inner product of two packed bit-vectors."""
    return (u & v).bit_count() & 1


def _rows_from_matrix(rows) -> tuple[list[int], int]:
    """Normalize a list of bit sequences / packed rows into (ints, n)."""
    mat = list(rows)
    if not mat:
        raise ValueError("empty row list")
    if all(isinstance(r, (int, np.integer)) for r in mat):
        raise ValueError("packed integer rows need an explicit length; use pack_bits inputs")
    lengths = {len(r) for r in mat}
    if len(lengths) != 1:
        raise ValueError(f"ragged row lengths: {sorted(lengths)}")
    n = lengths.pop()
    if n < 1:
        raise ValueError("rows must have length >= 1")
    return [pack_bits(r) for r in mat], n


def _rank_ints(rows: Iterable[int]) -> int:
    """Rank over GF(2) of packed rows, by elimination against stored pivots."""
    pivots: list[int] = []  # rows with distinct leading (lowest set) bits
    for row in rows:
        for p in pivots:
            low = p & -p
            if row & low:
                row ^= p
        if row:
            pivots.append(row)
    return len(pivots)


def gf2_rank(rows) -> int:
    """Rank over GF(2) of a list of equal-length 0/1 vectors.

    Order-independent; raises ValueError on empty or ragged input.
    """
    packed, _ = _rows_from_matrix(rows)
    return _rank_ints(packed)


def rref(rows: Sequence[int], n: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form over GF(2).

    Returns (reduced nonzero rows, pivot column indices), pivots increasing.
    """
    work = list(rows)
    pivot_cols: list[int] = []
    r = 0
    for col in range(n):
        mask = 1 << col
        hit = next((i for i in range(r, len(work)) if work[i] & mask), None)
        if hit is None:
            continue
        work[r], work[hit] = work[hit], work[r]
        for i in range(len(work)):
            if i != r and work[i] & mask:
                work[i] ^= work[r]
        pivot_cols.append(col)
        r += 1
    return work[:r], pivot_cols


class BinaryCode:
    """A binary linear [n, k] code given by an ordered generator-row list.

    Rows are validated to be linearly independent at construction.  Values
    are immutable by convention; parity check and minimum distance are
    cached on first use.
    """

    def __init__(self, n: int, rows: Sequence[int], *, d_min: int | None = None):
        rows = tuple(int(r) for r in rows)
        if n < 1:
            raise ValueError("code length must be >= 1")
        for r in rows:
            if r < 0 or r >> n:
                raise ValueError("row has bits outside coordinate range")
        if _rank_ints(rows) != len(rows):
            raise ValueError("generator rows are linearly dependent over GF(2)")
        self.n = n
        self.rows = rows
        self._d_min = d_min
        self._parity: tuple[int, ...] | None = None

    @classmethod
    def from_matrix(cls, rows, **kw) -> "BinaryCode":
        packed, n = _rows_from_matrix(rows)
        return cls(n, packed, **kw)

    @property
    def k(self) -> int:
        return len(self.rows)

    def __repr__(self) -> str:
        return f"BinaryCode(n={self.n}, k={self.k})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BinaryCode)
            and self.n == other.n
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.n, self.rows))

    def generator_array(self) -> np.ndarray:
        """Generator matrix as a (k, n) uint8 array."""
        return np.array([unpack_bits(r, self.n) for r in self.rows], dtype=np.uint8)

    def encode(self, message: int) -> int:
        """Codeword for a packed k-bit message (bit j selects row j)."""
        cw = 0
        m = message
        while m:
            low = m & -m
            cw ^= self.rows[low.bit_length() - 1]
            m ^= low
        return cw

    def parity_rows(self) -> tuple[int, ...]:
        """Packed parity-check rows; computed once and cached."""
        if self._parity is None:
            self._parity = tuple(_parity_rows(self.rows, self.n))
        return self._parity

    def min_distance(self) -> int:
        if self._d_min is None:
            self._d_min = code_min_distance(self)
        return self._d_min

    def set_min_distance(self, d: int) -> None:
        """Install an externally computed minimum distance (bound reporting only)."""
        self._d_min = int(d)


def _parity_rows(rows: Sequence[int], n: int) -> list[int]:
    k = len(rows)
    reduced, pivots = rref(rows, n)
    if len(pivots) != k:
        raise ValueError("generator is rank-deficient")
    free_cols = [c for c in range(n) if c not in pivots]
    checks = []
    for f in free_cols:
        h = 1 << f
        for i, p in enumerate(pivots):
            if reduced[i] & (1 << f):
                h |= 1 << p
        checks.append(h)
    return checks


def parity_check_from_generator(code: BinaryCode) -> np.ndarray:
    """Parity-check matrix H as an (n-k, n) uint8 array with H G^T = 0.

    For a systematic generator [I_k | P] this is exactly [P^T | I_{n-k}].
    """
    return np.array(
        [unpack_bits(h, code.n) for h in code.parity_rows()], dtype=np.uint8
    ).reshape(code.n - code.k, code.n)


def code_min_distance(code: BinaryCode, *, budget: int = MIN_DISTANCE_BUDGET) -> int:
    """Exact minimum nonzero-codeword Hamming weight by full enumeration.

    Walks all 2**k - 1 nonzero messages in Gray-code order (one row XOR
    per step).  Raises BudgetExceededError for k beyond ``budget``.
    """
    k = code.k
    if k > budget:
        raise BudgetExceededError(
            f"k={k} exceeds enumeration budget of 2**{budget} messages"
        )
    rows = code.rows
    cw = 0
    best = code.n + 1
    for i in range(1, 1 << k):
        cw ^= rows[(i & -i).bit_length() - 1]
        w = cw.bit_count()
        if w < best:
            best = w
            if best == 1:
                break
    return best


@dataclass(frozen=True)
class NestedCodeFamily:
    """A chain of binary codes sharing a generator-row prefix, plus alpha.

    ``codes[0]`` is the largest code C_1; each later code's generator must
    be an exact prefix of the previous one's.  The ambient full space C_0
    is implicit.
    """

    codes: tuple[BinaryCode, ...]
    alpha: int = 1

    def __post_init__(self):
        if not self.codes:
            raise ValueError("family needs at least one code")
        if self.alpha not in (1, 2):
            raise ValueError("alpha must be 1 or 2")
        n = self.codes[0].n
        if any(c.n != n for c in self.codes):
            raise ValueError("all codes must share the ambient length n")

    @property
    def n(self) -> int:
        return self.codes[0].n

    @property
    def a(self) -> int:
        return len(self.codes)

    @property
    def k(self) -> tuple[int, ...]:
        return tuple(c.k for c in self.codes)

    def level_of_row(self, j: int) -> int:
        """Deepest level l (1-based) whose code still contains basis row j (0-based)."""
        lvl = 0
        for l, c in enumerate(self.codes, start=1):
            if j < c.k:
                lvl = l
        return lvl


def first_nesting_violation(family: NestedCodeFamily) -> tuple[int, str] | None:
    """First (level, reason) where the chain breaks, or None if nested.

    Checks the structural shared-prefix property and, redundantly, span
    containment of each code in its predecessor via a rank test.
    """
    codes = family.codes
    for l in range(1, len(codes)):
        inner, outer = codes[l], codes[l - 1]
        if inner.k > outer.k:
            return l + 1, f"k_{l + 1}={inner.k} exceeds k_{l}={outer.k}"
        if inner.rows != outer.rows[: inner.k]:
            return l + 1, "generator rows are not a prefix of the previous level's"
        if _rank_ints(list(outer.rows) + list(inner.rows)) != outer.k:
            return l + 1, "rows escape the span of the previous level"
    return None


def check_nested(family: NestedCodeFamily) -> bool:
    """True iff every level's generator is a prefix of (and inside) the previous."""
    return first_nesting_violation(family) is None


def assert_nested(family: NestedCodeFamily) -> None:
    bad = first_nesting_violation(family)
    if bad is not None:
        raise InvalidFamilyError(bad[0], bad[1])


def hamming_7_4() -> BinaryCode:
    """The fixed [7,4,3] Hamming code fixture used throughout the tests."""
    return BinaryCode.from_matrix(
        [
            "1000110",
            "0100011",
            "0010111",
            "0001101",
        ]
    )

"""Construction-D lattices over nested binary code families.

The lattice is the set of vectors  z + sum_l sum_j (b_j^l / 2^(l-1)) c_j
with z in (2Z)^n and b binary, where c_1..c_{k_1} generate the chain's
codes by prefixes.  Everything structural here is exact: the generator
matrix is carried as an integer matrix with a global power-of-two
denominator, determinants use fraction-free elimination, membership and
dual computations are rational.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import BudgetExceededError
from .gf2 import (
    BinaryCode,
    NestedCodeFamily,
    assert_nested,
    rref,
    unpack_bits,
)


def bareiss_determinant(mat: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix (fraction-free elimination)."""
    a = [[int(x) for x in row] for row in mat]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant needs a square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def hermite_normal_form(mat: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of a full-rank integer matrix.

    Canonical form: upper triangular, positive pivots, entries above each
    pivot reduced into [0, pivot).  Two integer bases generate the same
    lattice iff their HNFs are equal.
    """
    a = [[int(x) for x in row] for row in mat]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    r = 0
    for c in range(cols):
        if r == rows:
            break
        while True:
            nz = [i for i in range(r, rows) if a[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[i0] = a[i0], a[r]
            if len(nz) == 1 and nz[0] == r or all(
                a[i][c] % a[r][c] == 0 for i in range(r + 1, rows)
            ):
                for i in range(r + 1, rows):
                    if a[i][c]:
                        q = a[i][c] // a[r][c]
                        a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                break
            for i in range(r + 1, rows):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
        if a[r][c] != 0:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
            for i in range(r):
                q = a[i][c] // a[r][c]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
            r += 1
    return a


@dataclass(frozen=True)
class CrossSectionInfo:
    """Per-coordinate cross-section/projection summary.

    ``first_row`` is the 0-based index of the first generator row with a
    nonzero entry in this coordinate.  ``level`` is 0 when only a coarse
    2e row touches the coordinate (trivial label group).
    """

    coordinate: int
    first_row: int
    level: int
    group_order: int
    projection_scale: Fraction
    cross_section_step: int = 2


@dataclass(frozen=True)
class GainBounds:
    """Coding-gain bounds derived from the component codes' distances."""

    d2_lower: Fraction  # lower bound on squared minimum distance
    gain_lower: float  # d2_lower / 4^(1 - sum(k)/n)
    rate_gain: float  # (1/alpha) * 4^(sum(k)/n)
    distance_conditions_hold: bool  # d_min^(l) >= 4^l / alpha for every level
    equality_holds: bool  # d_min^(l) >= 4^l for every level: gain == rate_gain


class ConstructionDLattice:
    """Exact Construction-D lattice built from a NestedCodeFamily.

    The generator matrix is B = b_num / 2**den_pow with den_pow = a - 1;
    row j < k_1 is codeword row c_j at its deepest level's scale, the
    remaining rows are 2e_i on the columns not pivoted by C_1.
    """

    def __init__(self, family: NestedCodeFamily):
        assert_nested(family)
        self.family = family
        self.n = family.n
        self.a = family.a
        self.alpha = family.alpha
        self.den_pow = family.a - 1

        c1 = family.codes[0]
        _, pivots = rref(c1.rows, self.n)
        free_cols = [c for c in range(self.n) if c not in pivots]

        scale = 1 << self.den_pow
        rows = []
        levels = []
        for j, word in enumerate(c1.rows):
            lvl = family.level_of_row(j)
            rows.append(unpack_bits(word, self.n).astype(np.int64) * (scale >> (lvl - 1)))
            levels.append(lvl)
        for c in free_cols:
            e = np.zeros(self.n, dtype=np.int64)
            e[c] = 2 * scale
            rows.append(e)
            levels.append(0)

        self.b_num = np.array(rows, dtype=np.int64)
        self.row_level = tuple(levels)
        self.free_columns = tuple(free_cols)

        self._det: Fraction | None = None
        self._b_inv: list[list[Fraction]] | None = None
        # Per-level (reduced rows, combination masks) for membership solves.
        self._level_solvers: dict[int, tuple[list[int], list[int]]] = {}
        self._row_arrays = [
            unpack_bits(w, self.n).astype(np.int64) for w in c1.rows
        ]

    # -- structural basics -------------------------------------------------

    @property
    def k(self) -> tuple[int, ...]:
        return self.family.k

    @property
    def sum_k(self) -> int:
        return sum(self.family.k)

    def b_rows_exact(self) -> list[list[Fraction]]:
        den = 1 << self.den_pow
        return [[Fraction(int(x), den) for x in row] for row in self.b_num]

    def __repr__(self) -> str:
        return (
            f"ConstructionDLattice(n={self.n}, a={self.a}, alpha={self.alpha}, "
            f"k={list(self.k)})"
        )

    # -- determinant and volume --------------------------------------------

    def determinant(self) -> Fraction:
        """det = 2**(n - sum k), cross-checked against the exact |det B|."""
        if self._det is None:
            formula = Fraction(2) ** (self.n - self.sum_k)
            det_num = bareiss_determinant(self.b_num.tolist())
            measured = Fraction(abs(det_num), (1 << self.den_pow) ** self.n)
            if measured != formula:
                raise RuntimeError(
                    f"determinant invariant violated: |det B| = {measured}, "
                    f"level-dimension formula gives {formula}"
                )
            self._det = formula
        return self._det

    def normalized_volume(self) -> float:
        """det(lattice)^(2/n), the volume term of the coding gain."""
        return 4.0 ** ((self.n - self.sum_k) / self.n)

    # -- encodings -----------------------------------------------------------

    def encode_eq3(self, z: Sequence[int], bits: Sequence[Sequence[int]]) -> np.ndarray:
        """Lattice point z + sum_l sum_j (bits[l][j] / 2^(l-1)) c_j.

        ``z`` must have even integer entries; ``bits[l-1]`` holds the k_l
        selection bits of level l.  The result is an exact dyadic vector
        (float64 carries it exactly).
        """
        z = np.asarray(z, dtype=np.int64)
        if z.shape != (self.n,):
            raise ValueError(f"z must have length {self.n}")
        if np.any(z % 2 != 0):
            raise ValueError("z must have even entries")
        if len(bits) != self.a:
            raise ValueError(f"need one bit vector per level (a={self.a})")

        scale = 1 << self.den_pow
        num = z.astype(np.int64) * scale
        for l, level_bits in enumerate(bits, start=1):
            kl = self.family.codes[l - 1].k
            sel = np.asarray(level_bits, dtype=np.int64)
            if sel.shape != (kl,):
                raise ValueError(f"level {l} expects {kl} bits")
            if np.any((sel != 0) & (sel != 1)):
                raise ValueError("selection bits must be 0/1")
            for j in np.flatnonzero(sel):
                num += self._row_arrays[j] * (scale >> (l - 1))
        return num / scale

    def encode_basis(self, x: Sequence[int]) -> np.ndarray:
        """Lattice point x . B for an integer coefficient vector x."""
        x = np.asarray(x, dtype=np.int64)
        if x.shape != (self.n,):
            raise ValueError(f"x must have length {self.n}")
        return (x @ self.b_num) / (1 << self.den_pow)

    # -- membership -----------------------------------------------------------

    def _level_solver(self, level: int) -> tuple[list[int], list[int]]:
        """RREF rows of C_level plus masks mapping them back to original rows."""
        if level not in self._level_solvers:
            kl = self.family.codes[level - 1].k
            rows = list(self.family.codes[0].rows[:kl])
            # Row-reduce while tracking the combination of original rows.
            combos = [1 << i for i in range(kl)]
            reduced: list[tuple[int, int]] = []  # (row, combo), distinct pivots
            for row, combo in zip(rows, combos):
                for r, c in reduced:
                    if row & (r & -r):
                        row ^= r
                        combo ^= c
                if row:
                    reduced.append((row, combo))
            self._level_solvers[level] = (
                [r for r, _ in reduced],
                [c for _, c in reduced],
            )
        return self._level_solvers[level]

    def _solve_codeword(self, target: int, level: int) -> int | None:
        """Mask of original rows XOR-ing to ``target`` in C_level, or None."""
        reduced, combos = self._level_solver(level)
        combo = 0
        for r, c in zip(reduced, combos):
            if target & (r & -r):
                target ^= r
                combo ^= c
        return combo if target == 0 else None

    def is_lattice_point(self, v) -> bool:
        """Exact membership test.

        Equivalent to checking that v B^{-1} is integral, computed by
        peeling the construction level by level: at each level the parity
        pattern must be a codeword, whose integer row sum is subtracted
        before halving.
        """
        vec = [Fraction(x) for x in np.asarray(v).tolist()]
        if len(vec) != self.n:
            return False
        scale = 1 << self.den_pow
        scaled = [x * scale for x in vec]
        if any(x.denominator != 1 for x in scaled):
            return False
        work = np.array([int(x) for x in scaled], dtype=object)
        for level in range(self.a, 0, -1):
            pattern = 0
            for i in range(self.n):
                if int(work[i]) & 1:
                    pattern |= 1 << i
            combo = self._solve_codeword(pattern, level)
            if combo is None:
                return False
            while combo:
                low = combo & -combo
                work = work - self._row_arrays[low.bit_length() - 1]
                combo ^= low
            work = work // 2
        return True

    # -- dual ------------------------------------------------------------------

    def b_inverse(self) -> list[list[Fraction]]:
        """Exact B^{-1} (rational Gauss-Jordan), with B B^{-1} = I asserted."""
        if self._b_inv is None:
            n = self.n
            den = 1 << self.den_pow
            aug = [
                [Fraction(int(self.b_num[i, j]), den) for j in range(n)]
                + [Fraction(int(i == j)) for j in range(n)]
                for i in range(n)
            ]
            for col in range(n):
                piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
                if piv is None:
                    raise RuntimeError("generator matrix is singular")
                aug[col], aug[piv] = aug[piv], aug[col]
                inv = 1 / aug[col][col]
                aug[col] = [x * inv for x in aug[col]]
                for r in range(n):
                    if r != col and aug[r][col]:
                        f = aug[r][col]
                        aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
            binv = [row[n:] for row in aug]
            # Exact sanity: B(B^{-1}) = I.
            for i in range(n):
                for j in range(n):
                    s = sum(
                        Fraction(int(self.b_num[i, t]), den) * binv[t][j]
                        for t in range(n)
                    )
                    if s != (1 if i == j else 0):
                        raise RuntimeError("B * B^-1 != I (exact) -- invariant broken")
            self._b_inv = binv
        return self._b_inv

    def dual_generator(self) -> list[list[Fraction]]:
        """Generator of the dual lattice under the row convention: (B^{-1})^T."""
        binv = self.b_inverse()
        return [[binv[j][i] for j in range(self.n)] for i in range(self.n)]

    # -- cross sections and label groups ----------------------------------------

    def cross_section(self, coordinate: int) -> CrossSectionInfo:
        """Cross-section / projection data for one coordinate (0-based)."""
        if not 0 <= coordinate < self.n:
            raise ValueError(f"coordinate must be in [0, {self.n})")
        col = self.b_num[:, coordinate]
        first = int(np.flatnonzero(col)[0])
        level = self.row_level[first]
        return CrossSectionInfo(
            coordinate=coordinate,
            first_row=first,
            level=level,
            group_order=1 << level,
            projection_scale=Fraction(2) ** (1 - level),
        )

    def label_group_elements(self, coordinate: int) -> list[Fraction]:
        """Coset offsets a_t = t / g_j of the coordinate's label group."""
        g = self.cross_section(coordinate).group_order
        return [Fraction(t, g) for t in range(g)]

    # -- distance and gain bounds -------------------------------------------------

    def level_min_distances(self, supplied: Sequence[int] | None = None) -> list[int]:
        """Minimum distance of each level's code, enumerated or supplied."""
        if supplied is not None:
            if len(supplied) != self.a:
                raise ValueError(f"need {self.a} distances")
            return [int(d) for d in supplied]
        out = []
        for code in self.family.codes:
            try:
                out.append(code.min_distance())
            except BudgetExceededError:
                raise ValueError(
                    f"minimum distance of [{code.n},{code.k}] code exceeds the "
                    "enumeration budget; supply it explicitly"
                ) from None
        return out

    def min_dist_sq_lower_bound(self, d_mins: Sequence[int] | None = None) -> Fraction:
        """(1/alpha) min{ d1, d2/4, ..., d_a/4^(a-1), 4 } <= d^2_min(lattice)."""
        dm = self.level_min_distances(d_mins)
        terms = [Fraction(d, 4 ** (l - 1)) for l, d in enumerate(dm, start=1)]
        terms.append(Fraction(4))
        return min(terms) / self.alpha

    def coding_gain_bounds(self, d_mins: Sequence[int] | None = None) -> GainBounds:
        dm = self.level_min_distances(d_mins)
        d2_lower = self.min_dist_sq_lower_bound(dm)
        rate_exp = self.sum_k / self.n
        rate_gain = (4.0**rate_exp) / self.alpha
        return GainBounds(
            d2_lower=d2_lower,
            gain_lower=float(d2_lower) / self.normalized_volume(),
            rate_gain=rate_gain,
            distance_conditions_hold=all(
                d * self.alpha >= 4**l for l, d in enumerate(dm, start=1)
            ),
            equality_holds=all(d >= 4**l for l, d in enumerate(dm, start=1)),
        )

    def coding_gain_exact(self, d_min_sq) -> float:
        """d^2_min / det^(2/n) for an exactly known squared minimum distance."""
        d2 = Fraction(d_min_sq) if not isinstance(d_min_sq, float) else d_min_sq
        if d2 <= 0:
            raise ValueError("squared minimum distance must be positive")
        return float(d2) / self.normalized_volume()

    # -- serialization ---------------------------------------------------------

    def to_json_dict(self) -> dict:
        c1 = self.family.codes[0]
        return {
            "n": self.n,
            "a": self.a,
            "alpha": self.alpha,
            "k": list(self.k),
            "den_pow": self.den_pow,
            "generator_rows": [
                "".join(str((w >> i) & 1) for i in range(self.n)) for w in c1.rows
            ],
            "b_num": self.b_num.tolist(),
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "ConstructionDLattice":
        n = int(doc["n"])
        ks = [int(x) for x in doc["k"]]
        rows = [int(s[::-1], 2) for s in doc["generator_rows"]]
        if len(rows) != ks[0]:
            raise ValueError("generator row count disagrees with k[0]")
        codes = tuple(BinaryCode(n, rows[:kl]) for kl in ks)
        family = NestedCodeFamily(codes=codes, alpha=int(doc["alpha"]))
        lat = cls(family)
        if "b_num" in doc and lat.b_num.tolist() != doc["b_num"]:
            raise ValueError("stored generator matrix disagrees with reconstruction")
        return lat


def construction_d(family: NestedCodeFamily) -> ConstructionDLattice:
    """Build the Construction-D lattice of a validated nested family."""
    return ConstructionDLattice(family)

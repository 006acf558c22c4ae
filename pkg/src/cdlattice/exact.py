"""Exact brute-force references: coset decompositions, nearest-point
decoding and exact lattice minimum distance.

Everything here enumerates the 2**sum(k) cosets of (2Z)^n inside the
lattice, so it is only usable at validation scale; the budget guard keeps
callers honest.  Being obviously correct is the point: these routines
back-stop the bounds and the iterative decoder.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import BudgetExceededError
from .lattice import ConstructionDLattice

COSET_BITS_BUDGET = 20


def _require_budget(lat: ConstructionDLattice) -> None:
    if lat.sum_k > COSET_BITS_BUDGET:
        raise BudgetExceededError(
            f"coset enumeration needs 2**{lat.sum_k} offsets; budget is "
            f"2**{COSET_BITS_BUDGET}"
        )


@dataclass(frozen=True)
class CosetDecomposition:
    """All coset offsets of the lattice modulo its coarse sublattice (2Z)^n.

    ``offsets_scaled[t]`` holds the t-th offset times 2**den_pow, each
    coordinate canonical in [0, 2**(den_pow+1)).  The enumeration order is
    fixed: selection bit for basis row j of level l toggles with period
    2**(position), positions counted level a first, row order within level.
    """

    offsets_scaled: np.ndarray
    den_pow: int
    coarse_step: int = 2

    def __len__(self) -> int:
        return self.offsets_scaled.shape[0]

    def offsets_float(self) -> np.ndarray:
        return self.offsets_scaled.astype(np.float64) / (1 << self.den_pow)


def coset_offsets(lat: ConstructionDLattice) -> CosetDecomposition:
    """Enumerate every sum_l sum_j (b/2^(l-1)) c_j reduced mod 2 per coordinate."""
    _require_budget(lat)
    scale = 1 << lat.den_pow
    modulus = 2 * scale
    rows = []  # (scaled integer row) in toggle order: level a down to 1
    for level in range(lat.a, 0, -1):
        kl = lat.family.codes[level - 1].k
        for j in range(kl):
            rows.append(lat._row_arrays[j] * (scale >> (level - 1)))
    offsets = np.zeros((1, lat.n), dtype=np.int64)
    for row in rows:
        offsets = np.concatenate([offsets, (offsets + row) % modulus], axis=0)
    return CosetDecomposition(offsets_scaled=offsets, den_pow=lat.den_pow)


def _nearest_in_cosets(offsets: np.ndarray, y: np.ndarray) -> tuple[int, np.ndarray, float]:
    """Index, point and squared distance of the nearest point across cosets.

    Per coset the nearest point is offset + 2*round((y-offset)/2) with
    halfway cases rounded down (lexicographically smallest point); the
    winning coset is the first one attaining the minimal distance.
    """
    u = (y[None, :] - offsets) / 2.0
    m = np.ceil(u - 0.5)
    cand = offsets + 2.0 * m
    d2 = ((y[None, :] - cand) ** 2).sum(axis=1)
    idx = int(np.argmin(d2))
    return idx, cand[idx], float(d2[idx])


def ml_decode(lat: ConstructionDLattice, y) -> np.ndarray:
    """Exact nearest lattice point to y (ties broken deterministically)."""
    y = np.asarray(y, dtype=np.float64)
    if y.shape != (lat.n,):
        raise ValueError(f"received vector must have length {lat.n}")
    dec = _decomposition_cache(lat)
    _, point, _ = _nearest_in_cosets(dec.offsets_float(), y)
    return point


def ml_decode_batch(lat: ConstructionDLattice, ys: np.ndarray) -> np.ndarray:
    """Row-wise exact nearest points for a (trials, n) batch."""
    ys = np.asarray(ys, dtype=np.float64)
    dec = _decomposition_cache(lat)
    offsets = dec.offsets_float()
    out = np.empty_like(ys)
    for t in range(ys.shape[0]):
        _, out[t], _ = _nearest_in_cosets(offsets, ys[t])
    return out


def lattice_min_dist_sq(lat: ConstructionDLattice) -> Fraction:
    """Exact squared minimum distance via coset enumeration.

    Each nonzero coset contributes the sum over coordinates of the squared
    distance from the offset to the nearest even integer; the coarse
    lattice itself contributes 4.
    """
    dec = _decomposition_cache(lat)
    scaled = dec.offsets_scaled
    scale = 1 << lat.den_pow
    modulus = 2 * scale
    per_coord = np.minimum(scaled, modulus - scaled).astype(np.int64) ** 2
    totals = per_coord.sum(axis=1)
    nonzero = totals[np.any(scaled != 0, axis=1)]
    best = Fraction(4)
    if nonzero.size:
        best = min(best, Fraction(int(nonzero.min()), scale * scale))
    return best


def _decomposition_cache(lat: ConstructionDLattice) -> CosetDecomposition:
    dec = getattr(lat, "_coset_cache", None)
    if dec is None:
        dec = coset_offsets(lat)
        lat._coset_cache = dec
    return dec

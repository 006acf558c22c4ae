"""Sparse (alist) and dense text formats for binary matrices.

The alist layout, in order: ``n_cols n_rows``; ``max_col_deg max_row_deg``;
per-column degrees; per-row degrees; one line per column listing 1-based
row indices (zero-padded to the max column degree); one line per row
listing 1-based column indices (zero-padded likewise).  Round-trips are
bit-exact.
"""

from __future__ import annotations

import io
from pathlib import Path

import numpy as np


def write_alist(path: str | Path, matrix: np.ndarray) -> None:
    matrix = np.asarray(matrix, dtype=np.uint8)
    if matrix.ndim != 2:
        raise ValueError("alist serialization needs a 2-D 0/1 matrix")
    m, n = matrix.shape
    col_deg = matrix.sum(axis=0, dtype=int)
    row_deg = matrix.sum(axis=1, dtype=int)
    max_col = int(col_deg.max(initial=0))
    max_row = int(row_deg.max(initial=0))

    out = io.StringIO()
    out.write(f"{n} {m}\n{max_col} {max_row}\n")
    out.write(" ".join(str(d) for d in col_deg) + "\n")
    out.write(" ".join(str(d) for d in row_deg) + "\n")
    for j in range(n):
        idx = [str(i + 1) for i in np.flatnonzero(matrix[:, j])]
        idx += ["0"] * (max_col - len(idx))
        out.write(" ".join(idx) + "\n")
    for i in range(m):
        idx = [str(j + 1) for j in np.flatnonzero(matrix[i, :])]
        idx += ["0"] * (max_row - len(idx))
        out.write(" ".join(idx) + "\n")
    Path(path).write_text(out.getvalue())


def read_alist(path: str | Path) -> np.ndarray:
    tokens = Path(path).read_text().split()
    it = iter(int(t) for t in tokens)
    n, m = next(it), next(it)
    if n <= 0 or m <= 0:
        raise ValueError("alist header has non-positive dimensions")
    max_col, max_row = next(it), next(it)
    col_deg = [next(it) for _ in range(n)]
    row_deg = [next(it) for _ in range(m)]

    matrix = np.zeros((m, n), dtype=np.uint8)
    for j in range(n):
        entries = [next(it) for _ in range(max_col)]
        rows = [e for e in entries if e != 0]
        if len(rows) != col_deg[j]:
            raise ValueError(f"column {j}: degree list disagrees with index list")
        for i in rows:
            matrix[i - 1, j] = 1
    for i in range(m):
        entries = [next(it) for _ in range(max_row)]
        cols = [e for e in entries if e != 0]
        if len(cols) != row_deg[i]:
            raise ValueError(f"row {i}: degree list disagrees with index list")
        for j in cols:
            if matrix[i, j - 1] != 1:
                raise ValueError(f"row/column index lists disagree at ({i}, {j - 1})")
    if int(matrix.sum()) != sum(col_deg):
        raise ValueError("total degree mismatch between column and row sections")
    return matrix


def write_dense(path: str | Path, matrix: np.ndarray) -> None:
    matrix = np.asarray(matrix, dtype=np.uint8)
    lines = ["".join("1" if b else "0" for b in row) for row in matrix]
    Path(path).write_text("\n".join(lines) + "\n")


def read_dense(path: str | Path) -> np.ndarray:
    lines = [ln.strip() for ln in Path(path).read_text().splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty dense matrix file")
    widths = {len(ln) for ln in lines}
    if len(widths) != 1:
        raise ValueError("ragged dense matrix rows")
    if set("".join(lines)) - {"0", "1"}:
        raise ValueError("dense format allows only 0/1 characters")
    return np.array([[int(c) for c in ln] for ln in lines], dtype=np.uint8)


def load_matrix(path: str | Path) -> np.ndarray:
    """Load a binary matrix from either format (sniffed from the first line)."""
    first = Path(path).read_text().lstrip().splitlines()[0]
    if " " in first.strip():
        return read_alist(path)
    return read_dense(path)

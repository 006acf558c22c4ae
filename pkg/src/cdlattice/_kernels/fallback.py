"""Pure-Python (numpy) min-sum kernel.

Mirrors the compiled kernel operation for operation: the check-node scan
runs left to right over padded edge columns with the same running
min1/min2/argmin updates and the symbol totals accumulate in the same
edge order, so both backends produce bit-identical results.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def run_minsum(graph, lam, max_iter: int, scale: float, clip: float):
    """One min-sum decode on a CheckGraph; returns (bits, iterations, converged)."""
    n, m, n_edges = graph.n, graph.m, graph.n_edges
    chk_sym = graph.chk_sym
    edge_check = graph.edge_check
    edge_pos = graph.edge_pos
    chk_pad = graph.chk_pad_edges  # (m, d_ch_max), pad slot = n_edges
    sym_pad = graph.sym_pad_edges  # (n, d_s_max), pad slot = n_edges

    lam = np.asarray(lam, dtype=np.float64)
    s2c = np.clip(lam[chk_sym], -clip, clip)
    bits = (lam < 0).astype(np.uint8)
    iterations = 0
    converged = m == 0

    for iterations in range(1, max_iter + 1):
        # Check pass: per check, sign parity plus smallest and second
        # smallest |message| with the first argmin position.
        av_ext = np.append(np.abs(s2c), np.inf)
        neg = s2c < 0
        neg_ext = np.append(neg, False)
        parity = np.zeros(m, dtype=bool)
        min1 = np.full(m, clip)
        min2 = np.full(m, clip)
        argpos = np.full(m, -1, dtype=np.int64)
        for d in range(chk_pad.shape[1]):
            eid = chk_pad[:, d]
            v = av_ext[eid]
            parity ^= neg_ext[eid]
            better = v < min1
            second = ~better & (v < min2)
            min2 = np.where(better, min1, np.where(second, v, min2))
            argpos = np.where(better, d, argpos)
            min1 = np.where(better, v, min1)

        mag = np.where(edge_pos == argpos[edge_check], min2[edge_check], min1[edge_check])
        t = scale * mag
        c2s = np.where(parity[edge_check] ^ neg, -t, t)

        # Symbol pass: totals accumulate channel + incoming in edge order.
        c2s_ext = np.append(c2s, 0.0)
        tot = lam.copy()
        for d in range(sym_pad.shape[1]):
            tot = tot + c2s_ext[sym_pad[:, d]]
        bits = (tot < 0).astype(np.uint8)
        s2c = np.clip(tot[chk_sym] - c2s, -clip, clip)

        # Syndrome: every check must see even parity.
        bits_ext = np.append(bits, np.uint8(0))
        syndrome = np.zeros(m, dtype=bool)
        for d in range(chk_pad.shape[1]):
            syndrome ^= bits_ext[chk_pad[:, d]].astype(bool)
        if not syndrome.any():
            converged = True
            break

    if m == 0:
        iterations = 1
        bits = (lam < 0).astype(np.uint8)
    return bits, iterations, converged

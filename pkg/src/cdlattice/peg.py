"""Progressive-edge-growth Tanner graphs and systematic LDGM codes.

Edges are placed one symbol at a time, lowest target degree first.  Each
new edge goes to the check node that is currently hardest to reach from
the symbol (breadth-first over the existing graph), breaking degree ties
uniformly at random under the recorded seed, which keeps short cycles
out of the graph for as long as the degree budget allows.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .gf2 import BinaryCode


@dataclass(frozen=True)
class TannerGraph:
    """Bipartite symbol/check graph with per-symbol sorted adjacency."""

    n_symbols: int
    n_checks: int
    adjacency: tuple[tuple[int, ...], ...]
    degrees: tuple[int, ...]
    seed: int

    def __post_init__(self):
        for s, nbrs in enumerate(self.adjacency):
            if len(set(nbrs)) != len(nbrs):
                raise ValueError(f"parallel edges at symbol {s}")
            if len(nbrs) != self.degrees[s]:
                raise ValueError(f"symbol {s} degree {len(nbrs)} != target {self.degrees[s]}")
            if any(c < 0 or c >= self.n_checks for c in nbrs):
                raise ValueError(f"symbol {s} has out-of-range check index")

    @property
    def n_edges(self) -> int:
        return sum(self.degrees)

    def check_adjacency(self) -> list[list[int]]:
        """Symbols incident to each check, ascending."""
        by_check: list[list[int]] = [[] for _ in range(self.n_checks)]
        for s, nbrs in enumerate(self.adjacency):
            for c in nbrs:
                by_check[c].append(s)
        return by_check

    def to_matrix(self) -> np.ndarray:
        """(n_checks, n_symbols) incidence matrix: checks are rows."""
        mat = np.zeros((self.n_checks, self.n_symbols), dtype=np.uint8)
        for s, nbrs in enumerate(self.adjacency):
            mat[list(nbrs), s] = 1
        return mat

    @classmethod
    def from_matrix(cls, matrix: np.ndarray, *, seed: int = 0) -> "TannerGraph":
        matrix = np.asarray(matrix, dtype=np.uint8)
        m, n = matrix.shape
        adjacency = tuple(tuple(np.flatnonzero(matrix[:, s]).tolist()) for s in range(n))
        return cls(n, m, adjacency, tuple(len(a) for a in adjacency), seed)


def peg_construct(
    n_symbols: int,
    n_checks: int,
    symbol_degrees: Sequence[int] | int,
    seed: int = 0,
) -> TannerGraph:
    """Build a Tanner graph edge by edge, maximizing local reach.

    Parameters
    ----------
    n_symbols, n_checks : node counts (>= 1).
    symbol_degrees : one target degree per symbol, or a single degree for all.
    seed : drives the uniform tie-break among equal-degree candidate checks.

    Symbols are processed in nondecreasing target degree (ties by index).
    A symbol's first edge goes to a minimum-degree check.  Every further
    edge expands the breadth-first neighborhood of the symbol through the
    existing graph and connects to a minimum-degree check among those not
    yet reachable; if everything is reachable, among those at maximum
    depth.  Deterministic for fixed inputs and seed.
    """
    if n_symbols < 1 or n_checks < 1:
        raise ValueError("need at least one symbol and one check node")
    if isinstance(symbol_degrees, (int, np.integer)):
        symbol_degrees = [int(symbol_degrees)] * n_symbols
    degrees = [int(d) for d in symbol_degrees]
    if len(degrees) != n_symbols:
        raise ValueError("one degree per symbol required")
    if any(d < 1 or d > n_checks for d in degrees):
        raise ValueError("symbol degrees must lie in [1, n_checks]")

    rng = random.Random(seed)
    sym_adj: list[set[int]] = [set() for _ in range(n_symbols)]
    chk_adj: list[set[int]] = [set() for _ in range(n_checks)]
    chk_degree = [0] * n_checks
    all_checks = frozenset(range(n_checks))
    depth_cap = 2 * n_checks

    def reach_candidates(s: int) -> set[int]:
        """Checks to consider for the next edge at symbol s (never its neighbors)."""
        visited_checks = set(sym_adj[s])
        visited_syms = {s}
        frontier = visited_checks
        for _ in range(depth_cap):
            new_syms = set()
            for c in frontier:
                new_syms |= chk_adj[c]
            new_syms -= visited_syms
            visited_syms |= new_syms
            new_checks = set()
            for v in new_syms:
                new_checks |= sym_adj[v]
            new_checks -= visited_checks
            if not new_checks:
                # Reach stabilized: either some checks are unreachable, or
                # everything was covered and the last layer is the deepest.
                remainder = all_checks - visited_checks
                return remainder if remainder else frontier
            if visited_checks | new_checks == all_checks:
                return set(new_checks)
            visited_checks |= new_checks
            frontier = new_checks
        return (all_checks - visited_checks) or frontier

    def pick(cands: set[int]) -> int:
        best = min(chk_degree[c] for c in cands)
        pool = sorted(c for c in cands if chk_degree[c] == best)
        return pool[rng.randrange(len(pool))]

    order = sorted(range(n_symbols), key=lambda s: (degrees[s], s))
    for s in order:
        for t in range(degrees[s]):
            cands = all_checks - sym_adj[s] if t == 0 else reach_candidates(s)
            c = pick(cands)
            sym_adj[s].add(c)
            chk_adj[c].add(s)
            chk_degree[c] += 1

    adjacency = tuple(tuple(sorted(a)) for a in sym_adj)
    return TannerGraph(n_symbols, n_checks, adjacency, tuple(degrees), seed)


def girth(graph: TannerGraph) -> int | float:
    """Length of the shortest cycle; ``math.inf`` for forests.

    Runs a breadth-first search around every edge: drop the edge, measure
    the shortest remaining path between its endpoints, add the edge back.
    Cycle lengths in a bipartite graph are even.
    """
    n_s = graph.n_symbols
    # Node ids: symbols 0..n_s-1, checks n_s..n_s+n_c-1.
    adj: list[list[int]] = [[] for _ in range(n_s + graph.n_checks)]
    for s, nbrs in enumerate(graph.adjacency):
        for c in nbrs:
            adj[s].append(n_s + c)
            adj[n_s + c].append(s)

    best = math.inf
    for s, nbrs in enumerate(graph.adjacency):
        for c in nbrs:
            target = n_s + c
            # BFS from s to target without using the (s, target) edge itself.
            dist = {s: 0}
            queue = [s]
            depth = 0
            found = None
            while queue and found is None:
                if depth + 1 >= best:
                    break  # any completion now cannot beat the current girth
                nxt = []
                for u in queue:
                    for v in adj[u]:
                        if (u == s and v == target) or v in dist:
                            continue
                        dist[v] = depth + 1
                        if v == target:
                            found = depth + 1
                            break
                        nxt.append(v)
                    if found is not None:
                        break
                queue = nxt
                depth += 1
            if found is not None:
                best = min(best, found + 1)
    return int(best) if best != math.inf else math.inf


def systematic_ldgm_from_graph(graph: TannerGraph) -> BinaryCode:
    """Code with generator [I_k | P] where P is the graph's incidence.

    Symbols are the k information positions, checks the n-k parity
    positions; P[i, j] = 1 iff symbol i touches check j.
    """
    k, n_par = graph.n_symbols, graph.n_checks
    rows = []
    for i in range(k):
        row = 1 << i
        for j in graph.adjacency[i]:
            row |= 1 << (k + j)
        rows.append(row)
    return BinaryCode(k + n_par, rows)


def graph_from_code(code: BinaryCode) -> TannerGraph:
    """Recover the parity-structure graph of a systematic [I_k | P] generator."""
    arr = code.generator_array()
    k, n = code.k, code.n
    if not np.array_equal(arr[:, :k], np.eye(k, dtype=np.uint8)):
        raise ValueError("generator is not in systematic [I | P] form")
    return TannerGraph.from_matrix(arr[:, k:].T)

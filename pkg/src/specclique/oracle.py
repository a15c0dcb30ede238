"""Exact clique number, chromatic number and triangle test for small graphs.

Vertex sets are Python ints used as bitsets; bit ``i`` stands for vertex
``i`` of the relabelled graph the solvers work on.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Optional

from .graph import Graph, complement

__all__ = [
    "OracleResult",
    "ChromaticResult",
    "max_clique_exact",
    "chromatic_number_exact",
    "is_triangle_free",
    "exact_invariants",
    "DEFAULT_NODE_LIMIT",
    "DEFAULT_CHI_MAX_N",
    "DEFAULT_CHI_NODE_LIMIT",
]

DEFAULT_NODE_LIMIT = 10**8
DEFAULT_CHI_MAX_N = 64
# colouring is the expensive half of a scan; chi is reported, never needed for a verdict
DEFAULT_CHI_NODE_LIMIT = 10**6


class _Truncated(Exception):
    pass


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _degeneracy_order(rows: list[int]) -> list[int]:
    """Smallest-last ordering; returned so that the densest core comes first."""
    n = len(rows)
    alive = (1 << n) - 1
    deg = [r.bit_count() for r in rows]
    removed = []
    for _ in range(n):
        v = min(_bits(alive), key=lambda u: (deg[u], u))
        removed.append(v)
        alive ^= 1 << v
        for u in _bits(rows[v] & alive):
            deg[u] -= 1
    return removed[::-1]


def _relabel(rows: list[int], order: list[int]) -> list[int]:
    pos = {v: i for i, v in enumerate(order)}
    out = []
    for v in order:
        r = 0
        for u in _bits(rows[v]):
            r |= 1 << pos[u]
        out.append(r)
    return out


@dataclass
class OracleResult:
    omega: int
    chi: Optional[int] = None
    triangle_free: bool = False
    elapsed: float = 0.0
    truncated: bool = False
    nodes: int = 0
    clique: list[int] = field(default_factory=list)
    chi_truncated: bool = False
    chi_bounds: Optional[tuple[int, int]] = None


class _CliqueSearch:
    def __init__(self, rows: list[int], node_limit: int):
        self.rows = rows
        self.node_limit = node_limit
        self.nodes = 0
        self.best = 0
        self.best_set = 0

    def run(self, initial_best: int = 0, initial_set: int = 0):
        self.best, self.best_set = initial_best, initial_set
        n = len(self.rows)
        if n:
            self._expand(0, 0, (1 << n) - 1)

    def _expand(self, size: int, current: int, cand: int):
        self.nodes += 1
        if self.nodes > self.node_limit:
            raise _Truncated
        rows = self.rows
        # greedy colour classes in bit order; only vertices whose colour could
        # still beat the incumbent are branched on
        threshold = self.best - size
        order: list[int] = []
        colours: list[int] = []
        uncoloured = cand
        k = 0
        while uncoloured:
            k += 1
            q = uncoloured
            while q:
                low = q & -q
                v = low.bit_length() - 1
                q &= ~(rows[v] | low)
                uncoloured ^= low
                if k > threshold:
                    order.append(v)
                    colours.append(k)
        for idx in range(len(order) - 1, -1, -1):
            if size + colours[idx] <= self.best:
                return
            v = order[idx]
            bit = 1 << v
            new = cand & rows[v]
            if new:
                self._expand(size + 1, current | bit, new)
            elif size + 1 > self.best:
                self.best = size + 1
                self.best_set = current | bit
            cand &= ~bit


def _greedy_clique(rows: list[int]) -> int:
    best = 0
    for start in range(len(rows)):
        clique = 1 << start
        cand = rows[start]
        while cand:
            v = max(_bits(cand), key=lambda u: (rows[u] & cand).bit_count())
            clique |= 1 << v
            cand &= rows[v]
        if clique.bit_count() > best.bit_count():
            best = clique
    return best


def max_clique_exact(g: Graph, node_limit: int = DEFAULT_NODE_LIMIT) -> OracleResult:
    """Maximum clique by colour-bounded branch and bound over a degeneracy ordering.

    On truncation ``omega`` is the best clique found so far (a lower bound).
    """
    t0 = time.perf_counter()
    rows0 = list(g.rows)
    order = _degeneracy_order(rows0)
    rows = _relabel(rows0, order)
    search = _CliqueSearch(rows, node_limit)
    seed = _greedy_clique(rows)
    truncated = False
    try:
        search.run(seed.bit_count(), seed)
    except _Truncated:
        truncated = True
    clique = sorted(order[i] for i in _bits(search.best_set))
    omega = max(search.best, 1)
    if not clique:
        clique = [0]
    return OracleResult(
        omega=omega,
        triangle_free=omega <= 2,
        elapsed=time.perf_counter() - t0,
        truncated=truncated,
        nodes=search.nodes,
        clique=clique,
    )


# ---------------------------------------------------------------------------
# colouring


def _dsatur_greedy(rows: list[int]) -> list[int]:
    n = len(rows)
    colour = [-1] * n
    forbidden = [0] * n
    uncoloured = (1 << n) - 1
    for _ in range(n):
        v = max(_bits(uncoloured),
                key=lambda u: (forbidden[u].bit_count(), (rows[u] & uncoloured).bit_count(), -u))
        free = ~forbidden[v]
        c = (free & -free).bit_length() - 1
        colour[v] = c
        uncoloured ^= 1 << v
        for u in _bits(rows[v] & uncoloured):
            forbidden[u] |= 1 << c
    return colour


class _Colourer:
    """Backtracking k-colourability test with DSATUR branching."""

    def __init__(self, rows: list[int], node_limit: int):
        self.rows = rows
        self.n = len(rows)
        self.node_limit = node_limit
        self.nodes = 0

    def colour(self, k: int, fixed: list[int]) -> Optional[list[int]]:
        n = self.n
        self.k = k
        self.colour_of = [-1] * n
        self.forbidden = [0] * n
        self.uncoloured = (1 << n) - 1
        for c, v in enumerate(fixed):
            self._assign(v, c)
        if self._search(len(fixed)):
            return list(self.colour_of)
        return None

    def _assign(self, v: int, c: int) -> list[int]:
        self.colour_of[v] = c
        self.uncoloured ^= 1 << v
        bit = 1 << c
        touched = []
        for u in _bits(self.rows[v] & self.uncoloured):
            if not self.forbidden[u] & bit:
                self.forbidden[u] |= bit
                touched.append(u)
        return touched

    def _unassign(self, v: int, c: int, touched: list[int]):
        self.colour_of[v] = -1
        self.uncoloured |= 1 << v
        bit = 1 << c
        for u in touched:
            self.forbidden[u] &= ~bit

    def _search(self, used: int) -> bool:
        if not self.uncoloured:
            return True
        self.nodes += 1
        if self.nodes > self.node_limit:
            raise _Truncated
        full = (1 << self.k) - 1
        best_v, best_key = -1, None
        unc = self.uncoloured
        for u in _bits(unc):
            sat = self.forbidden[u].bit_count()
            if self.forbidden[u] & full == full:
                return False
            key = (sat, (self.rows[u] & unc).bit_count())
            if best_key is None or key > best_key:
                best_v, best_key = u, key
        v = best_v
        limit = min(used + 1, self.k)
        for c in range(limit):
            if self.forbidden[v] >> c & 1:
                continue
            touched = self._assign(v, c)
            if self._search(max(used, c + 1)):
                return True
            self._unassign(v, c, touched)
        return False


@dataclass
class ChromaticResult:
    chi: Optional[int]
    lower: int
    upper: int
    colouring: list[int]
    truncated: bool
    nodes: int


def chromatic_number_exact(g: Graph, node_limit: int = DEFAULT_NODE_LIMIT,
                           max_n: int = DEFAULT_CHI_MAX_N, clique: OracleResult | None = None,
                           independence_node_limit: int = 200_000) -> ChromaticResult:
    """Exact chromatic number by iterative deepening on k-colourability.

    The lower bound starts at max(omega, ceil(n / alpha)) where alpha is taken
    from a budgeted clique search on the complement; the upper bound from a
    greedy DSATUR colouring. ``chi`` is ``None`` when the limit is hit.
    """
    if g.n > max_n:
        raise ValueError(f"n={g.n} exceeds chromatic solver limit {max_n}")
    if g.m == 0:
        return ChromaticResult(1, 1, 1, [0] * g.n, False, 0)
    rows = list(g.rows)
    if clique is None:
        clique = max_clique_exact(g, node_limit)
    lower = clique.omega
    alpha = max_clique_exact(complement(g), independence_node_limit)
    if not alpha.truncated:
        lower = max(lower, math.ceil(g.n / alpha.omega))
    greedy = _dsatur_greedy(rows)
    upper = max(greedy) + 1
    best = greedy
    solver = _Colourer(rows, node_limit)
    fixed = clique.clique if clique.omega >= 2 else []
    truncated = False
    try:
        for k in range(lower, upper):
            found = solver.colour(k, fixed)
            if found is not None:
                best, upper = found, k
                break
            lower = k + 1
    except _Truncated:
        truncated = True
    chi = None if truncated and lower < upper else upper
    if chi is not None:
        lower = upper
    return ChromaticResult(chi, lower, upper, best, chi is None, solver.nodes)


def is_triangle_free(g: Graph) -> bool:
    """True iff trace(A^3) = 0, i.e. no edge has a common neighbour."""
    rows = g.rows
    for i in range(g.n):
        later = rows[i] >> (i + 1) << (i + 1)
        for j in _bits(later):
            if rows[i] & rows[j]:
                return False
    return True


def exact_invariants(g: Graph, node_limit: int = DEFAULT_NODE_LIMIT,
                     chi_max_n: int = DEFAULT_CHI_MAX_N, with_chi: bool = True,
                     chi_node_limit: int | None = None) -> OracleResult:
    """Clique number plus, for graphs within ``chi_max_n``, the chromatic number.

    ``chi_node_limit`` caps the colouring search separately (default: ``node_limit``).
    """
    res = max_clique_exact(g, node_limit)
    res.triangle_free = is_triangle_free(g)
    if with_chi and g.n <= chi_max_n and not res.truncated:
        t0 = time.perf_counter()
        col = chromatic_number_exact(g, chi_node_limit or node_limit, chi_max_n, clique=res)
        res.chi = col.chi
        res.chi_truncated = col.truncated
        res.chi_bounds = (col.lower, col.upper)
        res.elapsed += time.perf_counter() - t0
    return res

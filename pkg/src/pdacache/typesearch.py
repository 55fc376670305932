"""Exact search over symbol shapes instead of cells.

A symbol of multiplicity m occupies rows R and, in the column holding it at
row r, that column's empty set P_r must contain R - {r} and miss r.  Call
(R, (P_r)) the symbol's *shape*.  Conditions 3 and 4 for one symbol depend
only on its shape, and different symbols never interact.  So a PDA(F,K,Z) is
exactly a multiset of shapes whose coverage of each cell type (r, P), r not
in P, is the same for every r outside P; that common value is the number of
columns with empty set P.

Columns of equal type are interchangeable here, which makes this engine
strong when K is large compared with C(F,Z).
"""

from __future__ import annotations

from dataclasses import dataclass
import time
from functools import lru_cache
from itertools import combinations, permutations, product
from typing import Optional

from .core import EMPTY, PdaGrid


@dataclass(frozen=True)
class ShapeSpace:
    F: int
    Z: int
    col_types: tuple[frozenset[int], ...]     # empty sets, index = type id
    cell_types: tuple[tuple[int, int], ...]   # (row, col type)
    shapes: tuple[tuple[int, ...], ...]       # cell-type ids, sorted by multiplicity desc
    mult: tuple[int, ...]


@lru_cache(maxsize=64)
def shape_space(F: int, Z: int, maxmult: int) -> ShapeSpace:
    rows = range(F)
    col_types = tuple(frozenset(c) for c in combinations(rows, Z))
    tid = {p: i for i, p in enumerate(col_types)}
    cell_types = tuple((r, i) for i, p in enumerate(col_types) for r in rows if r not in p)
    cid = {ct: i for i, ct in enumerate(cell_types)}
    shapes, mult = [], []
    for m in range(min(maxmult, Z + 1, F), 0, -1):
        for R in combinations(rows, m):
            outside = [r for r in rows if r not in R]
            per_row = []
            for r in R:
                base = set(R) - {r}
                opts = [cid[(r, tid[frozenset(base | set(X))])] for X in combinations(outside, Z - m + 1)]
                per_row.append(opts)
            for choice in product(*per_row):
                shapes.append(tuple(choice))
                mult.append(m)
    return ShapeSpace(F, Z, col_types, cell_types, tuple(shapes), tuple(mult))


class _Stop(Exception):
    pass


def exists_by_shapes(F: int, K: int, Z: int, s: int, maxmult: int, node_limit: int,
                     deadline: float = float("inf")):
    """Return (status, witness, nodes) with status in found / none / timeout."""
    sp = shape_space(F, Z, maxmult)
    n_cells = K * (F - Z)
    ncell = len(sp.cell_types)
    # cell types grouped by column type
    groups: list[list[int]] = [[] for _ in sp.col_types]
    for i, (r, t) in enumerate(sp.cell_types):
        groups[t].append(i)
    cov = [0] * ncell
    chosen: list[int] = []
    nodes = 0
    top = sp.mult[0] if sp.mult else 0
    # Rows are interchangeable, so the multiset of top-multiplicity row sets
    # only needs to be tried in one orientation.  Full orbit check is cheap
    # for small F; beyond that we skip it.
    perms = list(permutations(range(F))) if F <= 7 else None
    rowsets = [frozenset(sp.cell_types[c][0] for c in sh) for sh in sp.shapes]

    def canonical_top() -> bool:
        tops = [rowsets[i] for i in chosen if sp.mult[i] == top]
        if perms is None or not tops:
            return True
        key = sorted(tuple(sorted(r)) for r in tops)
        for p in perms:
            if sorted(tuple(sorted(p[x] for x in r)) for r in tops) < key:
                return False
        return True

    def deficit() -> int:
        d = 0
        for g in groups:
            top = max(cov[i] for i in g)
            d += sum(top - cov[i] for i in g)
        return d

    def rec(start: int, placed: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > node_limit or (nodes & 1023 == 0 and time.monotonic() > deadline):
            raise _Stop
        left = n_cells - placed
        if left == 0:
            return deficit() == 0 and (sp.mult[chosen[-1]] < top or canonical_top())
        slots = s - len(chosen)
        if slots <= 0:
            return False
        if deficit() > left:
            return False
        for i in range(start, len(sp.shapes)):
            m = sp.mult[i]
            if slots * m < left:
                return False  # shapes are sorted by multiplicity, it only gets worse
            if m > left:
                continue
            if m < top and (not chosen or sp.mult[chosen[-1]] == top) and not canonical_top():
                return False
            sh = sp.shapes[i]
            for c in sh:
                cov[c] += 1
            chosen.append(i)
            if rec(i, placed + m):
                return True
            chosen.pop()
            for c in sh:
                cov[c] -= 1
        return False

    try:
        ok = rec(0, 0)
    except _Stop:
        return "timeout", None, nodes
    if not ok:
        return "none", None, nodes
    return "found", _assemble(sp, K, [sp.shapes[i] for i in chosen]), nodes


def _assemble(sp: ShapeSpace, K: int, shapes: list[tuple[int, ...]]) -> PdaGrid:
    count = [0] * len(sp.col_types)
    for sh in shapes:
        for c in sh:
            r, t = sp.cell_types[c]
            if r == min(x for x in range(sp.F) if x not in sp.col_types[t]):
                count[t] += 1
    cols = [t for t, n in enumerate(count) for _ in range(n)]
    assert len(cols) == K
    first = {}
    for k, t in enumerate(cols):
        first.setdefault(t, k)
    nxt: dict[tuple[int, int], int] = {}
    cells: list[list[Optional[int]]] = [[EMPTY] * K for _ in range(sp.F)]
    for sym, sh in enumerate(shapes, start=1):
        for c in sh:
            r, t = sp.cell_types[c]
            j = nxt.get((r, t), 0)
            nxt[(r, t)] = j + 1
            cells[r][first[t] + j] = sym
    return PdaGrid(tuple(tuple(row) for row in cells))


def _pattern_key(F: int, masks: tuple[int, ...]) -> bytes:
    import pynauty

    K = len(masks)
    adj = {r: [F + k for k in range(K) if masks[k] >> r & 1] for r in range(F)}
    g = pynauty.Graph(F + K, directed=False, adjacency_dict=adj,
                      vertex_coloring=[set(range(F)), set(range(F, F + K))])
    return pynauty.certificate(g)


def _clique_cap(nbrs: list[int], cand: int, cap: int) -> int:
    """Size of the largest clique inside ``cand``, stopping once ``cap`` is reached."""
    if cap <= 0 or not cand:
        return 0
    best = 0
    while cand:
        low = cand & -cand
        u = low.bit_length() - 1
        cand &= ~low
        best = max(best, 1 + _clique_cap(nbrs, cand & nbrs[u], cap - 1))
        if best >= cap:
            break
    return best


def _cover_lb(dem: list[int], nbrs: list[int], maxmult: int) -> float:
    """Fractional clique-cover bound: a clique through v has at most w_v members,
    w_v being the largest live clique through v."""
    live = 0
    for v, d in enumerate(dem):
        if d:
            live |= 1 << v
    tot = 0.0
    for v, d in enumerate(dem):
        if d:
            tot += d / (1 + _clique_cap(nbrs, nbrs[v] & live, maxmult - 1))
    return tot


class _Cover:
    """Exact cover of cell types with given demands by compatible cliques."""

    def __init__(self, F: int, masks: tuple[int, ...], maxmult: int):
        types: dict[int, int] = {}
        for m in masks:
            types[m] = types.get(m, 0) + 1
        self.cells = [(r, m) for m in sorted(types) for r in range(F) if not m >> r & 1]
        self.dem0 = [types[m] for _, m in self.cells]
        n = len(self.cells)
        self.nbrs = [0] * n
        for i, (r, m) in enumerate(self.cells):
            for j, (r2, m2) in enumerate(self.cells):
                if r != r2 and m2 >> r & 1 and m >> r2 & 1:
                    self.nbrs[i] |= 1 << j
        self.maxmult = maxmult

    def cliques_through(self, v: int, live: int):
        """Cliques containing v inside ``live``, size <= maxmult, as bitmasks."""
        out = []

        def grow(cl: int, cand: int, size: int):
            out.append(cl)
            if size == self.maxmult:
                return
            while cand:
                low = cand & -cand
                u = low.bit_length() - 1
                cand &= ~low
                grow(cl | low, cand & self.nbrs[u], size + 1)

        grow(1 << v, self.nbrs[v] & live, 1)
        return out

    def solve(self, s: int, node_limit: int, deadline: float = float("inf")):
        dem = list(self.dem0)
        picks: list[int] = []
        nodes = 0
        n = len(dem)

        def rec() -> bool:
            nonlocal nodes
            nodes += 1
            if nodes > node_limit or (nodes & 1023 == 0 and time.monotonic() > deadline):
                raise _Stop
            live = 0
            for i, d in enumerate(dem):
                if d:
                    live |= 1 << i
            if not live:
                return True
            if len(picks) + _cover_lb(dem, self.nbrs, self.maxmult) > s + 1e-9:
                return False
            # most constrained cell type: fewest cliques per unit of demand
            best = None
            for v in range(n):
                if dem[v]:
                    cls = self.cliques_through(v, live)
                    if best is None or len(cls) < len(best[1]):
                        best = (v, cls)
            v, cls = best
            cls.sort(key=lambda c: (-bin(c).count("1"), c))
            return take(v, cls, 0, dem[v])

        def take(v: int, cls: list[int], start: int, need: int) -> bool:
            # all of v's demand is covered here, as a multiset of cliques
            if need == 0:
                return rec()
            if len(picks) + need > s:
                return False
            for idx in range(start, len(cls)):
                c = cls[idx]
                members = [i for i in range(n) if c >> i & 1]
                if any(dem[i] == 0 for i in members):
                    continue
                for i in members:
                    dem[i] -= 1
                picks.append(c)
                if take(v, cls, idx, need - 1):
                    return True
                picks.pop()
                for i in members:
                    dem[i] += 1
            return False

        ok = rec()
        return ok, list(picks), nodes

    def assemble(self, F: int, masks: tuple[int, ...], picks: list[int]) -> PdaGrid:
        K = len(masks)
        slots: dict[tuple[int, int], list[int]] = {}
        for k, m in enumerate(masks):
            for r in range(F):
                if not m >> r & 1:
                    slots.setdefault((r, m), []).append(k)
        cells: list[list[Optional[int]]] = [[EMPTY] * K for _ in range(F)]
        for sym, c in enumerate(picks, start=1):
            for i, (r, m) in enumerate(self.cells):
                if c >> i & 1:
                    cells[r][slots[(r, m)].pop(0)] = sym
        return PdaGrid(tuple(tuple(row) for row in cells))


def canonical_patterns(F: int, K: int, Z: int, keep=None, limit: int | None = None):
    """Column empty-set patterns up to row and column permutation.

    Built one column at a time; ``keep(masks)`` may reject a prefix, which is
    sound whenever every column subset of a valid pattern passes it.  Each
    candidate prefix counts against ``limit``; returns (patterns, candidates).
    """
    types = [sum(1 << r for r in c) for c in combinations(range(F), Z)]
    level = [(types[0],)]
    work = 1
    for _ in range(1, K):
        seen: dict[bytes, tuple[int, ...]] = {}
        for pat in level:
            for t in types:
                work += 1
                if limit is not None and work > limit:
                    raise _Stop
                nxt = tuple(sorted(pat + (t,)))
                key = _pattern_key(F, nxt)
                if key not in seen and (keep is None or keep(nxt)):
                    seen[key] = nxt
        level = [seen[k] for k in sorted(seen)]
    return level, work


def exists_by_patterns(F: int, K: int, Z: int, s: int, maxmult: int, node_limit: int,
                       deadline: float = float("inf")):
    """Return (status, witness, nodes) with status in found / none / timeout."""
    def keep(masks):
        if time.monotonic() > deadline:
            raise _Stop
        cov = _Cover(F, masks, maxmult)
        return _cover_lb(cov.dem0, cov.nbrs, maxmult) <= s + 1e-9

    try:
        pats, nodes = canonical_patterns(F, K, Z, keep, node_limit)
    except _Stop:
        return "timeout", None, node_limit
    for masks in pats:
        cov = _Cover(F, masks, maxmult)
        try:
            ok, picks, n = cov.solve(s, node_limit - nodes, deadline)
        except _Stop:
            return "timeout", None, node_limit
        nodes += n
        if ok:
            return "found", cov.assemble(F, masks, picks), nodes
    return "none", None, nodes

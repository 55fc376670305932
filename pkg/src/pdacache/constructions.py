"""Explicit PDA constructions and the (F,K,Z) recipe dispatcher."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Callable, Optional

from . import bounds
from .catalog import CATALOG, fixed_catalog
from .core import EMPTY, Cell, PdaGrid, PdaParams, ceil_div, verify

Rows = tuple[tuple[Cell, ...], ...]


@dataclass(frozen=True)
class ConstructionProvenance:
    name: str
    params: PdaParams
    claimed_s: int
    optimality: str  # exact-proven | lower-bound-matched | none
    anchor: str


def _require_valid(grid: PdaGrid) -> None:
    rep = verify(grid)
    if not rep.valid:
        raise ValueError("input is not a valid PDA:\n" + rep.render())


# ---------------------------------------------------------------------------
# small closed-form families


def simple_family(F: int, K: int, Z: int, case: int | None = None) -> PdaGrid:
    """The four trivial families: Z=0, Z=F, Z=F-1 and Z=F-t with F >= tK."""
    t = F - Z
    if case is None:
        case = 2 if Z == F else 1 if Z == 0 else 3 if Z == F - 1 else 4
    if case == 1:
        if Z != 0:
            raise ValueError("case 1 needs Z = 0")
        return PdaGrid(tuple(tuple(j * K + k + 1 for k in range(K)) for j in range(F)))
    if case == 2:
        if Z != F:
            raise ValueError("case 2 needs Z = F")
        return PdaGrid.empty(F, K)
    if case == 3:
        if Z != F - 1 or F < 1:
            raise ValueError("case 3 needs Z = F - 1")
        # one diagonal per F-column block
        return PdaGrid(tuple(
            tuple(k // F + 1 if k % F == j else EMPTY for k in range(K)) for j in range(F)
        ))
    if case == 4:
        if not (0 < t and F >= t * K):
            raise ValueError(f"case 4 needs F >= (F-Z)K, got F={F}, K={K}, Z={Z}")
        return PdaGrid(tuple(
            tuple(j - k * t + 1 if k * t <= j < (k + 1) * t else EMPTY for k in range(K)) for j in range(F)
        ))
    raise ValueError(f"unknown case {case}")


def k2(F: int, Z: int) -> PdaGrid:
    """Optimal PDA(F,2,Z): s = 2F-3Z if F >= 2Z else F-Z."""
    if not 0 <= Z <= F or F < 1:
        raise ValueError(f"need 0 <= Z <= F, got F={F}, Z={Z}")
    u = F - Z
    col1 = [j + 1 if j < u else EMPTY for j in range(F)]
    col2: list[Cell] = [EMPTY] * F
    if F >= 2 * Z:
        # rows 0..Z-1 empty; bottom Z rows reuse symbols 1..Z; middle rows fresh
        nxt = u + 1
        for j in range(Z, u):
            col2[j] = nxt
            nxt += 1
        for i in range(Z):
            col2[u + i] = i + 1
    else:
        for i in range(u):
            col2[u + i] = i + 1
    return PdaGrid(tuple((a, b) for a, b in zip(col1, col2)))


# ---------------------------------------------------------------------------
# recursive RPDA(F, C(F,Z), Z)


@lru_cache(maxsize=None)
def _rpda_rows(k: int, Z: int) -> Rows:
    if Z == 0:
        # k x 1 column, symbol 1 at the bottom
        return tuple((k - j,) for j in range(k))
    if k == Z + 1:
        return tuple(tuple(1 if j + c == Z else EMPTY for c in range(k)) for j in range(k))
    inner = _rpda_rows(k - 1, Z - 1)   # symbols shifted past those of `rest`
    rest = _rpda_rows(k - 1, Z)        # symbols 1..C(k-1, Z+1)
    offset = comb(k - 1, Z + 1)
    n_inner = comb(k - 1, Z)           # symbols in `inner` == columns of `rest`
    top = (EMPTY,) * comb(k - 1, Z - 1) + tuple(range(offset + n_inner, offset, -1))
    body = tuple(
        tuple(EMPTY if c is EMPTY else c + offset for c in a) + b for a, b in zip(inner, rest)
    )
    return (top,) + body


def rpda_recursive(F: int, Z: int) -> PdaGrid:
    """RPDA(F, C(F,Z), Z) built row-by-row on top of RPDA(F-1,.,Z-1) | RPDA(F-1,.,Z).

    Column empty sets run through the Z-subsets in TB order and symbol t sits
    in the rows of the t-th (Z+1)-subset in BT order.
    """
    if not (Z >= 1 and F >= Z + 1):
        raise ValueError(f"need F >= Z + 1 >= 2, got F={F}, Z={Z}")
    return PdaGrid(_rpda_rows(F, Z))


def z1_square(F: int) -> PdaGrid:
    if F < 2:
        raise ValueError("z1_square needs F >= 2")
    return rpda_recursive(F, 1)


def concat(*grids: PdaGrid) -> PdaGrid:
    """Side-by-side concatenation on disjoint symbol sets."""
    F = grids[0].F
    if any(g.F != F for g in grids):
        raise ValueError("all blocks need the same number of rows")
    rows = [[] for _ in range(F)]
    offset = 0
    for g in grids:
        g = g.compact()
        for j in range(F):
            rows[j].extend(EMPTY if c is EMPTY else c + offset for c in g.cells[j])
        offset += g.s
    return PdaGrid(tuple(tuple(r) for r in rows))


def stack(*grids: PdaGrid) -> PdaGrid:
    """Vertical stacking on disjoint symbol sets (columns keep their order)."""
    return concat(*(g.transpose() for g in grids)).transpose()


def concat_copies(grid: PdaGrid, ell: int) -> PdaGrid:
    _require_valid(grid)
    if ell < 1:
        raise ValueError("ell must be >= 1")
    return concat(*([grid] * ell))


def select_columns(grid: PdaGrid, cols: list[int]) -> PdaGrid:
    return PdaGrid(tuple(tuple(row[k] for k in cols) for row in grid.cells)).compact()


def drop_columns(grid: PdaGrid, x: int) -> PdaGrid:
    """Delete the last x columns; symbols that vanish are renumbered away."""
    _require_valid(grid)
    if not 0 <= x < grid.K:
        raise ValueError(f"need 0 <= x < K={grid.K}, got {x}")
    return select_columns(grid, list(range(grid.K - x)))


def z1_general(F: int, K: int) -> PdaGrid:
    """Optimal PDA(F,K,1): ell copies of RPDA(F,F,1) plus an (F,i,1) tail."""
    if F < 2 or K < 1:
        raise ValueError("z1_general needs F >= 2, K >= 1")
    ell, i = divmod(K, F)
    blocks = [z1_square(F)] * ell
    if i:
        head = z1_square(i) if i >= 2 else PdaGrid.empty(1, 1)
        fresh = PdaGrid(tuple(tuple(j * i + k + 1 for k in range(i)) for j in range(F - i)))
        blocks.append(stack(head, fresh))
    return concat(*blocks)


def transpose_rpda(grid: PdaGrid) -> PdaGrid:
    """Transpose a row-regular RPDA, giving PDA(C(F,Z), F, C(F-1,Z-1))."""
    _require_valid(grid)
    counts = set(grid.row_empty_counts())
    if len(counts) != 1:
        raise ValueError(f"rows have unequal empty counts {sorted(counts)}")
    return grid.transpose()


def blow_up(grid: PdaGrid, t: int) -> PdaGrid:
    """Replace each cell by a t x t block: symbols on the block diagonal."""
    _require_valid(grid)
    if t < 1:
        raise ValueError("t must be >= 1")
    rows = []
    for row in grid.cells:
        for a in range(t):
            rows.append(tuple(c if (c is not EMPTY and a == b) else EMPTY for c in row for b in range(t)))
    return PdaGrid(tuple(rows))


def ff2_recursive(F: int) -> PdaGrid:
    """Optimal PDA(F,F,2) with empty main diagonal.

    A tripled symbol on the top-left 3x3, 3(F-3) fresh symbols below it (A),
    their transpose to its right, and a smaller instance in the corner.
    """
    if F < 3:
        raise ValueError("ff2_recursive needs F >= 3")
    if F <= 5:
        return fixed_catalog(f"fig-FF2s-F{F}")
    corner = ff2_recursive(F - 3)
    n = F - 3
    cells: list[list[Cell]] = [[EMPTY] * F for _ in range(F)]
    top = fixed_catalog("fig-FF2s-F3")
    for j in range(3):
        for k in range(3):
            cells[j][k] = top.cells[j][k]
    nxt = 2
    for j in range(n):
        for k in range(3):
            cells[3 + j][k] = nxt
            cells[k][3 + j] = nxt
            nxt += 1
    off = nxt - 1
    for j in range(n):
        for k in range(n):
            c = corner.cells[j][k]
            cells[3 + j][3 + k] = EMPTY if c is EMPTY else c + off
    return PdaGrid(tuple(tuple(r) for r in cells))


def uncoded(F: int, K: int, Z: int) -> PdaGrid:
    """Every broadcast packet uncoded: s = K(F-Z). Always a PDA."""
    if not 0 <= Z <= F:
        raise ValueError("need 0 <= Z <= F")
    u = F - Z
    return PdaGrid(tuple(tuple(k * u + j + 1 if j < u else EMPTY for k in range(K)) for j in range(F)))


def without_symbol_columns(grid: PdaGrid, symbol: int) -> PdaGrid:
    """Delete every column that contains `symbol`."""
    keep = [k for k in range(grid.K) if symbol not in grid.column(k)]
    return select_columns(grid, keep)


# ---------------------------------------------------------------------------
# recipe dispatcher


def _rpda_family(F: int, K: int, Z: int) -> Optional[PdaGrid]:
    dec = bounds.corollary_decomposition(F, K, Z)
    if dec is None or Z == 0:
        return None
    ell, x = dec
    g = concat_copies(rpda_recursive(F, Z), ell)
    return drop_columns(g, x) if x else g


def _small_tail(F: int, i: int, Z: int) -> PdaGrid:
    """Best available PDA(F,i,Z) for a tail block (i small)."""
    if i == 0:
        raise ValueError("empty tail")
    hit = family_builder(F, i, Z)
    if hit is None:
        raise LookupError(f"no tail construction for ({F},{i},{Z})")
    return hit[0]


def _recipe_s4k2(F: int, K: int, Z: int) -> Optional[PdaGrid]:
    if (F, Z) != (4, 2) or K < 3:
        return None
    ell, i = divmod(K, 6)
    if i == 5:
        return drop_columns(concat_copies(rpda_recursive(4, 2), ell + 1), 1)
    blocks = [rpda_recursive(4, 2)] * ell
    if i:
        blocks.append(fixed_catalog(f"fig-small-K{i}") if i >= 2 else simple_family(4, 1, 2))
    return concat(*blocks)


def _tail_5k3(i: int) -> PdaGrid:
    if i <= 2:
        return simple_family(5, i, 3, 4) if i == 1 else fixed_catalog("fig-small5-3-K2")
    if i in (3, 4, 6):
        return fixed_catalog(f"fig-small5-3-K{i}")
    if i == 5:
        return fixed_catalog("e.553-5")
    return select_columns(rpda_recursive(5, 3), list(range(i)))


def _recipe_s5k3(F: int, K: int, Z: int) -> Optional[PdaGrid]:
    if (F, Z) != (5, 3):
        return None
    ell, i = divmod(K, 10)
    if i == 9:
        return drop_columns(concat_copies(rpda_recursive(5, 3), ell + 1), 1)
    blocks = [rpda_recursive(5, 3)] * ell
    if i:
        blocks.append(_tail_5k3(i))
    return concat(*blocks)


def pda_572() -> PdaGrid:
    """PDA(5,7,2) with s = 9: RPDA(5,10,2) minus the three columns of one symbol."""
    return without_symbol_columns(rpda_recursive(5, 2), 1)


def pda_743() -> PdaGrid:
    """PDA(7,4,3) with s = 7, one fewer symbol than the stated value.

    Found by exact search; symbols 1 and 2 appear three times, the rest twice.
    """
    return PdaGrid.from_text("""
        1 5 - -
        2 - 6 -
        3 - 7 5
        4 7 - 6
        - 2 1 -
        - 3 - 1
        - - 4 2
    """)


def _tail_5k2(i: int) -> PdaGrid:
    if i == 1:
        return simple_family(5, 1, 2, 4)
    if i == 2:
        return k2(5, 2)
    if i in (3, 4, 6):
        return fixed_catalog(f"fig-5K2-K{i}")
    if i == 5:
        return fixed_catalog("fig-FF2s-F5")
    if i == 7:
        return pda_572()
    return select_columns(rpda_recursive(5, 2), list(range(i)))


def _recipe_s5k2(F: int, K: int, Z: int) -> Optional[PdaGrid]:
    if (F, Z) != (5, 2):
        return None
    ell, i = divmod(K, 10)
    if i == 9:
        return drop_columns(concat_copies(rpda_recursive(5, 2), ell + 1), 1)
    blocks = [rpda_recursive(5, 2)] * ell
    if i:
        blocks.append(_tail_5k2(i))
    return concat(*blocks)


def _recipe_f4k3(F: int, K: int, Z: int) -> Optional[PdaGrid]:
    if (K, Z) != (4, 3) or F < 5:
        return None
    if F == 5:
        return fixed_catalog("fig-largeF-F5")
    if F == 7:
        return pda_743()
    if F <= 9:
        return fixed_catalog(f"fig-largeF-F{F}")
    if F <= 12:
        return fixed_catalog(f"fig-largeF2-F{F}")
    fresh = PdaGrid(tuple(tuple(j * 4 + k + 1 for k in range(4)) for j in range(F - 12)))
    return stack(fixed_catalog("fig-largeF2-F12"), fresh)


def _recipe_largeF(F: int, K: int, Z: int) -> Optional[PdaGrid]:
    t = bounds.largeF_index(F, K, Z)
    return None if t is None else transpose_rpda(rpda_recursive(K, t))


def _recipe_3t(F: int, K: int, Z: int) -> Optional[PdaGrid]:
    if F == K and F % 3 == 0 and Z == F - 2 and F >= 3:
        return blow_up(rpda_recursive(3, 1), F // 3)
    return None


def _recipe_4t(F: int, K: int, Z: int) -> Optional[PdaGrid]:
    if F == K and F % 4 == 0 and Z == F - 3 and F >= 4:
        return blow_up(fixed_catalog("remark-441"), F // 4)
    return None


def _recipe_ff2(F: int, K: int, Z: int) -> Optional[PdaGrid]:
    return ff2_recursive(F) if F == K and Z == 2 and F >= 3 else None


def _recipe_blowup(F: int, K: int, Z: int) -> Optional[PdaGrid]:
    src = bounds.blowup_source(F, K, Z)
    if src is None:
        return None
    base = family_builder(*src)
    return None if base is None else blow_up(base[0], 2)


def _recipe_catalog(F: int, K: int, Z: int) -> Optional[PdaGrid]:
    for e in CATALOG.values():
        if (e.params.F, e.params.K, e.params.Z) == (F, K, Z):
            return e.grid
    return None


Recipe = Callable[[int, int, int], Optional[PdaGrid]]

RECIPES: list[tuple[str, Recipe, str]] = [
    ("simple", lambda F, K, Z: simple_family(F, K, Z) if (Z in (0, F, F - 1) or F >= (F - Z) * K) else None,
     "simple"),
    ("k2", lambda F, K, Z: k2(F, Z) if K == 2 else None, "formula:K=2"),
    ("z1", lambda F, K, Z: z1_general(F, K) if Z == 1 and F >= 2 else None, "formula:Z=1"),
    ("rpda", _rpda_family, "rpda-copies"),
    ("largeF", _recipe_largeF, "transposed-rpda"),
    ("s4k2", _recipe_s4k2, "formula:s(4,K,2)"),
    ("s5k3", _recipe_s5k3, "formula:s(5,K,3)"),
    ("s5k2", _recipe_s5k2, "formula:s(5,K,2)"),
    ("f4k3", _recipe_f4k3, "formula:s(F,4,3)"),
    ("3t", _recipe_3t, "formula:s(3t,3t,3t-2)"),
    ("4t", _recipe_4t, "blow-up of PDA(4,4,1)"),
    ("ff2", _recipe_ff2, "recursion:s(F,F,2)"),
    ("blowup", _recipe_blowup, "blow-up:2x"),
    ("catalog", _recipe_catalog, "catalog"),
]


def optimality_of(grid: PdaGrid) -> str:
    F, K, Z, s = grid.F, grid.K, grid.Z, grid.s
    kv = bounds.best_known_s(F, K, Z)
    if kv is not None and kv.exact and kv.lo == s:
        return "exact-proven"
    if Z < F and s == bounds.proven_lower_bound(F, K, Z).value:
        return "lower-bound-matched"
    return "none"


_OPT_RANK = {"exact-proven": 0, "lower-bound-matched": 1, "none": 2}


def candidates(F: int, K: int, Z: int) -> list[tuple[PdaGrid, ConstructionProvenance]]:
    out = []
    for name, recipe, anchor in RECIPES:
        g = recipe(F, K, Z)
        if g is None:
            continue
        g = g.compact()
        out.append((g, ConstructionProvenance(name, g.params, g.s, optimality_of(g), anchor)))
    return out


@lru_cache(maxsize=4096)
def family_builder(F: int, K: int, Z: int) -> Optional[tuple[PdaGrid, ConstructionProvenance]]:
    """Best construction for (F,K,Z): exact-proven first, then fewest symbols,
    then recipe order. None if no recipe applies."""
    if F < 1 or K < 1 or not 0 <= Z <= F:
        raise ValueError(f"bad parameters F={F} K={K} Z={Z}")
    cands = candidates(F, K, Z)
    if not cands:
        return None
    order = {name: i for i, (name, _, _) in enumerate(RECIPES)}
    return min(cands, key=lambda gp: (_OPT_RANK[gp[1].optimality], gp[1].claimed_s, order[gp[1].name]))


def named_method(name: str, F: int, K: int, Z: int) -> PdaGrid:
    """Construct by method name (``fixed:<catalog id>`` for catalog arrays)."""
    if name.startswith("fixed:"):
        g = fixed_catalog(name[len("fixed:"):])
        if (g.F, g.K, g.Z) != (F, K, Z):
            raise ValueError(f"catalog array {name} is a PDA({g.F},{g.K},{g.Z}), not ({F},{K},{Z})")
        return g
    if name == "uncoded":
        return uncoded(F, K, Z)
    if name == "ff2":
        if F != K or Z != 2:
            raise ValueError("ff2 needs F = K and Z = 2")
        return ff2_recursive(F)
    if name == "rpda":
        if K != comb(F, Z):
            raise ValueError(f"rpda needs K = C(F,Z) = {comb(F, Z)}")
        return rpda_recursive(F, Z)
    for rname, recipe, _ in RECIPES:
        if rname == name:
            g = recipe(F, K, Z)
            if g is None:
                raise ValueError(f"method {name} does not apply to ({F},{K},{Z})")
            return g
    raise ValueError(f"unknown method {name!r}")


__all__ = [
    "ConstructionProvenance", "simple_family", "k2", "rpda_recursive", "z1_square", "z1_general",
    "concat", "stack", "concat_copies", "drop_columns", "select_columns", "transpose_rpda", "blow_up",
    "ff2_recursive", "uncoded", "pda_572", "pda_743", "family_builder", "candidates", "named_method", "ceil_div",
]

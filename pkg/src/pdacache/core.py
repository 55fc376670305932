"""PDA data model, verification, canonical forms and the text file format.

A cell is either ``EMPTY`` (``None``) or a positive integer symbol id.
Coordinates in reports are 1-based ``(row, col)``; tuple indexing into
``PdaGrid.cells`` is 0-based.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Optional, Sequence

EMPTY = None

Cell = Optional[int]


class ParseError(ValueError):
    """Malformed PDA text; carries the 1-based line and column."""

    def __init__(self, message: str, line: int, column: int = 0):
        self.line = line
        self.column = column
        where = f"line {line}" + (f", column {column}" if column else "")
        super().__init__(f"{where}: {message}")


@dataclass(frozen=True)
class PdaGrid:
    cells: tuple[tuple[Cell, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.cells)
        if not rows or not rows[0]:
            raise ValueError("a PDA grid needs at least one row and one column")
        width = len(rows[0])
        for j, row in enumerate(rows):
            if len(row) != width:
                raise ValueError(f"row {j + 1} has {len(row)} cells, expected {width}")
        object.__setattr__(self, "cells", rows)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[Cell]]) -> "PdaGrid":
        """Build from nested iterables; ``0`` and ``None`` both mean empty."""
        return cls(tuple(tuple(EMPTY if (c is None or c == 0) else c for c in r) for r in rows))

    @classmethod
    def from_text(cls, text: str) -> "PdaGrid":
        """Whitespace-separated rows using ``-`` or ``.`` for empty cells."""
        rows = []
        for line in text.strip().splitlines():
            toks = line.split()
            if toks:
                rows.append([EMPTY if t in ("-", ".") else int(t) for t in toks])
        return cls.from_rows(rows)

    @classmethod
    def empty(cls, F: int, K: int) -> "PdaGrid":
        return cls(tuple((EMPTY,) * K for _ in range(F)))

    @property
    def F(self) -> int:
        return len(self.cells)

    @property
    def K(self) -> int:
        return len(self.cells[0])

    @property
    def symbols(self) -> frozenset[int]:
        return frozenset(c for row in self.cells for c in row if c is not EMPTY)

    @property
    def s(self) -> int:
        return len(self.symbols)

    def column(self, k: int) -> tuple[Cell, ...]:
        return tuple(row[k] for row in self.cells)

    def column_empty_counts(self) -> list[int]:
        return [sum(1 for row in self.cells if row[k] is EMPTY) for k in range(self.K)]

    def row_empty_counts(self) -> list[int]:
        return [sum(1 for c in row if c is EMPTY) for row in self.cells]

    @property
    def Z(self) -> int:
        """Empty cells in column 1 (equal in every column of a valid PDA)."""
        return self.column_empty_counts()[0]

    def transpose(self) -> "PdaGrid":
        return PdaGrid(tuple(zip(*self.cells)))

    def relabel(self, mapping: dict[int, int]) -> "PdaGrid":
        return PdaGrid(tuple(tuple(EMPTY if c is EMPTY else mapping[c] for c in row) for row in self.cells))

    def is_dense(self) -> bool:
        return self.symbols == frozenset(range(1, self.s + 1))

    def compact(self) -> "PdaGrid":
        """Renumber symbols to 1..s keeping their relative order."""
        if self.is_dense():
            return self
        return self.relabel({t: i for i, t in enumerate(sorted(self.symbols), 1)})

    def occurrences(self) -> dict[int, list[tuple[int, int]]]:
        """Symbol -> list of 0-based (row, col) cells, row-major."""
        occ: dict[int, list[tuple[int, int]]] = {}
        for j, row in enumerate(self.cells):
            for k, c in enumerate(row):
                if c is not EMPTY:
                    occ.setdefault(c, []).append((j, k))
        return occ

    @property
    def params(self) -> "PdaParams":
        return PdaParams(self.F, self.K, self.Z, self.s)

    def __str__(self) -> str:
        w = max([len(str(t)) for t in self.symbols] + [1])
        return "\n".join(" ".join(("-" if c is EMPTY else str(c)).rjust(w) for c in row) for row in self.cells)


@dataclass(frozen=True)
class PdaParams:
    F: int
    K: int
    Z: int
    s: int

    def __post_init__(self):
        if self.K < 1 or self.F < 1:
            raise ValueError(f"F and K must be >= 1, got F={self.F}, K={self.K}")
        if not 0 <= self.Z <= self.F:
            raise ValueError(f"need 0 <= Z <= F, got Z={self.Z}, F={self.F}")
        if self.s < 0:
            raise ValueError("s must be >= 0")
        if self.Z < self.F and self.s < self.F - self.Z:
            raise ValueError(f"s={self.s} < F-Z={self.F - self.Z}: a column cannot hold its symbols")


@dataclass(frozen=True)
class Failure:
    condition: int
    cells: tuple[tuple[int, int], ...]
    message: str = ""


@dataclass(frozen=True)
class VerificationReport:
    failures: tuple[Failure, ...]
    F: int
    K: int
    Z: int | tuple[int, ...]
    s: int

    @property
    def valid(self) -> bool:
        return not self.failures

    def failed_conditions(self) -> set[int]:
        return {f.condition for f in self.failures}

    def render(self) -> str:
        z = self.Z if isinstance(self.Z, int) else "{" + ",".join(map(str, self.Z)) + "}"
        lines = [f"{'valid' if self.valid else 'invalid'} F={self.F} K={self.K} Z={z} s={self.s}"]
        for f in self.failures:
            coords = " ".join(f"({r},{c})" for r, c in f.cells)
            lines.append(f"condition {f.condition}: {f.message} {coords}".rstrip())
        return "\n".join(lines)


def verify(grid: PdaGrid, expected: PdaParams | None = None) -> VerificationReport:
    """Check the four PDA conditions, optionally against declared parameters."""
    F, K = len(grid.cells), len(grid.cells[0]) if grid.cells else 0
    if F == 0 or K == 0:
        raise ValueError("grid dimensions must be positive")
    failures: list[Failure] = []

    for j, row in enumerate(grid.cells):
        for k, c in enumerate(row):
            if c is not EMPTY and not (isinstance(c, int) and not isinstance(c, bool) and c >= 1):
                failures.append(Failure(1, ((j + 1, k + 1),), f"bad cell value {c!r}"))
    if failures:
        return VerificationReport(tuple(failures), F, K, 0, 0)

    counts = grid.column_empty_counts()
    target_z = expected.Z if expected is not None else counts[0]
    for k, n in enumerate(counts):
        if n != target_z:
            failures.append(Failure(2, ((0, k + 1),), f"column has {n} empty cells, expected {target_z}"))

    for j, row in enumerate(grid.cells):
        seen: dict[int, int] = {}
        for k, c in enumerate(row):
            if c is EMPTY:
                continue
            if c in seen:
                failures.append(Failure(3, ((j + 1, seen[c] + 1), (j + 1, k + 1)), f"symbol {c} repeated in row"))
            else:
                seen[c] = k
    for k in range(K):
        seen = {}
        for j in range(F):
            c = grid.cells[j][k]
            if c is EMPTY:
                continue
            if c in seen:
                failures.append(Failure(3, ((seen[c] + 1, k + 1), (j + 1, k + 1)), f"symbol {c} repeated in column"))
            else:
                seen[c] = j

    for t, cells in grid.occurrences().items():
        for (j1, k1), (j2, k2) in itertools.combinations(cells, 2):
            if j1 == j2 or k1 == k2:
                continue  # already a condition-3 failure
            bad = [(a, b) for a, b in ((j1, k2), (j2, k1)) if grid.cells[a][b] is not EMPTY]
            if bad:
                failures.append(Failure(
                    4,
                    ((j1 + 1, k1 + 1), (j2 + 1, k2 + 1)) + tuple((a + 1, b + 1) for a, b in bad),
                    f"symbol {t}: crossing cells not empty",
                ))

    distinct = sorted(set(counts))
    z_out: int | tuple[int, ...] = distinct[0] if len(distinct) == 1 else tuple(distinct)
    s = grid.s
    if expected is not None:
        if (expected.F, expected.K) != (F, K):
            failures.append(Failure(2, (), f"dimensions {F}x{K} differ from declared {expected.F}x{expected.K}"))
        if expected.s != s:
            failures.append(Failure(1, (), f"{s} distinct symbols, declared s={expected.s}"))
    return VerificationReport(tuple(failures), F, K, z_out, s)


def is_pda(grid: PdaGrid, expected: PdaParams | None = None) -> bool:
    return verify(grid, expected).valid


# ---------------------------------------------------------------------------
# frequency census


@dataclass(frozen=True)
class FrequencyCensus:
    a: dict[int, int]
    overflow: tuple[int, ...] = ()
    multiplicity: dict[int, int] = field(default_factory=dict, compare=False, repr=False)

    @property
    def s(self) -> int:
        return sum(self.a.values()) + len(self.overflow)

    def total(self) -> int:
        return sum(self.multiplicity.values())


def frequency_census(grid: PdaGrid) -> FrequencyCensus:
    mult = Counter(c for row in grid.cells for c in row if c is not EMPTY)
    z = grid.Z
    hist = Counter(m for m in mult.values() if m <= z + 1)
    overflow = tuple(sorted(t for t, m in mult.items() if m > z + 1))
    return FrequencyCensus(dict(sorted(hist.items())), overflow, dict(mult))


# ---------------------------------------------------------------------------
# canonical forms


def _nauty_order(grid: PdaGrid) -> tuple[list[int], list[int]]:
    """Row and column orders from a canonical labeling of the incidence graph.

    Vertices: rows, columns, symbols, nonempty cells (four colour classes);
    each cell is joined to its row, column and symbol.
    """
    import pynauty

    F, K = grid.F, grid.K
    syms = sorted(grid.symbols)
    sym_v = {t: F + K + i for i, t in enumerate(syms)}
    cells = [(j, k, c) for j, row in enumerate(grid.cells) for k, c in enumerate(row) if c is not EMPTY]
    base = F + K + len(syms)
    adj: dict[int, list[int]] = {}
    for i, (j, k, c) in enumerate(cells):
        adj[base + i] = [j, F + k, sym_v[c]]
    n = base + len(cells)
    coloring = [set(range(F)), set(range(F, F + K)), set(range(F + K, base)), set(range(base, n))]
    g = pynauty.Graph(n, directed=False, adjacency_dict=adj, vertex_coloring=coloring)
    lab = pynauty.canon_label(g)  # lab[i] = original vertex placed at canonical position i
    rows = [v for v in lab if v < F]
    cols = [v - F for v in lab if F <= v < F + K]
    return rows, cols


def _label_regular(cells: list[list[Cell]], u: int) -> dict[int, int]:
    # column-1 symbols take 1..u, everything else by row-major first occurrence
    mapping: dict[int, int] = {}
    for j in range(u):
        mapping.setdefault(cells[j][0], len(mapping) + 1)
    for row in cells:
        for c in row:
            if c is not EMPTY and c not in mapping:
                mapping[c] = len(mapping) + 1
    return mapping


def canonicalize(grid: PdaGrid) -> PdaGrid:
    """Deterministic representative of the grid's class under row, column
    and symbol permutations, in regular form (column 1 = [1..F-Z, -, ..., -]).
    """
    report = verify(grid)
    if not report.valid:
        raise ValueError("canonicalize needs a valid PDA:\n" + report.render())
    F, K = grid.F, grid.K
    if grid.s == 0:
        return PdaGrid.empty(F, K)
    rows, cols = _nauty_order(grid)
    g0 = [[grid.cells[j][k] for k in cols] for j in rows]
    # regular form: rows holding a symbol in column 1 go on top
    top = [r for r in g0 if r[0] is not EMPTY]
    bottom = [r for r in g0 if r[0] is EMPTY]
    cells = top + bottom
    u = len(top)
    mapping = _label_regular(cells, u)
    cells = [[EMPTY if c is EMPTY else mapping[c] for c in r] for r in cells]

    def key(k: int):
        return tuple((0, cells[j][k]) if cells[j][k] is not EMPTY else (1, 0) for j in range(F))

    order = [0] + sorted(range(1, K), key=key)
    cells = [[r[k] for k in order] for r in cells]
    mapping = _label_regular(cells, u)
    return PdaGrid(tuple(tuple(EMPTY if c is EMPTY else mapping[c] for c in r) for r in cells))


def canonical_equal(a: PdaGrid, b: PdaGrid) -> bool:
    return (a.F, a.K) == (b.F, b.K) and canonicalize(a) == canonicalize(b)


def regularize(grid: PdaGrid) -> PdaGrid:
    """Cheap regular form: keep column order, move column-1 empty rows to the
    bottom and number column-1 symbols 1..F-Z. Not canonical."""
    top = [r for r in grid.cells if r[0] is not EMPTY]
    bottom = [r for r in grid.cells if r[0] is EMPTY]
    cells = [list(r) for r in top + bottom]
    mapping = _label_regular(cells, len(top))
    return PdaGrid(tuple(tuple(EMPTY if c is EMPTY else mapping[c] for c in r) for r in cells))


def upper_subarray_ok(grid: PdaGrid) -> bool:
    """In a regular PDA, columns 2..K of the top (F-Z) rows avoid symbols 1..F-Z."""
    u = grid.F - grid.Z
    head = set(range(1, u + 1))
    return all(grid.cells[j][k] not in head for j in range(u) for k in range(1, grid.K))


def permute(grid: PdaGrid, rows: Sequence[int], cols: Sequence[int], symbols: dict[int, int] | None = None) -> PdaGrid:
    cells = tuple(tuple(grid.cells[j][k] for k in cols) for j in rows)
    g = PdaGrid(cells)
    return g.relabel(symbols) if symbols else g


# ---------------------------------------------------------------------------
# combination orders


def combinations_tb(n: int, r: int) -> list[tuple[int, ...]]:
    """r-subsets of {1..n} in top-bottom order: {1..r} first, {n-r+1..n} last."""
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= n, got n={n}, r={r}")
    return list(itertools.combinations(range(1, n + 1), r))


def combinations_bt(n: int, r: int) -> list[tuple[int, ...]]:
    """The same enumeration run on the reversed ground set {n, ..., 1}."""
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= n, got n={n}, r={r}")
    return list(itertools.combinations(range(n, 0, -1), r))


def rank_tb(subset: Iterable[int], n: int) -> int:
    """0-based position of an r-subset of {1..n} in TB order."""
    xs = sorted(subset)
    r = len(xs)
    rank, prev = 0, 0
    for i, x in enumerate(xs):
        for v in range(prev + 1, x):
            rank += comb(n - v, r - i - 1)
        prev = x
    return rank


def unrank_tb(rank: int, n: int, r: int) -> tuple[int, ...]:
    if not 0 <= rank < comb(n, r):
        raise ValueError(f"rank {rank} out of range for C({n},{r})")
    out = []
    v = 1
    for i in range(r):
        while True:
            block = comb(n - v, r - i - 1)
            if rank < block:
                break
            rank -= block
            v += 1
        out.append(v)
        v += 1
    return tuple(out)


# ---------------------------------------------------------------------------
# text format


def write_pda(grid: PdaGrid) -> bytes:
    """Serialise as ``PDA F K Z s`` then F rows of K tokens; ``-`` is empty.

    Gapped symbol ids are compacted (order-preserving) so tokens stay in 1..s.
    """
    g = grid.compact()
    lines = [f"PDA {g.F} {g.K} {g.Z} {g.s}"]
    lines += [" ".join("-" if c is EMPTY else str(c) for c in row) for row in g.cells]
    return ("\n".join(lines) + "\n").encode("ascii")


def parse_pda(data: bytes | str) -> tuple[PdaGrid, PdaParams]:
    """Parse PDA text, returning the grid and the header's declared parameters.

    Lines starting with ``#`` are comments.
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("ascii")
        except UnicodeDecodeError as exc:
            raise ParseError("non-ASCII input", 1) from exc
    lines = [(i + 1, ln) for i, ln in enumerate(data.split("\n")) if not ln.startswith("#")]
    while lines and lines[-1][1] == "":
        lines.pop()
    if not lines:
        raise ParseError("missing header", 1)
    hline, header = lines[0]
    parts = header.split(" ")
    if len(parts) != 5 or parts[0] != "PDA":
        raise ParseError(f"malformed header {header!r}", hline)
    try:
        F, K, Z, s = (int(p) for p in parts[1:])
    except ValueError:
        raise ParseError(f"non-integer header field in {header!r}", hline) from None
    if F < 1 or K < 1 or not 0 <= Z <= F or s < 0:
        raise ParseError(f"header parameters out of range: F={F} K={K} Z={Z} s={s}", hline)
    body = lines[1:]
    if len(body) != F:
        raise ParseError(f"expected {F} rows, found {len(body)}", body[-1][0] if body else hline)
    rows = []
    for lineno, text in body:
        toks = text.split(" ")
        if len(toks) != K:
            raise ParseError(f"row has {len(toks)} tokens, expected {K}", lineno)
        row: list[Cell] = []
        col = 1
        for tok in toks:
            if tok == "-":
                row.append(EMPTY)
            else:
                if not tok.isdigit():
                    raise ParseError(f"bad token {tok!r}", lineno, col)
                v = int(tok)
                if not 1 <= v <= s:
                    raise ParseError(f"symbol {v} outside 1..{s}", lineno, col)
                row.append(v)
            col += len(tok) + 1
        rows.append(tuple(row))
    return PdaGrid(tuple(rows)), _header_params(F, K, Z, s)


def _header_params(F: int, K: int, Z: int, s: int) -> PdaParams:
    try:
        return PdaParams(F, K, Z, s)
    except ValueError:
        # a header with s < F-Z describes no valid PDA but verify() should say so
        p = object.__new__(PdaParams)
        for name, v in zip("FKZs", (F, K, Z, s)):
            object.__setattr__(p, name, v)
        return p


def read_pda(data: bytes | str) -> PdaGrid:
    return parse_pda(data)[0]


def binom(n: int, r: int) -> int:
    return comb(n, r) if 0 <= r <= n else 0


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)

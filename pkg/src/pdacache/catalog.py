"""Hard-coded small arrays: worked examples and base cases of the constructions.

Each entry: id -> (declared F, K, Z, s, anchor, rows). Rows use ``-`` for an
empty cell.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import PdaGrid, PdaParams


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    params: PdaParams
    anchor: str
    text: str

    @property
    def grid(self) -> PdaGrid:
        return PdaGrid.from_text(self.text)


_RAW: list[tuple[str, tuple[int, int, int, int], str, str]] = [
    ("demo", (2, 2, 1, 1), "two-user demo array", """
- 1
1 -
"""),
    ("e.2-3-a", (4, 10, 3, 3), "optimal 3-PDA(4,10,3)", """
1 - - - 2 - - - 3 -
- 1 - - - 2 - - - 3
- - 1 - - - 2 - - -
- - - 1 - - - 2 - -
"""),
    ("e.2-3-b", (8, 4, 6, 2), "optimal 2-PDA(8,4,6)", """
1 - - -
2 - - -
- 1 - -
- 2 - -
- - 1 -
- - 2 -
- - - 1
- - - 2
"""),
    ("e.2", (4, 6, 2, 4), "4-PDA(4,6,2), every symbol three times", """
- - - 4 3 2
- 4 3 - - 1
4 - 2 - 1 -
3 2 - 1 - -
"""),
    ("e.1", (5, 5, 1, 10), "RPDA(5,5,1), one symbol per unordered row pair", """
-  10 9  8  7
10 -  6  5  4
9  6  -  3  2
8  5  3  -  1
7  4  2  1  -
"""),
    ("e.5-10-2", (5, 10, 2, 10), "RPDA(5,10,2) in recursive symbol order", """
-  -  -  -  10 9  8  7  6  5
-  10 9  8  -  -  -  4  3  2
10 -  7  6  -  4  3  -  -  1
9  7  -  5  4  -  2  -  1  -
8  6  5  -  3  2  -  1  -  -
"""),
    ("fig-z3", (6, 20, 3, 15), "RPDA(6,20,3) in recursive symbol order", """
-  -  -  -  -  -  -  -  -  -  15 14 13 12 11 10 9  8  7  6
-  -  -  -  15 14 13 12 11 10 -  -  -  -  -  -  5  4  3  2
-  15 14 13 -  -  -  9  8  7  -  -  -  5  4  3  -  -  -  1
15 -  12 11 -  9  8  -  -  6  -  5  4  -  -  2  -  -  1  -
14 12 -  10 9  -  7  -  6  -  5  -  3  -  2  -  -  1  -  -
13 11 10 -  8  7  -  6  -  -  4  3  -  2  -  -  1  -  -  -
"""),
    ("e.553-5", (5, 5, 3, 4), "PDA(5,5,3) with s=4; cell (5,3) set to 4 so the array verifies", """
1 - 3 - -
2 - - - 3
- 1 - 3 -
- 2 - - 4
- - 4 2 -
"""),
    ("e.553-6", (6, 4, 3, 4), "PDA(6,4,3) with s=4", """
- - 1 4
- 1 - 3
1 - - 2
- 4 3 -
4 - 2 -
3 2 - -
"""),
    ("fig-small-K2", (4, 2, 2, 2), "small-K array PDA(4,2,2)", """
1 -
2 -
- 1
- 2
"""),
    ("fig-small-K3", (4, 3, 2, 3), "small-K array PDA(4,3,2)", """
1 - 3
2 - -
- 3 -
- 1 2
"""),
    ("fig-small-K4", (4, 4, 2, 4), "small-K array PDA(4,4,2)", """
1 - 3 -
2 - 4 -
- 1 - 3
- 2 - 4
"""),
    ("fig-small5-3-K2", (5, 2, 3, 2), "small-K array PDA(5,2,3)", """
1 -
2 -
- 1
- 2
- -
"""),
    ("fig-small5-3-K3", (5, 3, 3, 3), "small-K array PDA(5,3,3); cell (5,3) set to 2 so the array verifies", """
1 - 3
2 - -
- 1 -
- 2 -
- - 2
"""),
    ("fig-small5-3-K4", (5, 4, 3, 3), "small-K array PDA(5,4,3); the 3 of column 3 placed in row 2 so the array verifies", """
1 - - -
2 - 3 -
- 1 - 3
- 2 - -
- - 1 2
"""),
    ("fig-small5-3-K6", (5, 6, 3, 4), "small-K array PDA(5,6,3)", """
1 - - 3 4 -
- 1 - 2 - 4
- - 1 - 2 3
2 3 - - - -
- - 4 - - -
"""),
    ("fig-5K2-K3", (5, 3, 2, 5), "small-K array PDA(5,3,2)", """
1 - 5
2 - 4
3 4 -
- 1 3
- 2 -
"""),
    ("fig-5K2-K4", (5, 4, 2, 6), "small-K array PDA(5,4,2)", """
1 - 4 5
2 4 - 6
3 5 6 -
- 1 - 3
- - 2 -
"""),
    ("fig-5K2-K6", (5, 6, 2, 8), "small-K array PDA(5,6,2)", """
- - 1 3 7 6
1 - - 4 5 8
- 1 - - 2 -
3 4 5 - - 2
6 7 8 2 - -
"""),
    ("fig-5K2-K7", (5, 7, 2, 10), "PDA(5,7,2) with 10 symbols (9 is optimal, see pda_572)", """
-  -  1  2  9  -  5
1  -  -  4  6  3  7
-  1  -  8  -  10 -
2  3  4  -  8  -  10
5  6  7  -  -  9  -
"""),
    ("fig-largeF-F5", (5, 4, 3, 3), "K=4 array PDA(5,4,3)", """
1 - - 2
- 1 - 3
- - 1 -
- 2 - -
3 - 2 -
"""),
    ("fig-largeF-F6", (6, 4, 3, 4), "K=4 array PDA(6,4,3)", """
2 1 - -
3 - 1 -
4 - - 1
- 3 2 -
- 4 - 2
- - 4 3
"""),
    ("fig-largeF-F7", (7, 4, 3, 8), "K=4 array PDA(7,4,3) with 8 symbols (7 is optimal, see pda_743)", """
1 - - 3
- 1 - 2
- - 1 4
2 3 - -
4 - 3 -
- 4 2 -
5 6 7 8
"""),
    ("fig-largeF-F8", (8, 4, 3, 10), "K=4 array PDA(8,4,3)", """
1  -  -  5
-  1  -  6
-  -  1  7
3  2  -  8
4  -  2  9
-  4  3  -
7  5  6  -
10 9  8  -
"""),
    ("fig-largeF-F9", (9, 4, 3, 12), "K=4 array PDA(9,4,3); last row all empty", """
1  2  3  -
-  4  5  1
4  -  6  2
5  6  -  3
7  8  9  -
-  10 11 7
11 12 -  9
10 -  12 8
-  -  -  -
"""),
    ("fig-largeF-F9-as-842", (8, 4, 2, 12), "PDA(9,4,3) minus its empty row, read as PDA(8,4,2)", """
1  2  3  -
-  4  5  1
4  -  6  2
5  6  -  3
7  8  9  -
-  10 11 7
11 12 -  9
10 -  12 8
"""),
    ("fig-largeF2-F10", (10, 4, 3, 14), "K=4 array PDA(10,4,3)", """
1  -  2  4
-  1  3  5
3  2  -  6
5  4  6  -
8  7  -  12
9  -  7  10
-  9  8  11
11 10 12 -
-  14 -  13
14 -  13 -
"""),
    ("fig-largeF2-F11", (11, 4, 3, 17), "K=4 array PDA(11,4,3): PDA(10,4,3) with its bottom two rows replaced", """
1  -  2  4
-  1  3  5
3  2  -  6
5  4  6  -
8  7  -  12
9  -  7  10
-  9  8  11
11 10 12 -
13 14 -  16
15 -  14 17
-  15 13 -
"""),
    ("fig-largeF2-F12", (12, 4, 3, 18), "K=4 array PDA(12,4,3): PDA(10,4,3) with its bottom two rows replaced", """
1  -  2  4
-  1  3  5
3  2  -  6
5  4  6  -
8  7  -  12
9  -  7  10
-  9  8  11
11 10 12 -
13 14 16 -
17 15 -  16
18 -  15 14
-  18 17 13
"""),
    ("ex-331", (3, 3, 1, 3), "optimal PDA(3,3,1)", """
- 3 2
3 - 1
2 1 -
"""),
    ("ex-664", (6, 6, 4, 3), "optimal PDA(6,6,4), blow-up of PDA(3,3,1)", """
- - 3 - 2 -
- - - 3 - 2
3 - - - 1 -
- 3 - - - 1
2 - 1 - - -
- 2 - 1 - -
"""),
    ("remark-441", (4, 4, 1, 6), "6-PDA(4,4,1), base for the 4t blow-ups", """
1 2 4 -
5 3 - 4
6 - 3 2
- 6 5 1
"""),
    ("ex-885", (8, 8, 5, 6), "optimal PDA(8,8,5) built from the PDA(4,4,1)", """
1 - 2 - 4 - - -
- 1 - 2 - 4 - -
5 - 3 - - - 4 -
- 5 - 3 - - - 4
6 - - - 3 - 2 -
- 6 - - - 3 - 2
- - 6 - 5 - 1 -
- - - 6 - 5 - 1
"""),
    ("fig-FF2s-F3", (3, 3, 2, 1), "F=K, Z=2 base PDA(3,3,2)", """
- - 1
1 - -
- 1 -
"""),
    ("fig-FF2s-F4", (4, 4, 2, 4), "F=K, Z=2 base PDA(4,4,2) with empty main diagonal", """
- - 1 2
1 - - 3
- 1 - -
2 3 4 -
"""),
    ("fig-FF2s-F5", (5, 5, 2, 7), "F=K, Z=2 base PDA(5,5,2)", """
- - 1 2 5
1 - - 3 6
- 1 - 4 7
2 3 4 - -
5 6 7 - -
"""),
    ("fig-FK-Z2", (6, 6, 2, 11), "optimal PDA(6,6,2)", """
-  -  1  2  5  8
1  -  -  3  6  9
-  1  -  4  7  10
2  3  4  -  11 -
5  6  7  -  -  11
8  9  10 11 -  -
"""),
    ("fig-FK-Z3", (6, 6, 3, 6), "optimal PDA(6,6,3)", """
1 - - 2 3 -
- 1 - 4 - 3
- - 1 - 4 6
6 - 2 - 5 -
4 2 - - - 5
- 6 3 5 - -
"""),
    ("fig-FK7-Z3", (7, 7, 3, 10), "optimal PDA(7,7,3)", """
1 - - 2 6 7  -
- 1 - 3 5 -  7
- - 1 4 - 5  6
3 2 - - 9 10 -
4 - 2 - 8 -  10
- 4 3 - - 8  9
5 6 7 8 - -  -
"""),
    ("fig-FK7-Z4", (7, 7, 4, 6), "optimal PDA(7,7,4)", """
1 - - - 2 - 4
- 1 - - - 2 6
- - 1 - - 5 3
- - - 1 6 4 -
5 3 2 - - - -
6 4 - 2 - - -
- - 4 3 5 - -
"""),
    ("fig-FK7-Z5", (7, 7, 5, 4), "optimal PDA(7,7,5)", """
1 - - - - - 3
- 1 - - - 3 -
- - 1 - - - 2
- - - 1 - 2 -
- - - - 1 - -
2 - 4 3 - - -
- 2 - - 3 - -
"""),
    ("fig-more", (7, 7, 5, 4), "a second optimal PDA(7,7,5)", """
1 - - - - - 2
- 1 - - - 2 -
- - 1 - 2 - -
- - - 1 3 - -
- - 3 2 - - -
- 3 - - - 4 -
3 - - - - - 4
"""),
]

CATALOG: dict[str, CatalogEntry] = {
    cid: CatalogEntry(cid, PdaParams(*p), anchor, text) for cid, p, anchor, text in _RAW
}


def fixed_catalog(cid: str) -> PdaGrid:
    try:
        return CATALOG[cid].grid
    except KeyError:
        raise KeyError(f"unknown catalog id {cid!r}; known: {', '.join(CATALOG)}") from None


def catalog_for(F: int, K: int, Z: int) -> list[CatalogEntry]:
    return [e for e in CATALOG.values() if (e.params.F, e.params.K, e.params.Z) == (F, K, Z)]

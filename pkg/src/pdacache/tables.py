"""Known-value tables: oracle value, bounds and the best construction per row."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import bounds
from .constructions import family_builder

Params = tuple[int, int, int]

FAMILIES: dict[str, Callable[[], list[Params]]] = {
    "f4k3": lambda: [(F, 4, 3) for F in range(4, 21)],
    "s66": lambda: [(6, 6, Z) for Z in range(1, 6)],
    "s77": lambda: [(7, 7, Z) for Z in range(1, 7)],
    "s4k2": lambda: [(4, K, 2) for K in range(1, 25)],
    "s5k3": lambda: [(5, K, 3) for K in range(1, 21)],
    "s5k2": lambda: [(5, K, 2) for K in range(1, 21)],
    "3t": lambda: [(3 * t, 3 * t, 3 * t - 2) for t in range(1, 6)],
    "ff2": lambda: [(F, F, 2) for F in range(3, 16)],
    "blowup": lambda: [(8, 12, 6), (10, 20, 8), (8, 8, 5), (12, 12, 9)],
}

HEADER = "F\tK\tZ\tknown\tbasic\tnested\tconstruction\tmethod\toptimality\tsource"


@dataclass(frozen=True)
class TableRow:
    F: int
    K: int
    Z: int
    known: str
    basic: int
    nested: int
    built_s: int | None
    method: str
    optimality: str
    source: str

    def tsv(self) -> str:
        built = "-" if self.built_s is None else str(self.built_s)
        return "\t".join(map(str, (self.F, self.K, self.Z, self.known, self.basic, self.nested,
                                   built, self.method, self.optimality, self.source)))


def row(F: int, K: int, Z: int) -> TableRow:
    kv = bounds.best_known_s(F, K, Z)
    if kv is None:
        known, src = "?", "-"
    else:
        known = str(kv.lo) if kv.exact else f"{kv.lo}..{kv.hi}"
        src = kv.provenance
    basic = bounds.lower_bound_basic(F, K, Z).value
    nested = bounds.lower_bound_nested(F, K, Z).value if Z < F else 0
    hit = family_builder(F, K, Z)
    if hit is None:
        return TableRow(F, K, Z, known, basic, nested, None, "-", "none", src)
    g, prov = hit
    return TableRow(F, K, Z, known, basic, nested, g.s, prov.name, prov.optimality, src)


def table(family: str) -> list[TableRow]:
    if family not in FAMILIES:
        raise KeyError(f"unknown table {family!r}; choose from {', '.join(FAMILIES)}")
    return [row(*p) for p in FAMILIES[family]()]


def render(family: str) -> str:
    return "\n".join([HEADER] + [r.tsv() for r in table(family)]) + "\n"

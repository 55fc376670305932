#!/usr/bin/env python3
"""Certify exact s(F,K,Z) values: construction size vs proven lower bound,
falling back to exhaustive search when the two differ.

Usage: python3 scripts/certify_values.py F,K,Z [F,K,Z ...] [--time SECONDS]
With no triples, runs the hard instances of the small-value tables.
"""

import argparse
import time

from pdacache import bounds
from pdacache.constructions import family_builder
from pdacache.solver import SearchBudget, min_s_exact

HARD = [(4, 10, 2), (4, 16, 2), (4, 22, 2), (5, 15, 3), (5, 17, 3), (6, 6, 2), (7, 7, 2), (7, 4, 3),
        (8, 4, 3), (9, 4, 3), (11, 4, 3), (7, 7, 3), (5, 7, 2)]


def certify(F, K, Z, seconds):
    hit = family_builder(F, K, Z)
    lb = bounds.proven_lower_bound(F, K, Z).value
    if hit is not None and hit[0].s == lb:
        return f"{lb}\tsandwich"
    t0 = time.perf_counter()
    r = min_s_exact(F, K, Z, SearchBudget(time_limit=seconds))
    took = time.perf_counter() - t0
    if r.s_min is None:
        return f">={r.refuted_below}\tsearch stopped after {took:.1f}s"
    return f"{r.s_min}\tsearch ({r.nodes_explored} nodes, {took:.1f}s)"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("triples", nargs="*")
    ap.add_argument("--time", type=float, default=120.0)
    a = ap.parse_args()
    todo = [tuple(map(int, t.split(","))) for t in a.triples] or HARD
    for F, K, Z in todo:
        kv = bounds.best_known_s(F, K, Z)
        known = "?" if kv is None else (str(kv.lo) if kv.exact else f"{kv.lo}..{kv.hi}")
        print(f"({F},{K},{Z})\tknown {known}\t{certify(F, K, Z, a.time)}", flush=True)


if __name__ == "__main__":
    main()

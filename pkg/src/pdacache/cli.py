"""Command-line interface: ``pda <command> ...``.

Exit codes: 0 success, 1 semantic failure (invalid PDA, failed decode,
no construction, inconclusive search), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import bounds, sim, solver, tables
from .constructions import family_builder, named_method, optimality_of
from .core import ParseError, PdaParams, parse_pda, verify, write_pda


class UsageError(Exception):
    pass


def _params(a) -> tuple[int, int, int]:
    F, K, Z = a.F, a.K, a.Z
    if F < 1 or K < 1:
        raise UsageError(f"F and K must be positive (got F={F}, K={K})")
    if not 0 <= Z <= F:
        raise UsageError(f"Z must satisfy 0 <= Z <= F (got Z={Z}, F={F})")
    return F, K, Z


def _budget(a) -> solver.SearchBudget:
    try:
        return solver.SearchBudget.parse(a.budget or "")
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _read(path: str):
    try:
        data = sys.stdin.buffer.read() if path == "-" else Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_pda(data)


def cmd_construct(a, out) -> int:
    F, K, Z = _params(a)
    if a.method:
        try:
            g = named_method(a.method, F, K, Z)
        except (ValueError, KeyError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        method, opt = a.method, optimality_of(g)
    else:
        hit = family_builder(F, K, Z)
        if hit is None:
            print(f"error: no construction known for F={F} K={K} Z={Z} (try --method uncoded)", file=sys.stderr)
            return 1
        g, prov = hit
        method, opt = prov.name, prov.optimality
    out.write(f"# method={method} s={g.s} optimality={opt}\n")
    out.write(write_pda(g).decode("ascii"))
    return 0


def cmd_verify(a, out) -> int:
    grid, header = _read(a.path)
    rep = verify(grid, header)
    out.write(rep.render() + "\n")
    return 0 if rep.valid else 1


def cmd_bound(a, out) -> int:
    F, K, Z = _params(a)
    out.write(f"F={F} K={K} Z={Z}\n")
    for line in bounds.summarize(F, K, Z).render():
        out.write(line + "\n")
    return 0


def cmd_solve(a, out) -> int:
    F, K, Z = _params(a)
    res = solver.min_s_exact(F, K, Z, _budget(a))
    out.write(res.render() + "\n")
    if res.witness is not None and a.witness:
        Path(a.witness).write_bytes(write_pda(res.witness))
    return 0 if res.status == solver.EXACT else 1


def cmd_adjudicate(a, out) -> int:
    F, K, Z = _params(a)
    rep = solver.adjudicate(F, K, Z, _budget(a))
    out.write(rep.render() + "\n")
    return 0 if rep.conclusive else 1


def _seed(a) -> int:
    if a.seed is not None:
        return a.seed
    env = os.environ.get("PDA_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"PDA_SEED must be an integer, got {env!r}") from None
    return sim.DEFAULT_SEED


def cmd_simulate(a, out) -> int:
    grid, header = _read(a.path)
    rep = verify(grid, header)
    if not rep.valid:
        out.write(rep.render() + "\n")
        return 1
    if a.N < 1:
        raise UsageError("N must be positive")
    if a.packet_len < 1:
        raise UsageError("packet length must be positive")
    seed = _seed(a)
    cfg = sim.SimConfig(a.N, a.packet_len, seed)
    if a.demands:
        try:
            d = tuple(int(x) for x in a.demands.split(","))
        except ValueError:
            raise UsageError(f"bad demand list {a.demands!r}") from None
        if len(d) != grid.K or not all(1 <= x <= a.N for x in d):
            raise UsageError(f"need {grid.K} demands in 1..{a.N}")
        vectors = [d]
    elif a.sweep:
        vectors = list(sim.demand_vectors(grid.K, a.N, seed=seed))
    else:
        import random
        rng = random.Random(seed)
        vectors = [tuple(rng.randint(1, a.N) for _ in range(grid.K))]
    db = sim.ServerDb.random(a.N, grid.F, a.packet_len, seed)
    ok_all = True
    for d in vectors:
        r = sim.run(grid, cfg, d, db)
        ok_all &= r.all_ok
        if len(vectors) == 1:
            out.write(r.manifest())
    if len(vectors) > 1:
        out.write(f"params F={grid.F} K={grid.K} Z={grid.Z} s={grid.s}\n")
        out.write(f"files N={a.N} packet_len={a.packet_len}\nseed {seed}\n")
        out.write(f"demand_vectors {len(vectors)}\nbroadcasts {grid.s}\n")
        out.write("result " + ("pass" if ok_all else "FAIL") + "\n")
    return 0 if ok_all else 1


def cmd_table(a, out) -> int:
    names = [a.family] if a.family else list(tables.FAMILIES)
    for name in names:
        if name not in tables.FAMILIES:
            raise UsageError(f"unknown table {name!r}; choose from {', '.join(tables.FAMILIES)}")
    for i, name in enumerate(names):
        if len(names) > 1:
            out.write(("\n" if i else "") + f"# {name}\n")
        out.write(tables.render(name))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pda", description="Placement delivery arrays for coded caching.")
    sub = p.add_subparsers(dest="command", required=True)

    def fkz(sp):
        sp.add_argument("F", type=int)
        sp.add_argument("K", type=int)
        sp.add_argument("Z", type=int)

    sp = sub.add_parser("construct", help="print a PDA(F,K,Z) in file format")
    fkz(sp)
    sp.add_argument("--method", help="family name, 'uncoded', or fixed:<catalog id>")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("verify", help="check a PDA file against the four conditions")
    sp.add_argument("path", help="PDA file, or - for stdin")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("bound", help="lower bounds and the known value of s(F,K,Z)")
    fkz(sp)
    sp.set_defaults(func=cmd_bound)

    budget_help = "search budget, e.g. nodes=1000000,time=60,threads=4,engine=auto (columns|shapes|patterns)"
    sp = sub.add_parser("solve", help="exact s(F,K,Z) by search")
    fkz(sp)
    sp.add_argument("--budget", default="", help=budget_help)
    sp.add_argument("--witness", help="write the witness PDA here")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("adjudicate", help="score recorded claims for s(F,K,Z) against the search")
    fkz(sp)
    sp.add_argument("--budget", default="", help=budget_help)
    sp.set_defaults(func=cmd_adjudicate)

    sp = sub.add_parser("simulate", help="run the caching scheme of a PDA file")
    sp.add_argument("path")
    sp.add_argument("N", type=int, help="number of files")
    sp.add_argument("--demands", help="comma-separated 1-based file indices, one per node")
    sp.add_argument("--sweep", action="store_true", help="all demand vectors (or 256 seeded samples)")
    sp.add_argument("--seed", type=int, help="database/demand seed (default: $PDA_SEED or built-in)")
    sp.add_argument("--packet-len", type=int, default=sim.DEFAULT_PACKET_LEN)
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("table", help="tab-separated known values with bounds and constructions")
    sp.add_argument("family", nargs="?", help=", ".join(tables.FAMILIES))
    sp.set_defaults(func=cmd_table)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return a.func(a, out)
    except (UsageError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

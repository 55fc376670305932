"""Exact s(F,K,Z) for small instances by pruned backtracking.

The search fills columns left to right.  For each column it first picks the
set of empty rows, then assigns symbols top to bottom.  Symmetry breaking:

* column 1 is regular: symbols 1..F-Z on top, the bottom Z rows empty;
* column 2 has the least empty set of its (top, bottom) class, i.e. the
  first p top rows and the first q bottom rows (row relabelling inside the
  two halves of column 1 makes this free);
* empty sets of columns 2..K are nondecreasing as bitmasks;
* symbols are numbered in order of first use.

Condition 4 is tracked through per-symbol bitmasks: ``rows[t]`` (rows that
hold t) and ``avail[t]`` (rows empty in every column holding t, minus
``rows[t]``).  Symbol t may go to (j, c) iff j is in avail[t] and rows[t] is
contained in the empty set of column c.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Optional

from . import bounds, typesearch
from .core import EMPTY, PdaGrid, binom, canonicalize, ceil_div, verify


@dataclass(frozen=True)
class SearchBudget:
    node_limit: int = 20_000_000
    time_limit: float = 600.0
    thread_hint: int = 1
    engine: str = "auto"  # auto | columns | shapes | patterns

    def __post_init__(self):
        if self.node_limit <= 0 or self.time_limit <= 0 or self.thread_hint <= 0:
            raise ValueError("budget limits must be positive")
        if self.engine not in ENGINES:
            raise ValueError(f"unknown engine {self.engine!r}; choose from {', '.join(ENGINES)}")

    def with_nodes(self, n: int) -> "SearchBudget":
        return replace(self, node_limit=n)

    @classmethod
    def parse(cls, text: str) -> "SearchBudget":
        """Parse ``nodes=N,time=S,threads=T,engine=E`` (any subset, any order)."""
        kw: dict = {}
        names = {"nodes": ("node_limit", int), "time": ("time_limit", float),
                 "threads": ("thread_hint", int), "engine": ("engine", str)}
        for part in filter(None, (p.strip() for p in text.split(","))):
            key, sep, val = part.partition("=")
            if not sep or key not in names:
                raise ValueError(f"bad budget item {part!r}; expected nodes=, time=, threads= or engine=")
            attr, conv = names[key]
            try:
                kw[attr] = conv(val)
            except ValueError:
                raise ValueError(f"bad budget value {part!r}") from None
        return cls(**kw)


ENGINES = ("auto", "columns", "shapes", "patterns")
EXACT, LOWER_ONLY, TIMEOUT = "exact", "lower-bound-only", "timeout"
FOUND, NONE, OUT = "found", "none", "timeout"


@dataclass
class Existence:
    status: str  # found | none | timeout
    witness: Optional[PdaGrid]
    nodes: int
    cuts: dict[str, int] = field(default_factory=dict)


@dataclass
class SolveResult:
    status: str
    s_min: Optional[int]
    witness: Optional[PdaGrid]
    nodes_explored: int
    certificate: list[str]
    refuted_below: int  # every s < refuted_below is impossible

    def render(self) -> str:
        lines = [f"status {self.status}"]
        if self.s_min is not None:
            lines.append(f"s_min {self.s_min}")
        lines.append(f"lower_bound {self.refuted_below}")
        lines.append(f"nodes {self.nodes_explored}")
        lines.append("certificate")
        lines.extend("  " + c for c in self.certificate)
        if self.witness is not None:
            lines.append("witness")
            lines.extend("  " + r for r in str(self.witness).splitlines())
        return "\n".join(lines)


class _Timeout(Exception):
    pass


def _popcount(x: int) -> int:
    return bin(x).count("1")


def multiplicity_cap(F: int, K: int, Z: int, s: int) -> int:
    """Largest multiplicity any symbol can have in a PDA(F,K,Z) with s symbols.

    A symbol of multiplicity M leaves a PDA(F-M, M, Z-M+1) on its columns
    that avoids it, so M is allowed only if 1 + s(F-M, M, Z-M+1) <= s.
    """
    top = min(Z + 1, K, F)
    for M in range(top, 0, -1):
        sub = 0 if M == F else bounds.proven_lower_bound(F - M, M, Z - M + 1).value
        if 1 + sub <= s:
            return M
    return 0


class _Search:
    def __init__(self, F: int, K: int, Z: int, s: int, node_limit: int, deadline: float,
                 doll: tuple[int, ...] = ()):
        self.F, self.K, self.Z, self.s = F, K, Z, s
        self.u = F - Z
        self.maxmult = multiplicity_cap(F, K, Z, s)
        # below Z+1 the cap comes from the sub-PDA argument, not the basic one
        self.freq_cut = "frequency-cap" if self.maxmult == Z + 1 else "conditional-frequency"
        self.node_limit = node_limit
        self.deadline = deadline
        self.nodes = 0
        self.cuts = {self.freq_cut: 0, "share-capacity": 0, "suffix-doll": 0}
        # doll[k]: lower bound on the symbols any k columns of a PDA(F,.,Z) carry
        self.doll = doll or tuple(bounds.proven_lower_bound(F, k, Z).value if k else 0 for k in range(K + 1))
        full = (1 << F) - 1
        self.full = full
        self.masks = sorted(sum(1 << j for j in c) for c in combinations(range(F), Z))
        self.masks_from = {m: self.masks[i:] for i, m in enumerate(self.masks)}
        # state
        self.E: list[int] = [0] * K
        self.grid: list[list[Optional[int]]] = [[EMPTY] * K for _ in range(F)]
        self.rows = [0] * (s + 2)
        self.avail = [full] * (s + 2)
        self.mult = [0] * (s + 2)
        self.incol = [0] * (s + 2)  # bitmask of columns
        self.used = 0

    # -- placement primitives -------------------------------------------------
    def _put(self, t: int, j: int, c: int) -> tuple[int, int]:
        old = (self.rows[t], self.avail[t])
        self.rows[t] |= 1 << j
        self.avail[t] = (self.avail[t] & self.E[c]) & ~self.rows[t]
        self.mult[t] += 1
        self.incol[t] |= 1 << c
        self.grid[j][c] = t
        return old

    def _take(self, t: int, j: int, c: int, old: tuple[int, int]) -> None:
        self.rows[t], self.avail[t] = old
        self.mult[t] -= 1
        self.incol[t] &= ~(1 << c)
        self.grid[j][c] = EMPTY

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.node_limit:
            raise _Timeout
        if not self.nodes & 0x3FFF and time.monotonic() > self.deadline:
            raise _Timeout

    def _capacity_ok(self, c: int, left_here: int) -> bool:
        """Can the open symbols plus unused ones still cover every empty slot?"""
        cols_after = self.K - c - 1
        need = left_here + self.u * cols_after
        mm = self.maxmult
        bit = 1 << c
        have = 0
        for t in range(1, self.used + 1):
            room = mm - self.mult[t]
            if room <= 0:
                continue
            reach = cols_after if self.incol[t] & bit else cols_after + 1
            a = _popcount(self.avail[t])
            have += min(room, reach, a)
            if have >= need:
                return True
        have += (self.s - self.used) * min(mm, cols_after + 1)
        return have >= need

    # -- search -----------------------------------------------------------------
    def column_two_masks(self) -> list[int]:
        u, Z = self.u, self.Z
        out = []
        for p in range(0, min(Z, u) + 1):
            out.append(((1 << p) - 1) | (((1 << (Z - p)) - 1) << u))
        return sorted(out)

    def setup_first_column(self) -> None:
        self.E[0] = ((1 << self.Z) - 1) << self.u
        for j in range(self.u):
            t = j + 1
            self.used = t
            self._put(t, j, 0)

    def _suffix_ok(self, c: int, m: int) -> bool:
        """Columns c.. (empty sets >= m) need doll[K-c] distinct symbols."""
        need = self.doll[self.K - c] - (self.s - self.used)
        if need <= 0:
            return True
        later = self.masks_from[m] if c >= 2 else self.masks
        mm = self.maxmult
        got = 0
        for t in range(1, self.used + 1):
            if self.mult[t] >= mm:
                continue
            r, a = self.rows[t], self.avail[t]
            for m2 in later:
                if m2 & r == r and a & ~m2:
                    got += 1
                    break
            if got >= need:
                return True
        return False

    def run_from(self, c: int, mask_choices: list[int]) -> bool:
        for m in mask_choices:
            self._tick()
            if not self._suffix_ok(c, m):
                self.cuts["suffix-doll"] += 1
                continue
            self.E[c] = m
            free = [j for j in range(self.F) if not m >> j & 1]
            if self._fill(c, free, 0, 0):
                return True
        return False

    def _next_column(self, c: int) -> bool:
        if c == self.K:
            return True
        lo = self.E[c - 1] if c >= 2 else 0
        choices = [m for m in self.masks if m >= lo] if c >= 2 else self.column_two_masks()
        return self.run_from(c, choices)

    def _fill(self, c: int, free: list[int], i: int, here: int) -> bool:
        if i == len(free):
            return self._next_column(c + 1)
        self._tick()
        if not self._capacity_ok(c, len(free) - i):
            self.cuts["share-capacity"] += 1
            return False
        j = free[i]
        bit = 1 << j
        Ec = self.E[c]
        mm = self.maxmult
        for t in range(1, self.used + 1):
            if here >> t & 1 or not self.avail[t] & bit or self.rows[t] & ~Ec:
                continue
            if self.mult[t] >= mm:
                self.cuts[self.freq_cut] += 1
                continue
            old = self._put(t, j, c)
            if self._fill(c, free, i + 1, here | (1 << t)):
                return True
            self._take(t, j, c, old)
        if self.used < self.s:
            self.used += 1
            t = self.used
            old = self._put(t, j, c)
            if self._fill(c, free, i + 1, here | (1 << t)):
                return True
            self._take(t, j, c, old)
            self.used -= 1
        return False

    def witness(self) -> PdaGrid:
        return PdaGrid(tuple(tuple(r) for r in self.grid))


def _trivial(F: int, K: int, Z: int, s: int) -> Optional[Existence]:
    if Z == F:
        return Existence(FOUND, PdaGrid.empty(F, K), 0)
    if s < F - Z:
        return Existence(NONE, None, 0, {"column-count": 1})
    if K == 1:
        return Existence(FOUND, PdaGrid(tuple((j + 1 if j < F - Z else EMPTY,) for j in range(F))), 1)
    if s >= K * (F - Z):
        from .constructions import uncoded
        return Existence(FOUND, uncoded(F, K, Z), 1)
    return None


def _branch(args) -> tuple[str, int, Optional[PdaGrid], dict]:
    """Explore one column-2 empty set.  Module-level so it pickles."""
    F, K, Z, s, mask, node_limit, deadline, doll = args
    S = _Search(F, K, Z, s, node_limit, deadline, doll)
    S.setup_first_column()
    try:
        ok = S.run_from(1, [mask])
    except _Timeout:
        return OUT, S.nodes, None, S.cuts
    return (FOUND if ok else NONE), S.nodes, (S.witness() if ok else None), S.cuts


def resolve_engine(F: int, K: int, Z: int, engine: str = "auto") -> str:
    """``auto`` picks shapes when columns must repeat types (K > C(F,Z)),
    patterns otherwise."""
    if engine != "auto":
        return engine
    return "shapes" if K > binom(F, Z) else "patterns"


def exists_pda(F: int, K: int, Z: int, s: int, budget: SearchBudget | None = None,
               doll: tuple[int, ...] = ()) -> Existence:
    """Search for a PDA(F,K,Z) with at most s symbols.

    ``doll[k]`` may supply lower bounds on s(F,k,Z) for k <= K (for instance
    exact values from earlier searches); proven bounds are used otherwise.
    """
    budget = budget or SearchBudget()
    if F < 1 or K < 1 or not 0 <= Z <= F or s < 0:
        raise ValueError(f"parameters out of range: F={F} K={K} Z={Z} s={s}")
    hit = _trivial(F, K, Z, s)
    if hit is not None:
        return hit
    maxmult = multiplicity_cap(F, K, Z, s)
    if s < ceil_div(K * (F - Z), Z + 1):
        return Existence(NONE, None, 0, {"basic-bound": 1})
    if doll and s < doll[K]:
        return Existence(NONE, None, 0, {"suffix-doll": 1})
    if not bounds.share_capacity_ok(F, K, Z, s, maxmult):
        return Existence(NONE, None, 0, {"share-precheck": 1})
    deadline = time.monotonic() + budget.time_limit
    engine = resolve_engine(F, K, Z, budget.engine)
    if engine != "columns":
        run = typesearch.exists_by_shapes if engine == "shapes" else typesearch.exists_by_patterns
        status, wit, nodes = run(F, K, Z, s, maxmult, budget.node_limit, deadline)
        return Existence(status, wit, nodes, {f"{engine}-search": 1})
    probe = _Search(F, K, Z, s, budget.node_limit, deadline, doll)
    doll = probe.doll
    branches = probe.column_two_masks()
    args = [(F, K, Z, s, m, budget.node_limit, deadline, doll) for m in branches]
    if budget.thread_hint > 1 and len(branches) > 1:
        workers = min(budget.thread_hint, len(branches), os.cpu_count() or 1)
        with ProcessPoolExecutor(max_workers=workers) as ex:
            outcomes = list(ex.map(_branch, args))
        return _merge(outcomes, budget.node_limit)
    # sequential: each branch gets what is left of the node budget
    outcomes = []
    spent = 0
    for a in args:
        left = budget.node_limit - spent
        if left <= 0:
            outcomes.append((OUT, 0, None, {}))
            break
        out = _branch(a[:5] + (left, deadline, doll))
        outcomes.append(out)
        spent += out[1]
        if out[0] != NONE:
            break
    return _merge(outcomes, budget.node_limit)


def _merge(outcomes, node_limit: int) -> Existence:
    """Combine branch outcomes exactly as the sequential scan would see them.

    Branches are read in order with a running node total; a branch whose
    count would overrun the limit turns into a timeout, so the verdict and
    the witness do not depend on how many workers ran.
    """
    spent = 0
    cuts: dict[str, int] = {}
    for status, nodes, wit, bc in outcomes:
        if status == OUT or spent + nodes > node_limit:
            # cut counts of an overrun branch depend on its limit; leave them out
            return Existence(OUT, None, node_limit, cuts)
        for k, v in bc.items():
            cuts[k] = cuts.get(k, 0) + v
        spent += nodes
        if status == FOUND:
            return Existence(FOUND, wit, spent, cuts)
    return Existence(NONE, None, spent, cuts)


def _scan(F: int, K: int, Z: int, budget: SearchBudget, doll: tuple[int, ...], cert: list[str]):
    """Refute s = basic, basic+1, ... until a witness turns up or the budget ends."""
    s = bounds.lower_bound_basic(F, K, Z).value
    total = 0
    while True:
        left = budget.node_limit - total
        if left <= 0:
            cert.append(f"timeout-s={s} 0")
            return TIMEOUT, s, None, total
        r = exists_pda(F, K, Z, s, budget.with_nodes(left), doll)
        total += r.nodes
        for name, n in sorted(r.cuts.items()):
            if n:
                cert.append(f"{name} {n}")
        if r.status == FOUND:
            cert.append(f"feasible-s={s} {r.nodes}")
            return FOUND, s, r.witness, total
        if r.status == OUT:
            cert.append(f"timeout-s={s} {r.nodes}")
            return TIMEOUT, s, None, total
        cert.append(f"exhausted-s={s} {r.nodes}")
        s += 1


def min_s_exact(F: int, K: int, Z: int, budget: SearchBudget | None = None,
                russian_doll: bool = True) -> SolveResult:
    """Smallest s with a PDA(F,K,Z), found by refuting s = basic, basic+1, ...

    With ``russian_doll`` the instances with 2..K-1 columns are solved first;
    their values bound how many symbols any run of trailing columns needs.
    """
    budget = budget or SearchBudget()
    if F < 1 or K < 1 or not 0 <= Z <= F:
        raise ValueError(f"parameters out of range: F={F} K={K} Z={Z}")
    cert = [f"basic-bound {bounds.lower_bound_basic(F, K, Z).value}"]
    doll = [0] + [bounds.proven_lower_bound(F, k, Z).value if Z < F else 0 for k in range(1, K + 1)]
    total = 0
    if russian_doll and 0 < Z < F and resolve_engine(F, K, Z, budget.engine) == "columns":
        for k in range(2, K):
            doll[k] = max(doll[k], doll[k - 1])
            left = budget.node_limit - total
            if left <= 0:
                break
            sub_cert: list[str] = []
            status, sk, _, n = _scan(F, k, Z, budget.with_nodes(left), tuple(doll[:k + 1]), sub_cert)
            total += n
            doll[k] = max(doll[k], sk)  # exact on success, refuted-below on timeout
            cert.append(f"doll-k={k}-s{'=' if status == FOUND else '>='}{sk} {n}")
        doll[K] = max(doll[K], doll[K - 1])
    left = budget.node_limit - total
    if left <= 0:
        cert.append("timeout 0")
        return SolveResult(LOWER_ONLY, None, None, total, cert, max(doll[K], bounds.lower_bound_basic(F, K, Z).value))
    status, s, wit, n = _scan(F, K, Z, budget.with_nodes(left), tuple(doll), cert)
    total += n
    if status == FOUND:
        w = canonicalize(wit) if wit.s else wit
        if not verify(w).valid or w.s > s:  # pragma: no cover - soundness guard
            raise AssertionError("solver produced an invalid witness")
        return SolveResult(EXACT, w.s, w, total, cert, s)
    return SolveResult(LOWER_ONLY, None, None, total, cert, s)


@dataclass
class Adjudication:
    params: tuple[int, int, int]
    result: SolveResult
    verdicts: list[tuple[str, int, str]]  # (claim source, claimed value, agree|disagree|inconclusive)
    conclusive: bool

    def render(self) -> str:
        F, K, Z = self.params
        out = [f"adjudicate F={F} K={K} Z={Z}"]
        if self.result.status == EXACT:
            out.append(f"solver s_min {self.result.s_min} (exhaustive)")
        else:
            out.append(f"solver inconclusive: s >= {self.result.refuted_below}, search stopped")
        for src, v, verdict in self.verdicts:
            out.append(f"claim {src} = {v}: {verdict}")
        out.append(f"nodes {self.result.nodes_explored}")
        return "\n".join(out)


def adjudicate(F: int, K: int, Z: int, budget: SearchBudget | None = None) -> Adjudication:
    """Run the exact search and score every recorded claim for (F,K,Z)."""
    res = min_s_exact(F, K, Z, budget)
    claims: list[tuple[str, int]] = []
    for kv in bounds.all_known(F, K, Z):
        vals = sorted({kv.lo, kv.hi})
        srcs = [p.strip() for p in kv.provenance.split(" vs ")]
        if len(vals) == 1:
            claims.append((kv.provenance, vals[0]))
        elif (F, K, Z) in bounds.DISPUTED:
            # the low end is our own array, not a recorded claim
            claims.append((kv.provenance, kv.hi))
        else:
            if len(srcs) == 2:
                # listed value first, formula value second
                claims.append((srcs[0], kv.hi))
                claims.append((srcs[1], kv.lo))
            else:
                for v in vals:
                    claims.append((kv.provenance, v))
    verdicts = []
    for src, v in claims:
        if res.status == EXACT:
            verdicts.append((src, v, "agree" if v == res.s_min else "disagree"))
        elif v < res.refuted_below:
            verdicts.append((src, v, "disagree"))
        else:
            verdicts.append((src, v, "inconclusive"))
    return Adjudication((F, K, Z), res, verdicts, res.status == EXACT)

from fractions import Fraction

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from pdacache.catalog import fixed_catalog
from pdacache.constructions import rpda_recursive, transpose_rpda
from pdacache.core import EMPTY, PdaGrid
from pdacache.sim import (
    ProtocolViolation, ServerDb, SimConfig, decode, deliver, demand_vectors, measure, place, run,
)

DEMO = fixed_catalog("demo")
A, B = b"A1A1A2A2", b"B1B1B2B2"


def demo_db():
    return ServerDb.from_files([A, B], 2)


def test_place_demo():
    p = place(DEMO, demo_db())
    assert p.rows == (frozenset({0}), frozenset({1}))
    assert p.store[0] == {(1, 0): b"A1A1", (2, 0): b"B1B1"}
    assert p.store[1] == {(1, 1): b"A2A2", (2, 1): b"B2B2"}


def test_place_full_cache():
    g = PdaGrid.empty(3, 2)
    p = place(g, ServerDb.random(4, 3, 8))
    assert all(p.packets_held(k) == 12 for k in range(2))


def test_place_rpda_counts():
    g = rpda_recursive(4, 2)
    p = place(g, ServerDb.random(6, 4, 8))
    assert all(len(r) == 2 and p.packets_held(k) == 12 for k, r in enumerate(p.rows))


def test_deliver_single_packet():
    db = demo_db()
    bc = deliver(DEMO, db, (1, 2))
    assert len(bc) == 1
    a2, b1 = db.packets[0][1], db.packets[1][0]
    assert bc.packets[1] == bytes(x ^ y for x, y in zip(a2, b1))
    p = place(DEMO, db)
    assert decode(0, p, bc, (1, 2), DEMO) == A
    assert decode(1, p, bc, (1, 2), DEMO) == B


def test_repeated_demands():
    db = demo_db()
    for d in [(1, 1), (2, 2), (2, 1)]:
        rep = run(DEMO, SimConfig(2), d, db)
        assert rep.all_ok and len(rep.broadcasts) == 1


def test_full_cache_needs_no_broadcast():
    g = PdaGrid.empty(2, 3)
    rep = run(g, SimConfig(3, 4), (1, 2, 3))
    assert rep.all_ok and len(rep.broadcasts) == 0


def test_bad_inputs():
    db = demo_db()
    with pytest.raises(ValueError):
        deliver(DEMO, db, (1,))
    with pytest.raises(ValueError):
        deliver(DEMO, db, (1, 3))
    with pytest.raises(ValueError):
        place(DEMO, ServerDb.random(2, 3, 4))
    with pytest.raises(ValueError):
        ServerDb.random(2, 2, 0)
    with pytest.raises(ValueError):
        ServerDb.from_files([b"abc"], 2)
    with pytest.raises(ValueError):
        place(PdaGrid.from_rows([[1, 2], [2, 1]]), db)


def test_invalid_grid_is_caught_at_decode():
    # condition 4 broken: node 1 lacks the packet it must cancel
    g = PdaGrid.from_rows([[1, 2], [2, 1]])
    db = demo_db()
    p = place(g, db, strict=False)
    bc = deliver(g, db, (1, 2), strict=False)
    with pytest.raises(ProtocolViolation):
        decode(0, p, bc, (1, 2), g)
    assert not run(g, SimConfig(2), (1, 2), db, strict=False).all_ok


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.binary(min_size=10, max_size=10), st.data())
def test_xor_round_trip(extra, payload, data):
    g = rpda_recursive(5, 2)
    N = 1 + extra
    db = ServerDb.from_files([bytes(b ^ n for b in payload) for n in range(N)], 5)
    d = tuple(data.draw(st.integers(1, N)) for _ in range(g.K))
    p = place(g, db)
    bc = deliver(g, db, d)
    assert len(bc) == g.s
    assert all(decode(k, p, bc, d, g) == db.file(d[k]) for k in range(g.K))


def test_demand_vectors():
    assert len(list(demand_vectors(2, 2))) == 4
    big = list(demand_vectors(6, 6))
    assert len(big) == 256 and big == list(demand_vectors(6, 6))


def test_manifest_lines():
    m = run(DEMO, SimConfig(2, 4, 7), (1, 2)).manifest()
    assert m.splitlines() == [
        "params F=2 K=2 Z=1 s=1", "files N=2 packet_len=4", "seed 7", "demands 1 2",
        "broadcasts 1", "symbol 1 (1,2) (2,1)", "node 1 pass", "node 2 pass", "result pass",
    ]


def test_measure():
    m = measure(DEMO, runs=3)
    assert m.rate == Fraction(1, 2) and m.broadcasts == 1 and m.all_decoded
    m = measure(transpose_rpda(rpda_recursive(4, 2)), runs=2)
    assert m.rate == Fraction(4, 6) and m.cache_fraction == Fraction(1, 2)
    assert measure(PdaGrid.empty(3, 3)).rate == 0
    assert measure(fixed_catalog("e.2"), packet_len=16).bytes_on_wire == 64


def test_empty_cell_symbol_matches_manifest():
    g = fixed_catalog("e.2")
    bc = deliver(g, ServerDb.random(6, 4, 4), (1, 2, 3, 4, 5, 6))
    for t, cells in bc.manifest.items():
        assert all(g.cells[j][k] == t and g.cells[j][k] is not EMPTY for j, k in cells)

from math import comb

import pytest

from pdacache import bounds
from pdacache.catalog import CATALOG, fixed_catalog
from pdacache.constructions import (
    blow_up, concat_copies, drop_columns, family_builder, ff2_recursive, k2, named_method,
    pda_572, pda_743, rpda_recursive, simple_family, transpose_rpda, uncoded, z1_general, z1_square,
)
from pdacache.core import EMPTY, PdaGrid, PdaParams, canonical_equal, combinations_bt, combinations_tb, frequency_census, verify
from pdacache.solver import min_s_exact


def valid(g, F, K, Z, s):
    r = verify(g, PdaParams(F, K, Z, s))
    assert r.valid, r.render()
    assert frequency_census(g).overflow == ()


def test_simple_family():
    assert simple_family(4, 10, 3) == fixed_catalog("e.2-3-a")
    assert simple_family(8, 4, 6) == fixed_catalog("e.2-3-b")
    assert simple_family(3, 5, 3) == PdaGrid.empty(3, 5)
    valid(simple_family(3, 4, 0), 3, 4, 0, 12)
    valid(simple_family(3, 7, 2), 3, 7, 2, 3)
    with pytest.raises(ValueError):
        simple_family(4, 4, 2, 4)


def test_k2():
    valid(k2(4, 1), 4, 2, 1, 5)
    assert min_s_exact(4, 2, 1).s_min == 5
    valid(k2(4, 2), 4, 2, 2, 2)
    for Z in range(1, 6):
        assert k2(2 * Z, Z).s == Z


def test_z1_square():
    assert z1_square(5) == fixed_catalog("e.1")
    assert z1_square(2) == PdaGrid.from_rows([[EMPTY, 1], [1, EMPTY]])
    for F in range(2, 9):
        g = z1_square(F)
        valid(g, F, F, 1, F * (F - 1) // 2)
        assert frequency_census(g).a == {2: F * (F - 1) // 2}
        assert canonical_equal(g, rpda_recursive(F, 1))
    with pytest.raises(ValueError):
        z1_square(1)


@pytest.mark.parametrize("F,K,s", [(4, 4, 6), (4, 6, 11), (3, 2, 3)])
def test_z1_general(F, K, s):
    g = z1_general(F, K)
    valid(g, F, K, 1, s)
    assert min_s_exact(F, K, 1).s_min == s


def test_rpda_figures_raw():
    assert rpda_recursive(5, 2) == fixed_catalog("e.5-10-2")
    assert rpda_recursive(6, 3) == fixed_catalog("fig-z3")
    g = rpda_recursive(4, 3)
    assert all(g.cells[j][k] == (1 if j + k == 3 else EMPTY) for j in range(4) for k in range(4))


def test_rpda_orders_and_census():
    for F in range(2, 10):
        for Z in range(1, F):
            g = rpda_recursive(F, Z)
            valid(g, F, comb(F, Z), Z, comb(F, Z + 1))
            assert frequency_census(g).a == {Z + 1: comb(F, Z + 1)}
            cols = [tuple(j + 1 for j in range(F) if g.cells[j][k] is EMPTY) for k in range(g.K)]
            assert cols == combinations_tb(F, Z)
            # symbol t sits on the t-th (Z+1)-subset of TB order read backwards;
            # this is what the worked figures show (see test_rpda_figures_raw)
            occ = g.occurrences()
            rows = [tuple(sorted(j + 1 for j, _ in occ[t])) for t in sorted(occ)]
            assert rows == combinations_tb(F, Z + 1)[::-1]
            # the first two agree with BT order (TB on the reversed ground set)
            bt = [tuple(sorted(c)) for c in combinations_bt(F, Z + 1)]
            assert rows[:2] == bt[:2]


def test_rpda_nested_substructure():
    for F in range(3, 9):
        for Z in range(1, F - 1):
            g = rpda_recursive(F, Z)
            skip = comb(F - 1, Z - 1)
            tail = PdaGrid.from_rows([row[skip:] for row in g.cells[1:]]).compact()
            assert canonical_equal(tail, rpda_recursive(F - 1, Z))
    with pytest.raises(ValueError):
        rpda_recursive(3, 3)


def test_concat_copies():
    e2 = fixed_catalog("e.2")
    assert canonical_equal(concat_copies(e2, 1), e2)
    g = concat_copies(e2, 2)
    valid(g, 4, 12, 2, 8)
    assert frequency_census(g).a == {3: 8}


def test_drop_columns():
    e2 = fixed_catalog("e.2")
    assert drop_columns(e2, 0) == e2
    valid(drop_columns(e2, 1), 4, 5, 2, 4)
    valid(drop_columns(rpda_recursive(5, 3), 1), 5, 9, 3, 5)
    with pytest.raises(ValueError):
        drop_columns(e2, 6)


def test_transpose():
    g = transpose_rpda(rpda_recursive(4, 2))
    valid(g, 6, 4, 3, 4)
    assert g.transpose().transpose() == g
    valid(transpose_rpda(rpda_recursive(5, 2)), 10, 5, 4, 10)
    with pytest.raises(ValueError):
        transpose_rpda(fixed_catalog("fig-small-K3"))


def test_blow_up():
    assert blow_up(fixed_catalog("ex-331"), 2) == fixed_catalog("ex-664")
    e2 = fixed_catalog("e.2")
    assert blow_up(e2, 1) == e2
    g = blow_up(e2, 2)
    valid(g, 8, 12, 6, 4)
    for t in (2, 3):
        h = blow_up(fixed_catalog("remark-441"), t)
        base = {s: len(c) for s, c in fixed_catalog("remark-441").occurrences().items()}
        assert {s: len(c) for s, c in h.occurrences().items()} == {s: t * m for s, m in base.items()}


@pytest.mark.parametrize("F,s", [(3, 1), (4, 4), (5, 7), (6, 11), (7, 17), (9, 30), (12, 58)])
def test_ff2(F, s):
    g = ff2_recursive(F)
    valid(g, F, F, 2, s)
    assert all(g.cells[i][i] is EMPTY for i in range(F))
    assert s == bounds.ff2_value(F)


def test_ff2_base_and_errors():
    assert ff2_recursive(5) == fixed_catalog("fig-FF2s-F5")
    with pytest.raises(ValueError):
        ff2_recursive(2)


def test_catalog_entries_verify():
    for cid, e in CATALOG.items():
        r = verify(e.grid, e.params)
        assert r.valid, (cid, r.render())
    assert fixed_catalog("fig-largeF-F7").s == 8
    with pytest.raises(KeyError):
        fixed_catalog("no-such-figure")


def test_catalog_9_4_3_alias():
    g9 = fixed_catalog("fig-largeF-F9")
    g8 = fixed_catalog("fig-largeF-F9-as-842")
    assert all(c is EMPTY for c in g9.cells[-1])
    assert g8 == PdaGrid(g9.cells[:-1])


def test_named_arrays():
    valid(pda_572(), 5, 7, 2, 9)
    valid(pda_743(), 7, 4, 3, 7)
    valid(uncoded(4, 3, 1), 4, 3, 1, 9)


def test_family_builder_examples():
    g, prov = family_builder(4, 8, 2)
    assert g.s == 6 and prov.optimality == "exact-proven"
    g, prov = family_builder(6, 20, 3)
    assert prov.name == "rpda" and g == rpda_recursive(6, 3)
    g, prov = family_builder(15, 4, 3)
    assert g.s == 30 and prov.claimed_s == 30
    assert family_builder(8, 5, 3) is None or family_builder(8, 5, 3)[0].s >= 1


def test_named_method_errors():
    with pytest.raises(ValueError):
        named_method("rpda", 5, 9, 2)
    with pytest.raises(ValueError):
        named_method("fixed:e.2", 4, 5, 2)
    with pytest.raises(ValueError):
        named_method("nonsense", 4, 5, 2)


@pytest.mark.slow
def test_every_construction_verifies_and_sandwiches():
    for F in range(1, 11):
        for K in range(1, 41):
            for Z in range(F + 1):
                hit = family_builder(F, K, Z)
                if hit is None:
                    continue
                g, prov = hit
                assert verify(g, PdaParams(F, K, Z, prov.claimed_s)).valid, (F, K, Z, prov)
                kv = bounds.best_known_s(F, K, Z)
                if prov.optimality == "exact-proven":
                    assert kv is not None and kv.exact and kv.lo == g.s
                if kv is not None and kv.exact:
                    assert g.s == kv.lo, (F, K, Z, prov)

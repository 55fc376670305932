from math import comb

import pytest

from pdacache import bounds
from pdacache.bounds import (
    best_known_s, lower_bound_basic, lower_bound_frequency, lower_bound_nested,
    lower_bound_nested_recursive, proven_lower_bound, rpda_feasibility,
)
from pdacache.constructions import family_builder
from naive import naive_min_s


def test_basic_examples():
    assert lower_bound_basic(4, 6, 2).value == 4
    assert lower_bound_basic(7, 3, 7).value == 0
    assert lower_bound_basic(5, 7, 3).value == 4
    with pytest.raises(ValueError):
        lower_bound_basic(3, 3, 4)


def test_nested_examples():
    assert lower_bound_nested(2, 2, 1).value == 1
    assert lower_bound_nested(4, 3, 2).value == 3
    with pytest.raises(ValueError):
        lower_bound_nested(4, 3, 4)


@pytest.mark.parametrize("F,Z", [(4, 2), (5, 2), (5, 3), (6, 3), (7, 2)])
@pytest.mark.parametrize("ell", [1, 2, 3])
def test_nested_rpda_equality(F, Z, ell):
    assert lower_bound_nested(F, ell * comb(F, Z), Z).value == ell * comb(F, Z + 1)


def test_nested_two_implementations_agree():
    for F in range(1, 11):
        for Z in range(F):
            for K in range(1, 25):
                assert lower_bound_nested(F, K, Z).value == lower_bound_nested_recursive(F, K, Z)


def test_frequency_examples():
    assert lower_bound_frequency(5, 3, 3).value == 5
    assert lower_bound_frequency(6, 4, 3).value == 9
    r = lower_bound_frequency(9, 2, 8)
    assert r.value == 1 and r.assumptions


def test_rpda_feasibility():
    assert rpda_feasibility(4, 6, 2).feasible
    r = rpda_feasibility(4, 3, 2)
    assert not r.feasible and "C(F,Z)" in r.reason
    for F in range(3, 9):
        for Z in range(1, F - 1):
            if (Z + 1) * (F - Z - 1) >= F - Z:
                assert not rpda_feasibility(F, 1, Z).feasible


def test_known_examples():
    assert best_known_s(5, 5, 3).s_exact == 4
    assert best_known_s(12, 4, 3).s_exact == 18
    assert best_known_s(20, 4, 3).s_exact == 50
    kv = best_known_s(5, 7, 2)
    assert (kv.lo, kv.hi) == (9, 10) and kv.conflict_note
    assert best_known_s(5, 8, 2).s_exact == 10
    assert best_known_s(8, 5, 3) is None


def test_known_small_5k2_absent_from_family():
    assert bounds.fam_s5k2(5, 1, 2) is None and bounds.fam_s5k2(5, 2, 2) is None
    assert best_known_s(5, 1, 2).s_exact == 3
    assert best_known_s(5, 2, 2).s_exact == 4


def test_disputed_743_is_a_range():
    kv = best_known_s(7, 4, 3)
    assert (kv.lo, kv.hi) == (7, 8) and "7-symbol" in kv.conflict_note


def test_nested_at_least_basic_sweep():
    for F in range(1, 13):
        for Z in range(F):
            for K in range(1, 41):
                assert lower_bound_nested(F, K, Z).value >= lower_bound_basic(F, K, Z).value


def test_known_values_consistent():
    for F in range(1, 13):
        for K in range(1, 30):
            for Z in range(F + 1):
                hits = bounds.all_known(F, K, Z)
                for kv in hits:
                    assert kv.lo >= lower_bound_basic(F, K, Z).value
                    if Z < F:
                        assert kv.lo >= proven_lower_bound(F, K, Z).value, (F, K, Z)
                exact = {kv.lo for kv in hits if kv.exact and kv.conflict_note is None}
                assert len(exact) <= 1, (F, K, Z, hits)


def test_proven_bound_below_constructions():
    for F in range(2, 11):
        for K in range(1, 25):
            for Z in range(F):
                hit = family_builder(F, K, Z)
                if hit is not None:
                    assert proven_lower_bound(F, K, Z).value <= hit[0].s, (F, K, Z)


@pytest.mark.parametrize("F,K,Z", [(F, K, Z) for F in range(2, 5) for K in range(1, 4) for Z in range(F)]
                         + [(4, 4, 2), (5, 3, 3), (5, 4, 2), (5, 2, 1)])
def test_proven_bound_below_brute_force(F, K, Z):
    assert proven_lower_bound(F, K, Z).value <= naive_min_s(F, K, Z)


def test_summary_render():
    lines = bounds.summarize(4, 6, 2).render()
    assert "basic\t4" in lines and lines[-1].startswith("known\t4\t")

import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from amalgam_cgt.catalog import NAMES, catalog, presentation
from amalgam_cgt.coset_enum import (CosetTable, EnumerationLimits, LimitExceeded, TableNotClosed,
                                    coset_action, coset_representatives, enumerate_cosets, is_closed,
                                    standardize, table_from_dict, table_to_dict)
from amalgam_cgt.perm import Perm, PermutationGroup
from amalgam_cgt.presentation import parse_presentation
from amalgam_cgt.words import Word

SMALL = ["Zstar", "Xstar", "Ystar", "F2", "F4", "C3test", "AGL23"]
SMALL_ORDERS = {"Zstar": 108, "Xstar": 432, "Ystar": 432, "F2": 1, "F4": 1, "C3test": 3, "AGL23": 432}


def c3():
    return parse_presentation("gens a; rels a^3;")


def test_cyclic():
    t = enumerate_cosets(c3())
    assert t.live_count == 3 and t.is_closed()
    [(name, p)] = coset_action(t)
    assert name == "a" and p == Perm.from_cycles([[1, 2, 3]], 3)


def test_trace():
    t = enumerate_cosets(c3())
    for c in range(1, 4):
        assert t.trace(c, Word()) == c
        assert t.trace(c, Word([1, 1, 1])) == c
    with pytest.raises(IndexError):
        t.trace(4, Word())


def test_standardize_permuted_rows():
    t = enumerate_cosets(c3())
    # relabel cosets 2 and 3
    swap = {0: 0, 1: 1, 2: 3, 3: 2}
    rows = np.zeros_like(t.rows)
    for c in range(1, 4):
        rows[swap[c]] = [swap[int(x)] for x in t.rows[c]]
    shuffled = CosetTable(t.presentation, t.subgroup_words, rows)
    assert shuffled.is_closed()
    assert standardize(shuffled) == t
    assert standardize(t) == t


def test_standardize_rejects_open_table():
    t = enumerate_cosets(c3())
    rows = t.rows.copy()
    rows[2, 0] = 0
    with pytest.raises(TableNotClosed):
        standardize(CosetTable(t.presentation, (), rows))


@pytest.mark.parametrize("name", SMALL)
def test_small_orders(name):
    t = enumerate_cosets(presentation(name))
    assert t.live_count == SMALL_ORDERS[name]


def test_xstar_action_satisfies_relators():
    P = presentation("Xstar")
    t = enumerate_cosets(P)
    perms = dict(coset_action(t))
    for r in P.relators:
        g = Perm.identity(t.live_count)
        for x in r:
            y = perms[P.generators[abs(x) - 1]]
            g = g * (y if x > 0 else ~y)
        assert g.is_identity()
    G = PermutationGroup(list(perms.values()), t.live_count)
    assert G.order() == 432  # regular action: index times trivial subgroup


def test_f2_collapses():
    t = enumerate_cosets(presentation("F2"))
    assert t.live_count == 1
    assert all(p.is_identity() and p.degree == 1 for _, p in coset_action(t))


def test_infinite_group_hits_the_cap():
    with pytest.raises(LimitExceeded):
        enumerate_cosets(presentation("F"), (), EnumerationLimits(20_000))


def test_limits_validation():
    with pytest.raises(ValueError):
        EnumerationLimits(0)
    with pytest.raises(ValueError):
        EnumerationLimits(10, "random")


def test_subgroup_word_out_of_range():
    with pytest.raises(ValueError):
        enumerate_cosets(c3(), [Word([2])])


def test_index_times_subgroup_order():
    P = presentation("Xstar")
    sub = [P.word(x) for x in ("a", "b", "t", "u")]
    t = enumerate_cosets(P, sub)
    assert t.live_count == 4  # Z* has index 4 in X*
    assert t.trace(1, P.word("[a,b] t u")) == 1
    reps = coset_representatives(t)
    assert len(reps) == 4 and reps[0] == Word()
    assert sorted(t.trace(1, w) for w in reps) == [1, 2, 3, 4]


@pytest.mark.parametrize("name", SMALL)
def test_strategy_independence_small(name):
    P = presentation(name)
    a = enumerate_cosets(P, (), EnumerationLimits(strategy="hlt"))
    b = enumerate_cosets(P, (), EnumerationLimits(strategy="felsch"))
    assert a == b


@pytest.mark.parametrize("name,index", [("F1", 220), ("F3", 13)])
def test_strategy_independence_over_x(name, index):
    P = presentation(name)
    sub = [P.word(x) for x in ("a", "b", "p", "q", "t", "u")]
    a = enumerate_cosets(P, sub, EnumerationLimits(strategy="hlt"))
    b = enumerate_cosets(P, sub, EnumerationLimits(strategy="felsch"))
    assert a.live_count == index and a == b


def test_deterministic():
    P = presentation("Ystar")
    a, b = enumerate_cosets(P), enumerate_cosets(P)
    assert np.array_equal(a.rows, b.rows)


def test_json_round_trip(tmp_path):
    P = presentation("Zstar")
    t = enumerate_cosets(P, [P.word("a")])
    d = json.loads(t.to_json())
    assert d["version"] == 1 and d["index"] == t.live_count
    back = table_from_dict(d, P)
    assert back == t and back.is_closed()
    with pytest.raises(ValueError):
        table_from_dict(d, presentation("Xstar"))


def test_is_closed_catches_a_broken_relator():
    t = enumerate_cosets(c3())
    assert is_closed(t.rows, t.presentation.relators)
    assert not is_closed(t.rows, [Word([1, 1])])


# random cyclic and dihedral presentations against their known orders
@settings(max_examples=25)
@given(st.integers(min_value=1, max_value=40), st.sampled_from(["hlt", "felsch"]))
def test_cyclic_orders(n, strategy):
    P = parse_presentation(f"gens a; rels a^{n};")
    assert enumerate_cosets(P, (), EnumerationLimits(strategy=strategy)).live_count == n


@settings(max_examples=25)
@given(st.integers(min_value=2, max_value=30), st.sampled_from(["hlt", "felsch"]))
def test_dihedral_orders(n, strategy):
    P = parse_presentation(f"gens r, s; rels r^{n}; s^2; (s r)^2;")
    t = enumerate_cosets(P, (), EnumerationLimits(strategy=strategy))
    assert t.live_count == 2 * n
    assert enumerate_cosets(P, [P.word("s")], EnumerationLimits(strategy=strategy)).live_count == n

import pytest
from hypothesis import given, settings, strategies as st

from amalgam_cgt.perm import (CapExceeded, Perm, PermutationGroup, comm, parse_generators,
                              point_stabilizer, set_action, stabilizer)


def perms(n):
    return st.permutations(list(range(n))).map(Perm)


def closure(gens, n):
    """Brute-force breadth-first closure, the oracle for the stabilizer chain."""
    seen = {Perm.identity(n)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def test_right_action():
    g = Perm.parse("(1 2)", 3)
    h = Perm.parse("(2 3)", 3)
    # apply g first, then h: 1 -> 2 -> 3
    assert (g * h)[0] == 2


def test_parse_and_print():
    g = Perm.parse("(1 2 3)(4 5)", 6)
    assert g.cycle_string() == "(1 2 3)(4 5)"
    assert Perm.parse("()", 4).is_identity()
    assert g.order() == 6 and g.support() == [0, 1, 2, 3, 4]
    for bad in ["(1 2", "(1 7)", "(1 1)", "1 2"]:
        with pytest.raises(ValueError):
            Perm.parse(bad, 6)


@given(perms(7), perms(7), perms(7))
def test_group_axioms(a, b, c):
    e = Perm.identity(7)
    assert (a * b) * c == a * (b * c)
    assert a * e == e * a == a
    assert (a * ~a).is_identity() and (~a * a).is_identity()
    assert a.conj(b) == ~b * a * b
    assert comm(a, b) == ~a * ~b * a * b
    assert a ** a.order() == e and a ** -1 == ~a


@settings(max_examples=60)
@given(st.integers(2, 7).flatmap(lambda n: st.lists(perms(n), min_size=1, max_size=3)))
def test_chain_order_matches_closure(gens):
    n = gens[0].degree
    G = PermutationGroup(gens, n)
    elems = closure(gens, n)
    assert G.order() == len(elems)
    assert set(G.elements()) == elems
    assert all(G.contains(x) for x in elems)


@settings(max_examples=60)
@given(st.lists(perms(6), min_size=1, max_size=2), perms(6))
def test_membership(gens, x):
    G = PermutationGroup(gens, 6)
    assert G.contains(x) == (x in closure(gens, 6))


@settings(max_examples=40)
@given(st.lists(perms(6), min_size=1, max_size=2), st.integers(0, 5))
def test_orbit_stabilizer(gens, pt):
    G = PermutationGroup(gens, 6)
    H = point_stabilizer(G, pt)
    assert H.order() * len(G.orbit(pt)) == G.order()
    assert all(h[pt] == pt for h in H.generators)


def test_set_stabilizer_by_action():
    G = PermutationGroup([Perm.parse("(1 2 3 4 5 6)", 6), Perm.parse("(1 2)", 6)], 6)
    H = stabilizer(G, frozenset({0, 1, 2}), set_action)
    assert H.order() == 36


def test_parse_generators():
    G = parse_generators("degree 5\n(1 2 3 4 5)\n# comment\n(1 2)\n")
    assert G.order() == 120 and G.is_transitive()
    with pytest.raises(ValueError):
        parse_generators("(1 2)\n")


def test_element_cap():
    G = PermutationGroup([Perm.parse("(1 2 3 4 5 6 7 8)", 8), Perm.parse("(1 2)", 8)], 8)
    with pytest.raises(CapExceeded):
        G.elements(cap=100)


def test_to_text_round_trip():
    G = PermutationGroup([Perm.parse("(1 2 3)(4 5)", 5)], 5)
    assert parse_generators(G.to_text()) == G

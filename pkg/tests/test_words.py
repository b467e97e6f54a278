import pytest
from hypothesis import given, strategies as st

from amalgam_cgt.catalog import NAMES, catalog, f_from_amalgam, presentation
from amalgam_cgt.presentation import (PresentationError, PresentationSyntaxError, UndeclaredGeneratorError,
                                      amalgamated_presentation, expand_sugar, parse_expression,
                                      parse_presentation, parse_word)
from amalgam_cgt.words import Word, comm, cyclic_reduce, free_reduce, gen, verify_free_identities

letters = st.integers(min_value=-4, max_value=4).filter(bool)
raw_words = st.lists(letters, max_size=40)


def is_reduced(w):
    return all(w[i] != -w[i + 1] for i in range(len(w) - 1))


@given(raw_words)
def test_free_reduce_idempotent_and_shrinking(w):
    r = free_reduce(w)
    assert free_reduce(r) == r
    assert len(r) <= len(w)
    assert is_reduced(r)


@given(raw_words, raw_words)
def test_product_with_inverse(u, v):
    u, v = Word(u), Word(v)
    assert u * ~u == Word()
    assert ~(u * v) == ~v * ~u


@given(raw_words)
def test_cyclic_reduce_is_conjugate(w):
    w = Word(w)
    c = cyclic_reduce(w)
    assert len(c) <= len(w)
    if c:
        assert c[0] != -c[-1]


def test_free_reduce_examples():
    a, b = 1, 2
    assert free_reduce([a, -a]) == Word()
    assert free_reduce([a, b, -b, a]) == Word([a, a])
    assert free_reduce([-a, -b, a, b]) == Word([-a, -b, a, b])
    with pytest.raises(ValueError):
        free_reduce([0])


def test_sugar():
    names = ["a", "b", "t"]
    assert parse_word("[a,b]", names) == Word([-1, -2, 1, 2])
    assert parse_word("a^t", names) == Word([-3, 1, 3])
    a, b = gen(1), gen(2)
    assert parse_word("[a,[a,b]]", names) == comm(a, comm(a, b))
    assert parse_word("a^-2", names) == Word([-1, -1])
    assert parse_word("(a b)^-1", names) == Word([-2, -1])
    assert parse_word("a-1 b", names) == Word([-1, 2])
    assert parse_word("[a,b,t]", names) == comm(comm(a, b), gen(3))
    assert expand_sugar(parse_expression("1", names)) == Word()


def test_free_identities():
    report = verify_free_identities()
    assert len(report) == 2 and all(e["pass"] for e in report)
    a, b, c = gen(1), gen(2), gen(3)
    # perturbed: the factors in the wrong order
    assert comm(a, b * c) != comm(a, b) * comm(a, c).conj(b)


def test_parse_small():
    P = parse_presentation("gens a; rels a^3;")
    assert P.generators == ("a",) and P.relators == (Word([1, 1, 1]),)
    with pytest.raises(UndeclaredGeneratorError):
        parse_presentation("gens a; rels b^2;")
    with pytest.raises(PresentationSyntaxError):
        parse_presentation("gens ; rels a;")
    with pytest.raises(PresentationSyntaxError) as err:
        parse_presentation("gens a; rels a^;")
    assert err.value.pos is not None


def test_chain_reads_pairwise_with_last():
    P = parse_presentation("gens a, b; rels a^3 = b^3 = [a,b]^3 = 1;")
    assert len(P.relators) == 3
    assert P.relators[0] == Word([1, 1, 1])
    P2 = parse_presentation("gens p, q, t; rels p^2 = q^2 = t;")
    assert P2.relators == (Word([1, 1, -3]), Word([2, 2, -3]))


def test_catalog_shapes():
    assert set(NAMES) == {"Zstar", "Xstar", "Ystar", "F", "F1", "F2", "F3", "F4", "C3test", "AGL23"}
    Z = presentation("Zstar")
    assert Z.generators == ("a", "b", "t", "u") and len(Z.relators) == 12
    F, F1 = presentation("F"), presentation("F1")
    assert F1.ngens == 8 and F1.relators[:len(F.relators)] == F.relators
    assert len(F1.relators) == len(F.relators) + 2
    with pytest.raises(KeyError):
        catalog("nosuch")


@pytest.mark.parametrize("name", NAMES)
def test_catalog_round_trip(name):
    P = presentation(name)
    assert parse_presentation(P.to_text()) == P
    assert all(len(r) for r in P.relators)


def test_amalgam_reproduces_f():
    assert f_from_amalgam() == presentation("F")


def test_amalgam_errors():
    P = parse_presentation("gens a, b; rels a^2;")
    Q = parse_presentation("gens c; rels c^3;")
    free = amalgamated_presentation(P, Q, set())
    assert free.generators == ("a", "b", "c") and len(free.relators) == 2
    with pytest.raises(PresentationError):
        amalgamated_presentation(P, Q, {"a"})
    with pytest.raises(PresentationError):
        amalgamated_presentation(P, parse_presentation("gens b; rels b^3;"), set())

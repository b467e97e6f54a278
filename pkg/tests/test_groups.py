import pytest
from hypothesis import given, settings, strategies as st

from amalgam_cgt import groups as gr
from amalgam_cgt.checks import HypothesisError, verify_triple_commutator_congruence
from amalgam_cgt.perm import Perm, PermutationGroup


def c2xc2():
    return PermutationGroup([Perm.parse("(1 2)", 4), Perm.parse("(3 4)", 4)], 4)


def test_c4_is_not_c2xc2():
    assert gr.isomorphism(gr.cyclic(4), c2xc2()) is None
    assert gr.isomorphic(gr.cyclic(4), PermutationGroup([Perm.parse("(1 3 2 4)", 4)], 4))


def test_isomorphism_is_verified():
    A = gr.symmetric(3)
    B = PermutationGroup([Perm.parse("(1 2)(3 4)(5 6)", 6), Perm.parse("(1 3 5)(2 6 4)", 6)], 6)
    assert B.order() == 6
    assert gr.isomorphic(A, B)
    assert not gr.isomorphic(A, gr.cyclic(6))


@pytest.mark.parametrize("G,order", [(gr.cyclic(3), 2), (gr.symmetric(3), 6), (gr.quaternion(), 24),
                                     (c2xc2(), 6)])
def test_automorphism_group_orders(G, order):
    assert gr.automorphisms(G).group.order() == order


def test_inner_automorphisms():
    A = gr.automorphisms(gr.quaternion())
    assert A.inner().order() == 4  # Q8 / Z(Q8)


def test_double_cosets_trivial_cases():
    G = gr.symmetric(4)
    one = gr.trivial(4)
    assert gr.double_coset_count(G, one, one) == 24
    assert gr.double_coset_count(G, G, one) == 1
    H = gr.set_stabilizer(G, [0])
    # Sym(3)\Sym(4)/Sym(3) has two double cosets
    assert gr.double_coset_count(G, H, H) == 2


@settings(max_examples=20)
@given(st.lists(st.permutations(range(5)).map(Perm), min_size=1, max_size=2),
       st.lists(st.permutations(range(5)).map(Perm), min_size=0, max_size=1))
def test_double_cosets_partition(ga, gb):
    G = gr.symmetric(5)
    A = PermutationGroup(ga, 5)
    B = PermutationGroup(gb, 5)
    dcs = gr.double_cosets(G, A, B)
    assert sum(len(d) for d in dcs) == 120
    assert len(set().union(*map(set, dcs))) == 120
    for d in dcs:
        # |AgB| = |A||B| / |A^g meet B|
        g = d[0]
        Ag = PermutationGroup([a.conj(g) for a in A.generators], 5)
        assert len(d) * gr.intersection(Ag, B).order() == A.order() * B.order()


def test_o_p_and_sylow():
    S4 = gr.symmetric(4)
    assert gr.o_p(S4, 2).order() == 4
    assert gr.o_p(S4, 3).order() == 1
    P = gr.sylow_subgroup(S4, 2)
    assert P.order() == 8 and gr.is_p_group(P, 2)
    assert gr.sylow3(gr.affine_general_linear_2_3()).order() == 27
    assert gr.o_p(gr.affine_general_linear_2_3(), 3).order() == 9


def test_series():
    Q = gr.quaternion()
    assert gr.nilpotency_class(Q) == 2
    assert gr.nilpotency_class(gr.symmetric(3)) is None
    assert gr.is_nilpotent(gr.cyclic(5)) == (True, 1)
    assert [H.order() for H in gr.derived_series(gr.symmetric(4))] == [24, 12, 4, 1]
    assert gr.center(Q).order() == 2
    assert gr.exponent(gr.extraspecial_27()) == 3


def test_triple_commutator_congruence():
    assert verify_triple_commutator_congruence(gr.quaternion(), all_elements=True)
    assert verify_triple_commutator_congruence(gr.extraspecial_27(), all_elements=True)
    with pytest.raises(HypothesisError):
        verify_triple_commutator_congruence(gr.symmetric(3))


def test_quotient():
    S4 = gr.symmetric(4)
    V = gr.o_p(S4, 2)
    Q = gr.quotient(S4, V)
    assert Q.group.order() == 6 and gr.recognize(Q.group, "Sym(3)")
    for g in S4.generators:
        for h in S4.generators:
            assert Q.project(g * h) == Q.project(g) * Q.project(h)


def test_reference_groups():
    assert gr.general_linear_2_3().order() == 48
    assert gr.affine_general_linear_2_3().order() == 432
    assert gr.projective_special_linear_2_7().order() == 168
    assert gr.is_simple(gr.projective_special_linear_2_7())
    assert gr.is_simple(gr.alternating(5))
    assert not gr.is_simple(gr.symmetric(4))
    assert gr.identify(gr.quaternion()) == "Q8"
    assert gr.identify(gr.cyclic(4)) is None
    with pytest.raises(KeyError):
        gr.recognize(gr.cyclic(3), "M12")


def test_normalizer_and_centralizer():
    S4 = gr.symmetric(4)
    H = PermutationGroup([Perm.parse("(1 2 3)", 4)], 4)
    assert gr.normalizer(S4, H).order() == 6
    assert gr.centralizer_of(S4, H).order() == 3
    assert gr.centralizer(S4, Perm.parse("(1 2)", 4)).order() == 4
    assert gr.is_normal(S4, gr.alternating(4))
    assert not gr.is_normal(S4, H)


def test_conjugacy_classes():
    sizes = sorted(len(c) for c in gr.conjugacy_classes(gr.symmetric(4)))
    assert sizes == [1, 3, 6, 6, 8]

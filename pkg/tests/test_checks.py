import pytest

from amalgam_cgt import groups as gr
from amalgam_cgt.checks import (HypothesisError, amalgam_double_cosets, burnside_check,
                                feit_thompson_branch, verify_2q8_lemma, verify_agl23_facts,
                                verify_centralizers, verify_feit_thompson_witness)
from amalgam_cgt.perm import Perm, PermutationGroup
from amalgam_cgt.report import Report


def test_report_basics():
    rep = Report("r")
    rep.add("ok", 1, 1, "PAPER")
    rep.note("value", 7)
    assert rep.passed
    rep.add("bad", 1, 2)
    assert not rep.passed and [c.name for c in rep.failures()] == ["bad"]
    assert rep["value"].actual == 7
    d = rep.to_dict()
    assert d["pass"] is False and len(d["claims"]) == 3
    assert "FAIL" in rep.to_text()


# ---- Burnside ------------------------------------------------------------------

def test_burnside_klein_four():
    V = PermutationGroup([Perm.parse("(1 2)(3 4)", 4), Perm.parse("(1 3)(2 4)", 4)], 4)
    rep = burnside_check(V, Perm.parse("(1 2 3)", 4))
    assert rep.passed and rep["class"].actual == 1


def test_burnside_c4xc4_matrix():
    a, b = Perm.parse("(1 2 3 4)", 8), Perm.parse("(5 6 7 8)", 8)
    Q = PermutationGroup([a, b], 8)
    # (i, j) -> (i, j) [[0,-1],[1,-1]] = (j, -i-j)
    zeta = {(a ** i) * (b ** j): (a ** j) * (b ** (-i - j)) for i in range(4) for j in range(4)}
    assert Q.order() == 16
    assert burnside_check(Q, zeta).passed


def test_burnside_rejects_q8_cycle():
    Q = gr.quaternion()
    i, j = Q.generators
    k = i * j
    # i -> j -> k fixes -1, so it is not fixed-point-free
    zeta = {(i ** s) * (j ** t): (j ** s) * (k ** t) for s in range(4) for t in range(2)}
    with pytest.raises(HypothesisError):
        burnside_check(Q, zeta)


def test_burnside_rejects_non_automorphism():
    V = PermutationGroup([Perm.parse("(1 2)(3 4)", 4), Perm.parse("(1 3)(2 4)", 4)], 4)
    els = V.elements()
    bad = {x: x for x in els}
    with pytest.raises(HypothesisError):
        burnside_check(V, bad)


# ---- Feit-Thompson -----------------------------------------------------------

@pytest.mark.parametrize("H,branch", [
    (gr.symmetric(3), "i"),
    (gr.alternating(5), "ii"),
    (gr.projective_special_linear_2_7(), "iii"),
])
def test_feit_thompson_examples(H, branch):
    x = next(g for g in H.elements() if g.order() == 3)
    X = PermutationGroup([x], H.degree)
    res = feit_thompson_branch(H, X)
    assert res.branch == branch
    assert verify_feit_thompson_witness(H, res)


def test_feit_thompson_hypothesis():
    S4 = gr.symmetric(4)
    X = PermutationGroup([Perm.parse("(1 2 3)", 4)], 4)
    res = feit_thompson_branch(S4, X)  # C_S4((123)) = <(123)>
    assert res.branch == "i" and res.N.order() == 4
    C3xC3 = PermutationGroup([Perm.parse("(1 2 3)", 6), Perm.parse("(4 5 6)", 6)], 6)
    with pytest.raises(HypothesisError):
        feit_thompson_branch(C3xC3, PermutationGroup([Perm.parse("(1 2 3)", 6)], 6))


# ---- the order-432 structure lemma ----------------------------------------------

def test_agl23_facts_on_the_affine_group():
    rep = verify_agl23_facts(gr.affine_general_linear_2_3())
    assert rep.passed, rep.to_text()


def test_agl23_facts_negative_control():
    G = gr.direct_product(gr.general_linear_2_3(), gr.cyclic(9))
    assert G.order() == 432
    rep = verify_agl23_facts(G, with_automorphisms=False)
    failed = {c.name for c in rep.failures()}
    assert "(i) O_3(G) elementary abelian" in failed


def test_agl23_facts_rejects_wrong_order():
    with pytest.raises(ValueError):
        verify_agl23_facts(gr.symmetric(4))


def test_double_cosets_in_zstar(zstar):
    assert amalgam_double_cosets(zstar.group) == 2


# ---- the quaternion lemma and centralizers on concrete images ---------------------

@pytest.mark.parametrize("name", ["f1", "f3"])
def test_2q8_lemma(name, request):
    img = request.getfixturevalue(name)
    assert verify_2q8_lemma(img.group, img.labels).passed
    rep = verify_centralizers(img.group, img.labels)
    assert rep.passed


def test_2q8_lemma_with_swapped_labels(f3):
    L = dict(f3.labels)
    L["p"], L["q"], L["r"], L["s"] = L["r"], L["s"], L["p"], L["q"]
    rep = verify_2q8_lemma(f3.group, L)
    assert not rep.passed

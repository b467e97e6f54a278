import itertools

import pytest

from amalgam_cgt import designs
from amalgam_cgt.perm import Perm


@pytest.fixture(scope="module")
def S():
    return designs.build_steiner()


@pytest.fixture(scope="module")
def M(S):
    return designs.automorphism_group(S)


def test_golay_code():
    words = designs.codewords()
    assert len(set(words)) == 729
    weights = {}
    for w in words:
        k = sum(1 for x in w if x)
        weights[k] = weights.get(k, 0) + 1
    # weight enumerator of the extended ternary Golay code
    assert weights == {0: 1, 6: 264, 9: 440, 12: 24}


def test_steiner_counts(S):
    assert len(S.blocks) == 132
    for k, n in [(1, 66), (2, 30), (3, 12), (4, 4), (5, 1)]:
        for pts in itertools.islice(itertools.combinations(designs.POINTS, k), 20):
            assert S.count_through(pts) == n


def test_check_steiner_rejects_a_damaged_design(S):
    bad = designs.SteinerSystem(S.blocks[1:])
    with pytest.raises(designs.SteinerError):
        designs.check_steiner(bad)
    swapped = designs.SteinerSystem(S.blocks[:-1] + (frozenset({1, 2, 3, 4, 5, 6}),))
    if swapped.blocks[-1] not in S.block_set:
        with pytest.raises(designs.SteinerError):
            designs.check_steiner(swapped)


def test_text_round_trip(S):
    assert designs.SteinerSystem.from_text(S.to_text()).block_set == S.block_set
    with pytest.raises(ValueError):
        designs.SteinerSystem.from_text("steiner-system 2\n")


def test_linked_threes(S):
    lts = designs.linked_threes(S)
    assert len(lts) == 220
    # every triple lies in the same number of linked threes
    counts = {}
    for L in lts:
        for t in L:
            counts[t] = counts.get(t, 0) + 1
    assert len(counts) == 220 and set(counts.values()) == {4}
    assert sum(1 for _ in designs.partitions_into_triples()) == 15400


def test_automorphism_group(S, M):
    assert M.order() == 95040
    assert all(designs.is_automorphism(S, g) for g in M.generators)
    assert M.is_transitive()
    assert not designs.is_automorphism(S, Perm.parse("(1 2)", 12))


def test_budget(S):
    with pytest.raises(designs.BacktrackBudgetExceeded):
        designs.automorphism_group(S, budget=10)


def test_triple_action(M):
    trs, T = designs.triple_action(M)
    assert len(trs) == 220 and T.order() == 95040
    assert T.is_transitive()

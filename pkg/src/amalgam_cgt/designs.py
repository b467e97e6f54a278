"""The Steiner system S(5,6,12) from the extended ternary Golay code, its
linked threes and its automorphism group.

Points are 1..12 in the public interface; the automorphism group acts on
0..11 like every other permutation group here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .perm import Perm, PermutationGroup

# generator matrix [I_6 | GOLAY_A] of the extended ternary Golay code; the
# exhaustive Steiner check below is what vouches for it
GOLAY_A = (
    (0, 1, 1, 1, 1, 1),
    (1, 0, 1, 2, 2, 1),
    (1, 1, 0, 1, 2, 2),
    (1, 2, 1, 0, 1, 2),
    (1, 2, 2, 1, 0, 1),
    (1, 1, 2, 2, 1, 0),
)

POINTS = tuple(range(1, 13))
DESIGN_FORMAT_VERSION = 1


class SteinerError(ValueError):
    pass


def generator_matrix() -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(6)] + list(GOLAY_A[i]) for i in range(6)]


def codewords() -> list[tuple[int, ...]]:
    G = generator_matrix()
    out = []
    for coeffs in itertools.product(range(3), repeat=6):
        out.append(tuple(sum(c * G[i][j] for i, c in enumerate(coeffs)) % 3 for j in range(12)))
    return out


@dataclass(frozen=True)
class SteinerSystem:
    blocks: tuple[frozenset, ...]

    @cached_property
    def block_set(self) -> frozenset:
        return frozenset(self.blocks)

    def block_containing(self, five) -> frozenset:
        five = frozenset(five)
        for b in self.blocks:
            if five <= b:
                return b
        raise KeyError(sorted(five))

    @cached_property
    def _five_index(self) -> dict:
        idx = {}
        for b in self.blocks:
            for f in itertools.combinations(sorted(b), 5):
                idx[f] = b
        return idx

    def completing_point(self, five) -> int:
        """The sixth point of the unique block through a 5-set."""
        key = tuple(sorted(five))
        (x,) = self._five_index[key] - set(key)
        return x

    def count_through(self, points) -> int:
        s = frozenset(points)
        return sum(1 for b in self.blocks if s <= b)

    def to_text(self) -> str:
        lines = [f"steiner-system {DESIGN_FORMAT_VERSION}", "points 12", f"blocks {len(self.blocks)}"]
        lines.extend(" ".join(str(x) for x in sorted(b)) for b in self.blocks)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SteinerSystem":
        lines = [ln.strip() for ln in text.strip().splitlines()]
        if not lines or lines[0] != f"steiner-system {DESIGN_FORMAT_VERSION}":
            raise ValueError("not a version-1 design file")
        n = int(lines[2].split()[1])
        blocks = tuple(frozenset(int(x) for x in ln.split()) for ln in lines[3:3 + n])
        S = cls(blocks)
        check_steiner(S)
        return S


def check_steiner(S: SteinerSystem) -> None:
    """Every 5-subset of the 12 points lies in exactly one block."""
    if any(len(b) != 6 or not b <= set(POINTS) for b in S.blocks):
        raise SteinerError("blocks must be 6-subsets of 1..12")
    cover = {}
    for b in S.blocks:
        for f in itertools.combinations(sorted(b), 5):
            cover[f] = cover.get(f, 0) + 1
    bad = [f for f in itertools.combinations(POINTS, 5) if cover.get(f, 0) != 1]
    if bad:
        raise SteinerError(f"{len(bad)} five-subsets not covered exactly once, e.g. {bad[0]}")


def build_steiner() -> SteinerSystem:
    """Supports of the weight-6 codewords, sorted."""
    supports = {frozenset(i + 1 for i, x in enumerate(c) if x)
                for c in codewords() if sum(1 for x in c if x) == 6}
    blocks = tuple(sorted(supports, key=lambda b: sorted(b)))
    S = SteinerSystem(blocks)
    check_steiner(S)
    return S


# ---- linked threes ---------------------------------------------------------------------

def triples() -> list[tuple[int, int, int]]:
    return list(itertools.combinations(POINTS, 3))


def partitions_into_triples(points=POINTS):
    """All partitions into 3-sets, each as a sorted tuple of sorted triples."""
    points = tuple(points)
    if not points:
        yield ()
        return
    first, rest = points[0], points[1:]
    for pair in itertools.combinations(rest, 2):
        left = tuple(x for x in rest if x not in pair)
        for tail in partitions_into_triples(left):
            yield ((first,) + pair,) + tail


def is_linked(S: SteinerSystem, parts) -> bool:
    return all(frozenset(x) | frozenset(y) in S.block_set for x, y in itertools.combinations(parts, 2))


def linked_threes(S: SteinerSystem) -> list[tuple]:
    """All partitions of the points into four triples, any two of which form a block."""
    check_steiner(S)
    return sorted(p for p in partitions_into_triples() if is_linked(S, p))


# ---- automorphisms ------------------------------------------------------------------------

class BacktrackBudgetExceeded(RuntimeError):
    pass


def is_automorphism(S: SteinerSystem, g: Perm) -> bool:
    """g acts on 0-based points."""
    return all(frozenset(g[x - 1] + 1 for x in b) in S.block_set for b in S.blocks)


def _propagate(S: SteinerSystem, m: dict) -> dict | None:
    """Close a partial map under 'five points determine the sixth'."""
    m = dict(m)
    changed = True
    while changed:
        changed = False
        dom = sorted(m)
        if len(dom) < 5:
            return m
        for five in itertools.combinations(dom, 5):
            x = S.completing_point(five)
            y = S.completing_point([m[i] for i in five])
            if x in m:
                if m[x] != y:
                    return None
            else:
                if y in m.values():
                    return None
                m[x] = y
                changed = True
        if len(m) == 12:
            return m
    return m


def _extend(S: SteinerSystem, m: dict, budget: list) -> dict | None:
    m = _propagate(S, m)
    if m is None:
        return None
    budget[0] -= 1
    if budget[0] < 0:
        raise BacktrackBudgetExceeded("automorphism search ran out of steps")
    if len(m) == 12:
        g = Perm(m[i + 1] - 1 for i in range(12))
        return m if is_automorphism(S, g) else None
    x = min(set(POINTS) - set(m))
    for y in POINTS:
        if y in m.values():
            continue
        m2 = dict(m)
        m2[x] = y
        out = _extend(S, m2, budget)
        if out is not None:
            return out
    return None


def automorphism_group(S: SteinerSystem, budget: int = 1_000_000) -> PermutationGroup:
    """Aut(S) on 0-based points.

    Level by level along the base 1, 2, 3, ...: for every possible image of
    the next base point, search for one automorphism fixing the earlier base
    points and realizing it.  The representatives found form transversals,
    so the group order is the product of the transversal sizes; the
    stabilizer chain recomputes it independently.
    """
    check_steiner(S)
    steps = [budget]
    gens: list[Perm] = []
    predicted = 1
    fixed: dict = {}
    for beta in POINTS:
        found = 0
        for gamma in POINTS:
            if gamma in fixed.values():
                continue
            m = dict(fixed)
            m[beta] = gamma
            full = _extend(S, m, steps)
            if full is None:
                continue
            found += 1
            g = Perm(full[i + 1] - 1 for i in range(12))
            if not g.is_identity():
                gens.append(g)
        predicted *= found
        fixed[beta] = beta
        if found == 1 and predicted > 1 and _propagate(S, fixed) is not None \
                and len(_propagate(S, fixed)) == 12:
            break
    G = PermutationGroup(gens, 12)
    if G.order() != predicted:
        raise RuntimeError(f"transversal product {predicted} disagrees with group order {G.order()}")
    return G


def triple_action(G: PermutationGroup) -> tuple[list, PermutationGroup]:
    trs = [frozenset(x - 1 for x in t) for t in triples()]
    idx = {t: i for i, t in enumerate(trs)}
    gens = [Perm(idx[frozenset(g[x] for x in t)] for t in trs) for g in G.generators]
    return trs, PermutationGroup(gens, len(trs))

"""Structural algorithms for permutation groups at desk scale.

Centralizers, normalizers and set stabilizers go through orbit-stabilizer
(:func:`amalgam_cgt.perm.stabilizer`); anything that needs the full element
list is guarded by an element cap.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .perm import (ELEMENT_CAP, CapExceeded, Perm, PermutationGroup, comm, conj_action,
                   stabilizer)


def generated(gens: Iterable[Perm], degree: int, **kw) -> PermutationGroup:
    return PermutationGroup(list(gens), degree, **kw)


def trivial(degree: int) -> PermutationGroup:
    return PermutationGroup([], degree)


# ---- centralizers, normalizers, closures ---------------------------------------

def centralizer(G: PermutationGroup, g: Perm) -> PermutationGroup:
    """C_G(g) for any permutation g of the same degree."""
    return stabilizer(G, Perm(g), conj_action)


def centralizer_of(G: PermutationGroup, H: PermutationGroup | Sequence[Perm]) -> PermutationGroup:
    gens = H.generators if isinstance(H, PermutationGroup) else list(H)
    C = G
    for h in gens:
        C = centralizer(C, h)
    return C


def center(G: PermutationGroup) -> PermutationGroup:
    return centralizer_of(G, G)


def element_set(H: PermutationGroup, cap: int = ELEMENT_CAP) -> frozenset:
    return frozenset(H.elements(cap))


def normalizer(G: PermutationGroup, H: PermutationGroup) -> PermutationGroup:
    """N_G(H), as the stabilizer of H's element set under conjugation."""
    def act(s, g):
        return frozenset(x.conj(g) for x in s)
    return stabilizer(G, element_set(H), act)


def set_stabilizer(G: PermutationGroup, points: Iterable[int]) -> PermutationGroup:
    return stabilizer(G, frozenset(points), lambda s, g: frozenset(g[i] for i in s))


def normal_closure(G: PermutationGroup, S: PermutationGroup | Iterable[Perm]) -> PermutationGroup:
    gens = list(S.generators if isinstance(S, PermutationGroup) else S)
    gens = [g for g in gens if not g.is_identity()]
    N = PermutationGroup(gens, G.degree)
    queue = list(gens)
    while queue:
        n = queue.pop()
        for g in G.generators:
            c = n.conj(g)
            if not N.contains(c):
                gens.append(c)
                queue.append(c)
                N = PermutationGroup(gens, G.degree)
    return N


def commutator_subgroup(G: PermutationGroup, A: PermutationGroup, B: PermutationGroup) -> PermutationGroup:
    """[A, B] for subgroups A, B normalized by G (closure taken in G)."""
    comms = [comm(a, b) for a in A.generators for b in B.generators]
    return normal_closure(G, comms)


def derived_subgroup(G: PermutationGroup) -> PermutationGroup:
    return commutator_subgroup(G, G, G)


def lower_central_series(G: PermutationGroup) -> list[PermutationGroup]:
    """G = G_1 > G_2 > ... until the terms stop shrinking."""
    series = [G]
    while True:
        nxt = commutator_subgroup(G, series[-1], G)
        if nxt.order() == series[-1].order():
            return series
        series.append(nxt)


def derived_series(G: PermutationGroup) -> list[PermutationGroup]:
    series = [G]
    while True:
        nxt = derived_subgroup(series[-1])
        if nxt.order() == series[-1].order():
            return series
        series.append(nxt)


def nilpotency_class(G: PermutationGroup) -> int | None:
    """Class of G, or None when G is not nilpotent.  The trivial group has class 0."""
    series = lower_central_series(G)
    if series[-1].order() != 1:
        return None
    return len(series) - 1


def is_nilpotent(G: PermutationGroup) -> tuple[bool, int | None]:
    c = nilpotency_class(G)
    return c is not None, c


def is_normal(G: PermutationGroup, N: PermutationGroup) -> bool:
    return all(N.contains(n.conj(g)) for n in N.generators for g in G.generators)


def intersection(A: PermutationGroup, B: PermutationGroup, cap: int = ELEMENT_CAP) -> PermutationGroup:
    """A ∩ B by filtering the smaller group's elements."""
    if A.order() > B.order():
        A, B = B, A
    return PermutationGroup([x for x in A.elements(cap) if B.contains(x)], A.degree)


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def is_p_group(G: PermutationGroup, p: int) -> bool:
    n = G.order()
    return p_part(n, p) == n


# ---- Sylow subgroups and O_p ------------------------------------------------------

def _p_power_part(g: Perm, p: int) -> Perm:
    o = g.order()
    return g ** (o // p_part(o, p))


def sylow_subgroup(G: PermutationGroup, p: int, seed: int = 0) -> PermutationGroup:
    """A Sylow p-subgroup.

    Start from the p-part of some element and keep adjoining p-elements of
    the normalizer that lie outside the current subgroup; the result is a
    p-group at every step.  Random elements come from a seeded generator,
    so the result is reproducible.
    """
    target = p_part(G.order(), p)
    P = trivial(G.degree)
    if target == 1:
        return P
    rng = random.Random(seed)
    N = G
    misses = 0
    while P.order() < target:
        g = _p_power_part(N.random_element(rng), p)
        if g.is_identity() or P.contains(g):
            misses += 1
            if misses > 200 * max(1, N.order() // max(1, P.order())):
                raise RuntimeError("Sylow search stalled")
            continue
        P = PermutationGroup(P.generators + [g], G.degree)
        N = normalizer(G, P) if P.order() < target else N
        misses = 0
    return P


def sylow3(G: PermutationGroup) -> PermutationGroup:
    return sylow_subgroup(G, 3)


def conjugates(G: PermutationGroup, H: PermutationGroup) -> list[frozenset]:
    """Element sets of the distinct conjugates of H in G."""
    from .perm import action_orbit

    def act(s, g):
        return frozenset(x.conj(g) for x in s)
    orbit, _ = action_orbit(G, element_set(H), act)
    return orbit


def o_p(G: PermutationGroup, p: int) -> PermutationGroup:
    """Largest normal p-subgroup: the intersection of the Sylow p-subgroups."""
    P = sylow_subgroup(G, p)
    if P.order() == 1:
        return P
    common = None
    for s in conjugates(G, P):
        common = s if common is None else common & s
        if len(common) == 1:
            break
    return PermutationGroup(sorted(common), G.degree)


# ---- elements, orders, classes ----------------------------------------------------

def order_histogram(G: PermutationGroup | Iterable[Perm], cap: int = ELEMENT_CAP) -> dict[int, int]:
    elems = G.elements(cap) if isinstance(G, PermutationGroup) else G
    return dict(sorted(Counter(x.order() for x in elems).items()))


def exponent(G: PermutationGroup) -> int:
    return math.lcm(*order_histogram(G))


def conjugacy_classes(G: PermutationGroup, cap: int = 5000) -> list[list[Perm]]:
    elems = G.elements(cap)
    seen = set()
    classes = []
    for x in elems:
        if x in seen:
            continue
        cls = [x]
        seen.add(x)
        for y in cls:
            for g in G.generators:
                z = y.conj(g)
                if z not in seen:
                    seen.add(z)
                    cls.append(z)
        classes.append(cls)
    return classes


def small_generating_set(G: PermutationGroup, elems: Sequence[Perm] | None = None) -> list[Perm]:
    """A short generating set, chosen greedily in element order: first an
    element of largest order, then whatever enlarges the group most."""
    n = G.order()
    elems = elems if elems is not None else G.elements()
    if n == 1:
        return []
    best = max(elems, key=lambda x: x.order())
    gens = [best]
    cur = PermutationGroup(gens, G.degree).order()
    while cur < n:
        pick, pick_order = None, cur
        for y in elems:
            o = PermutationGroup(gens + [y], G.degree).order()
            if o > pick_order:
                pick, pick_order = y, o
                if o == n:
                    break
        gens.append(pick)
        cur = pick_order
    return gens


# ---- homomorphisms between small groups -------------------------------------------

class _Regular:
    """Element list of a group with lazily computed right-multiplication columns."""

    def __init__(self, G: PermutationGroup, cap: int):
        self.group = G
        self.elems = G.elements(cap)
        self.index = {x: i for i, x in enumerate(self.elems)}
        self._cols: dict[Perm, np.ndarray] = {}

    def col(self, h: Perm) -> np.ndarray:
        c = self._cols.get(h)
        if c is None:
            c = np.fromiter((self.index[x * h] for x in self.elems), dtype=np.int64,
                            count=len(self.elems))
            self._cols[h] = c
        return c


@dataclass
class Homomorphism:
    """A map between permutation groups given on generators and, once
    verified, on every element."""
    source: PermutationGroup
    target: PermutationGroup
    gens: list[Perm]
    images: list[Perm]
    table: dict[Perm, Perm]

    def __call__(self, g: Perm) -> Perm:
        return self.table[Perm(g)]

    def is_bijective(self) -> bool:
        return len(set(self.table.values())) == len(self.table) == self.target.order()


class _Tree:
    """Breadth-first spanning tree of a Cayley graph, used to extend generator
    images to all elements and to check every edge."""

    def __init__(self, R: _Regular, gens: Sequence[Perm]):
        self.R = R
        self.gens = list(gens)
        n = len(R.elems)
        self.targets = [R.col(g) for g in gens]
        parent = np.full(n, -1, dtype=np.int64)
        via = np.full(n, -1, dtype=np.int64)
        e = R.index[R.group.identity]
        self.root = e
        order = [e]
        seen = np.zeros(n, dtype=bool)
        seen[e] = True
        for i in order:
            for s, t in enumerate(self.targets):
                j = int(t[i])
                if not seen[j]:
                    seen[j] = True
                    parent[j] = i
                    via[j] = s
                    order.append(j)
        if len(order) != n:
            raise ValueError("generators do not generate the group")
        self.order = order
        self.parent = parent
        self.via = via

    def extend(self, RH: _Regular, images: Sequence[Perm]) -> np.ndarray | None:
        """Index array of the images of all elements, or None if the
        generator images do not define a homomorphism."""
        cols = [RH.col(h) for h in images]
        img = np.empty(len(self.order), dtype=np.int64)
        img[self.root] = RH.index[RH.group.identity]
        for j in self.order[1:]:
            img[j] = cols[self.via[j]][img[self.parent[j]]]
        for s, t in enumerate(self.targets):
            if not np.array_equal(cols[s][img], img[t]):
                return None
        return img


def _prescreen(gens, cand):
    """Orders of short words in the generators must match those in the candidates."""
    k = len(cand)
    for i in range(k):
        if gens[i].order() != cand[i].order():
            return False
        for j in range(i):
            if (gens[j] * gens[i]).order() != (cand[j] * cand[i]).order():
                return False
            if (gens[j] * ~gens[i]).order() != (cand[j] * ~cand[i]).order():
                return False
    return True


def isomorphism(G: PermutationGroup, H: PermutationGroup, cap: int = 5000) -> Homomorphism | None:
    """An isomorphism G -> H, or None if there is none.

    Element-order histograms are compared first.  The image of the first
    generator is taken up to conjugacy in H; the others range over elements
    of matching order, pruned by the orders of products.  A candidate is
    accepted only after the induced map is checked on every edge of G's
    Cayley graph and found bijective.
    """
    n = G.order()
    if n != H.order():
        return None
    if n > cap:
        raise CapExceeded(f"isomorphism search limited to order {cap}, got {n}")
    RG, RH = _Regular(G, cap), _Regular(H, cap)
    if order_histogram(RG.elems) != order_histogram(RH.elems):
        return None
    if n == 1:
        return Homomorphism(G, H, [], [], {G.identity: H.identity})
    gens = small_generating_set(G, RG.elems)
    tree = _Tree(RG, gens)
    by_order: dict[int, list[Perm]] = {}
    for h in RH.elems:
        by_order.setdefault(h.order(), []).append(h)
    first = [cls[0] for cls in conjugacy_classes(H, cap) if cls[0].order() == gens[0].order()]

    def search(cand):
        k = len(cand)
        if k == len(gens):
            img = tree.extend(RH, cand)
            if img is not None and len(set(img.tolist())) == n:
                return img
            return None
        pool = first if k == 0 else by_order.get(gens[k].order(), [])
        for h in pool:
            nxt = cand + [h]
            if _prescreen(gens, nxt):
                img = search(nxt)
                if img is not None:
                    return img
        return None

    img = search([])
    if img is None:
        return None
    table = {RG.elems[i]: RH.elems[int(img[i])] for i in range(n)}
    images = [table[g] for g in gens]
    return Homomorphism(G, H, gens, images, table)


def isomorphic(G: PermutationGroup, H: PermutationGroup, cap: int = 5000) -> bool:
    return isomorphism(G, H, cap) is not None


@dataclass
class AutomorphismGroup:
    """Aut(G) acting on the element list ``elements`` of G."""
    group: PermutationGroup
    elements: list[Perm]
    index: dict

    def as_perm(self, mapping: Callable[[Perm], Perm]) -> Perm:
        return Perm(self.index[mapping(x)] for x in self.elements)

    def inner(self) -> PermutationGroup:
        """Inn(G): conjugations by the generators of G."""
        gens = [self.as_perm(lambda x, g=g: x.conj(g)) for g in self.source_gens]
        return PermutationGroup(gens, len(self.elements))

    source_gens: list[Perm] = None


def automorphisms(G: PermutationGroup, cap: int = 200) -> AutomorphismGroup:
    """All automorphisms of G, found by trying every assignment of images
    to a fixed small generating set, as permutations of G's elements."""
    n = G.order()
    if n > cap:
        raise CapExceeded(f"automorphism search limited to order {cap}, got {n}")
    R = _Regular(G, cap)
    gens = small_generating_set(G, R.elems)
    tree = _Tree(R, gens)
    pools = [[h for h in R.elems if h.order() == g.order()] for g in gens]
    auts = []
    for cand in itertools.product(*pools):
        if not _prescreen(gens, list(cand)):
            continue
        img = tree.extend(R, cand)
        if img is not None and len(set(img.tolist())) == n:
            auts.append(Perm(img.tolist()))
    A = PermutationGroup(auts, n, order_hint=len(auts))
    if A.order() != len(auts):
        raise RuntimeError("automorphisms found do not form a group")
    out = AutomorphismGroup(A, R.elems, R.index)
    out.source_gens = list(G.generators)
    return out


# ---- double cosets and quotients -------------------------------------------------

def double_cosets(G: PermutationGroup, A: PermutationGroup, B: PermutationGroup,
                  cap: int = ELEMENT_CAP) -> list[list[Perm]]:
    """The (A, B)-double cosets of G, each as a list of elements."""
    elems = G.elements(cap)
    seen = set()
    out = []
    for g in elems:
        if g in seen:
            continue
        dc = [g]
        seen.add(g)
        for x in dc:
            for y in [(~a) * x for a in A.generators] + [x * b for b in B.generators]:
                if y not in seen:
                    seen.add(y)
                    dc.append(y)
        out.append(dc)
    return out


def double_coset_count(G: PermutationGroup, A: PermutationGroup, B: PermutationGroup,
                       cap: int = ELEMENT_CAP) -> int:
    return len(double_cosets(G, A, B, cap))


@dataclass
class Quotient:
    """G/N as a permutation group on the right cosets of N."""
    group: PermutationGroup
    cosets: list[frozenset]
    reps: list[Perm]
    _where: dict

    def project(self, g: Perm) -> Perm:
        return Perm(self._where[self.reps[c] * g] for c in range(len(self.reps)))

    def coset_of(self, g: Perm) -> int:
        return self._where[g]


def quotient(G: PermutationGroup, N: PermutationGroup, cap: int = 100_000) -> Quotient:
    elems = G.elements(cap)
    Nel = N.elements(cap)
    where: dict[Perm, int] = {}
    cosets, reps = [], []
    for g in elems:
        if g in where:
            continue
        c = frozenset(n * g for n in Nel)
        for x in c:
            where[x] = len(reps)
        cosets.append(c)
        reps.append(g)
    m = len(reps)
    gens = [Perm(where[reps[c] * s] for c in range(m)) for s in G.generators]
    return Quotient(PermutationGroup(gens, m), cosets, reps, where)


# ---- a few named groups ------------------------------------------------------------

def symmetric(n: int) -> PermutationGroup:
    if n < 2:
        return trivial(max(n, 1))
    gens = [Perm.from_cycles([[1, 2]], n)]
    if n > 2:
        gens.append(Perm.from_cycles([list(range(1, n + 1))], n))
    return PermutationGroup(gens, n)


def alternating(n: int) -> PermutationGroup:
    gens = [Perm.from_cycles([[1, 2, k]], n) for k in range(3, n + 1)]
    return PermutationGroup(gens, n)


def cyclic(n: int) -> PermutationGroup:
    return PermutationGroup([Perm.from_cycles([list(range(1, n + 1))], n)] if n > 1 else [], n)


def direct_product(*groups: PermutationGroup) -> PermutationGroup:
    degree = sum(G.degree for G in groups)
    gens = []
    off = 0
    for G in groups:
        for g in G.generators:
            img = list(range(degree))
            for i, j in enumerate(g):
                img[off + i] = off + j
            gens.append(Perm(img))
        off += G.degree
    return PermutationGroup(gens, degree)


def regular_representation(elems: Sequence[Perm], gens: Sequence[Perm]) -> PermutationGroup:
    index = {x: i for i, x in enumerate(elems)}
    return PermutationGroup([Perm(index[x * g] for x in elems) for g in gens], len(elems))


def quaternion() -> PermutationGroup:
    """Q8 in its regular action on 8 points (1, i, j, k and their negatives)."""
    # elements as (sign, unit) with units 0=1, 1=i, 2=j, 3=k
    mult = {(0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
            (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
            (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
            (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0)}
    elems = [(s, u) for s in (1, -1) for u in range(4)]
    idx = {e: i for i, e in enumerate(elems)}

    def right(g):
        out = []
        for s, u in elems:
            sg, ug = mult[(u, g)]
            out.append(idx[(s * sg, ug)])
        return Perm(out)
    return PermutationGroup([right(1), right(2)], 8)


def _gf3_vectors(n: int):
    return list(itertools.product(range(3), repeat=n))


def general_linear_2_3() -> PermutationGroup:
    """GL_2(3) on the 8 nonzero vectors of GF(3)^2 (row vectors, right action)."""
    vecs = [v for v in _gf3_vectors(2) if any(v)]
    idx = {v: i for i, v in enumerate(vecs)}

    def act(m):
        return Perm(idx[((v[0] * m[0][0] + v[1] * m[1][0]) % 3,
                         (v[0] * m[0][1] + v[1] * m[1][1]) % 3)] for v in vecs)
    return PermutationGroup([act(((1, 1), (0, 1))), act(((0, 1), (2, 0))), act(((2, 0), (0, 1)))], 8)


def affine_general_linear_2_3() -> PermutationGroup:
    """AGL_2(3) on the 9 points of GF(3)^2."""
    pts = _gf3_vectors(2)
    idx = {v: i for i, v in enumerate(pts)}

    def lin(m):
        return Perm(idx[((v[0] * m[0][0] + v[1] * m[1][0]) % 3,
                         (v[0] * m[0][1] + v[1] * m[1][1]) % 3)] for v in pts)
    trans = Perm(idx[((v[0] + 1) % 3, v[1])] for v in pts)
    return PermutationGroup([trans, lin(((1, 1), (0, 1))), lin(((0, 1), (2, 0))), lin(((2, 0), (0, 1)))], 9)


def projective_special_linear_2_7() -> PermutationGroup:
    """PSL_2(7) on the 8 points of the projective line over GF(7)."""
    inf = 7
    pts = list(range(8))

    def mobius(a, b, c, d):
        out = []
        for x in pts:
            if x == inf:
                out.append(inf if c == 0 else (a * pow(c, -1, 7)) % 7)
                continue
            num, den = (a * x + b) % 7, (c * x + d) % 7
            out.append(inf if den == 0 else (num * pow(den, -1, 7)) % 7)
        return Perm(out)
    return PermutationGroup([mobius(1, 1, 0, 1), mobius(0, 6, 1, 0), mobius(3, 0, 0, 5)], 8)


def extraspecial_27() -> PermutationGroup:
    """3^{1+2} of exponent 3: translations and shears of GF(3)^2."""
    pts = _gf3_vectors(2)
    idx = {v: i for i, v in enumerate(pts)}
    tx = Perm(idx[((v[0] + 1) % 3, v[1])] for v in pts)
    shear = Perm(idx[(v[0], (v[0] + v[1]) % 3)] for v in pts)
    return PermutationGroup([tx, shear], 9)


# ---- fingerprints of a few small groups ---------------------------------------------

def fingerprint(G: PermutationGroup) -> tuple:
    """Order, element-order histogram and order of the derived subgroup."""
    return (G.order(), tuple(order_histogram(G).items()), derived_subgroup(G).order())


_REFERENCE = {
    "Q8": quaternion,
    "Sym(3)": lambda: symmetric(3),
    "C3": lambda: cyclic(3),
    "GL2(3)": general_linear_2_3,
    "Alt(5)": lambda: alternating(5),
    "PSL2(7)": projective_special_linear_2_7,
}


def reference_fingerprints() -> dict[str, tuple]:
    """Fingerprints computed from explicitly constructed copies."""
    return {name: fingerprint(make()) for name, make in _REFERENCE.items()}


_FP_CACHE: dict[str, tuple] = {}


def recognize(G: PermutationGroup, name: str) -> bool:
    """True when G has the fingerprint of the named reference group.

    At these orders the fingerprint determines the group; each entry is
    computed once from an explicit copy.
    """
    if not _FP_CACHE:
        _FP_CACHE.update(reference_fingerprints())
    if name not in _FP_CACHE:
        raise KeyError(f"no reference group {name!r}; known: {', '.join(_REFERENCE)}")
    return fingerprint(G) == _FP_CACHE[name]


def identify(G: PermutationGroup) -> str | None:
    if not _FP_CACHE:
        _FP_CACHE.update(reference_fingerprints())
    fp = fingerprint(G)
    for name, ref in _FP_CACHE.items():
        if fp == ref:
            return name
    return None


def is_simple(G: PermutationGroup, cap: int = 5000) -> bool:
    """No proper nontrivial normal subgroup: the normal closure of every
    conjugacy-class representative is trivial or all of G."""
    n = G.order()
    if n == 1:
        return False
    for cls in conjugacy_classes(G, cap):
        x = cls[0]
        if x.is_identity():
            continue
        if normal_closure(G, [x]).order() != n:
            return False
    return True

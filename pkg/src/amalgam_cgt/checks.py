"""Structural checks on the concrete groups: the AGL_2(3) facts, the two
quaternion subgroups, involution centralizers, Burnside's identities and
the Feit-Thompson trichotomy for a self-centralizing subgroup of order 3."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Mapping

from . import groups as gr
from .perm import Perm, PermutationGroup, action_orbit, comm, conj_action
from .report import Report

LABELS = ("a", "b", "p", "q", "r", "s", "t", "u")


def _sub(G: PermutationGroup, *gens: Perm) -> PermutationGroup:
    return PermutationGroup(list(gens), G.degree)


def same_group(A: PermutationGroup, B: PermutationGroup) -> bool:
    return A.order() == B.order() and all(B.contains(g) for g in A.generators)


def is_elementary_abelian(G: PermutationGroup, p: int) -> bool:
    return G.is_abelian() and all(x.order() in (1, p) for x in G.elements())


def is_extraspecial(S: PermutationGroup) -> bool:
    """Center equal to the derived subgroup and the Frattini subgroup, of prime order."""
    Z = gr.center(S)
    D = gr.derived_subgroup(S)
    if len(gr.prime_factors(S.order())) != 1 or len(gr.prime_factors(Z.order())) != 1 \
            or Z.order() not in gr.prime_factors(S.order()):
        return False
    p = Z.order()
    powers = [x ** p for x in S.generators]
    frattini = gr.normal_closure(S, list(D.generators) + powers)
    return same_group(Z, D) and same_group(Z, frattini)


def verify_triple_commutator_congruence(G: PermutationGroup, all_elements: bool = False) -> bool:
    """[[a,b],c][[b,c],a][[c,a],b] lies in the fourth term of the lower
    central series for every triple of generators (or of elements)."""
    if len(gr.prime_factors(G.order())) > 1:
        raise HypothesisError("G is not a p-group")
    series = gr.lower_central_series(G)
    g4 = series[3] if len(series) > 3 else series[-1]
    pool = G.elements() if all_elements else G.generators
    for a, b, c in itertools.product(pool, repeat=3):
        x = comm(comm(a, b), c) * comm(comm(b, c), a) * comm(comm(c, a), b)
        if not g4.contains(x):
            return False
    return True


# ---- AGL_2(3) -------------------------------------------------------------------------

def verify_agl23_facts(G: PermutationGroup, with_automorphisms: bool = True) -> Report:
    """One group of claims per clause of the structure lemma for a group of order 432."""
    if G.order() != 432:
        raise ValueError(f"expected a group of order 432, got {G.order()}")
    rep = Report("AGL_2(3) facts")

    # (i) the normal 3-subgroup
    O = gr.o_p(G, 3)
    rep.add("(i) |O_3(G)|", 9, O.order(), "PAPER")
    rep.add("(i) O_3(G) elementary abelian", True, is_elementary_abelian(O, 3), "PAPER")
    rep.add("(i) C_G(O_3(G)) = O_3(G)", True, same_group(gr.centralizer_of(G, O), O), "PAPER")
    nontriv = [x for x in O.elements() if not x.is_identity()]
    unique = all(gr.normal_closure(G, [x]).order() == 9 for x in nontriv)
    rep.add("(i) no normal subgroup of order 3 inside O_3(G)", True, unique, "PAPER")
    Q = gr.quotient(G, O)
    rep.add("(i) G/O_3(G) is GL_2(3)", True, gr.recognize(Q.group, "GL2(3)"), "PAPER")
    orbit, _ = action_orbit(G, nontriv[0], conj_action)
    rep.add("(i) G transitive on the nontrivial elements of O_3(G)", 8, len(orbit), "PAPER")

    # (ii) an involution central modulo O_3
    t = None
    for x in G.elements():
        if x.order() == 2:
            xq = Q.project(x)
            if all(xq * g == g * xq for g in Q.group.generators):
                t = x
                break
    if t is None:
        rep.fail("(ii) involution central modulo O_3", "found", "none exists", "PAPER")
    else:
        C = gr.centralizer(G, t)
        rep.add("(ii) C_G(t) is GL_2(3)", True, gr.recognize(C, "GL2(3)"), "PAPER")
        meet = gr.intersection(C, O).order()
        rep.add("(ii) C_G(t) complements O_3(G)", True,
                meet == 1 and C.order() * O.order() == G.order(), "PAPER")

    # (iii) the Sylow 3-subgroup
    S = gr.sylow3(G)
    ZS = gr.center(S)
    rep.add("(iii) |S|", 27, S.order(), "PAPER")
    rep.add("(iii) S extraspecial", True, is_extraspecial(S), "PAPER")
    rep.add("(iii) exponent of S", 3, gr.exponent(S), "PAPER")
    rep.add("(iii) |Z(S)|", 3, ZS.order(), "PAPER")
    Z = gr.normalizer(G, ZS)
    rep.add("(iii) C_G(S) = Z(S)", True, same_group(gr.centralizer_of(G, S), ZS), "PAPER")
    rep.add("(iii) C_Z(S) = Z(S)", True, same_group(gr.centralizer_of(Z, S), ZS), "PAPER")

    # (iv) Z = N_G(Z(S)) has index 4 and is maximal
    rep.add("(iv) index of N_G(Z(S))", 4, G.order() // Z.order(), "PAPER")
    # <Z, g> depends only on the coset Zg
    maximal = True
    covered = set(Z.elements())
    zel = list(covered)
    for g in G.elements():
        if g in covered:
            continue
        covered.update(z * g for z in zel)
        if PermutationGroup(Z.generators + [g], G.degree).order() != G.order():
            maximal = False
            break
    rep.add("(iv) N_G(Z(S)) maximal", True, maximal, "PAPER")

    # (v) automorphisms
    if with_automorphisms:
        rep.extend(verify_automorphism_facts(G, Z))
    return rep


def verify_automorphism_facts(G: PermutationGroup, Z: PermutationGroup) -> Report:
    rep = Report("automorphisms")
    AZ = gr.automorphisms(Z)
    inn = AZ.inner()
    rep.add("(v) |Z(Z)|", 1, gr.center(Z).order(), "PAPER")
    rep.add("(v) |Inn(Z)|", 108, inn.order(), "PAPER")
    rep.add("(v) |Aut(Z)|", 216, AZ.group.order(), "DERIVED")
    rep.add("(v) |Aut(Z) : Inn(Z)|", 2, AZ.group.order() // inn.order(), "PAPER")
    AG = gr.automorphisms(G, cap=500)
    rep.add("(v) Aut(G) = Inn(G)", True,
            gr.center(G).order() == 1 and AG.group.order() == G.order(), "PAPER")
    return rep


def amalgam_double_cosets(Z: PermutationGroup) -> int:
    """Number of (Inn(Z), Inn(Z))-double cosets in Aut(Z)."""
    AZ = gr.automorphisms(Z)
    inn = AZ.inner()
    return gr.double_coset_count(AZ.group, inn, inn)


# ---- the quaternion lemma and the involution centralizer ---------------------------

def _labels(labels: Mapping[str, Perm]) -> dict[str, Perm]:
    missing = [x for x in LABELS if x not in labels]
    if missing:
        raise KeyError(f"missing generator labels: {', '.join(missing)}")
    return {k: Perm(v) for k, v in labels.items()}


def quaternion_pair(labels: Mapping[str, Perm], degree: int):
    """P = <p,q>, R = <r,s>^(pr) and K = <b,u>."""
    L = _labels(labels)
    pr = L["p"] * L["r"]
    P = PermutationGroup([L["p"], L["q"]], degree)
    R = PermutationGroup([L["r"].conj(pr), L["s"].conj(pr)], degree)
    K = PermutationGroup([L["b"], L["u"]], degree)
    return P, R, K


def verify_2q8_lemma(G: PermutationGroup, labels: Mapping[str, Perm]) -> Report:
    L = _labels(labels)
    rep = Report("two quaternion subgroups")
    P, R, K = quaternion_pair(L, G.degree)
    pr = L["p"] * L["r"]
    rep.add("P = <p,q> is Q8", True, gr.recognize(P, "Q8"), "PAPER")
    rep.add("R = <r,s>^(pr) is Q8", True, gr.recognize(R, "Q8"), "PAPER")
    rep.add("K = <b,u> is Sym(3)", True, gr.recognize(K, "Sym(3)"), "PAPER")
    rep.add("K normalizes P", True, all(P.contains(x.conj(k)) for x in P.generators for k in K.generators), "PAPER")
    rep.add("K normalizes R", True, all(R.contains(x.conj(k)) for x in R.generators for k in K.generators), "PAPER")
    t = L["t"]
    gens = P.generators + R.generators + K.generators
    rep.add("<P,R>K centralizes t", True, all(g * t == t * g for g in gens), "PAPER")
    PK = PermutationGroup(P.generators + K.generators, G.degree)
    RK = PermutationGroup(R.generators + K.generators, G.degree)
    rep.add("PK is GL_2(3)", True, gr.recognize(PK, "GL2(3)"), "PAPER")
    rep.add("RK is GL_2(3)", True, gr.recognize(RK, "GL2(3)"), "PAPER")
    rep.add("u^(pr) = t", True, L["u"].conj(pr) == t, "PAPER")
    rep.add("a^(pr) = b", True, L["a"].conj(pr) == L["b"], "PAPER")
    rep.add("(ut)^(pr) = u", True, (L["u"] * t).conj(pr) == L["u"], "PAPER")
    return rep


def verify_centralizers(G: PermutationGroup, labels: Mapping[str, Perm]) -> Report:
    """C_H(b) = <b,t> with H = C_G(t); W = <P,R> a 2-group with C_W(b) = <t>."""
    L = _labels(labels)
    b, t = L["b"], L["t"]
    rep = Report("involution centralizer")
    H = gr.centralizer(G, t)
    CHb = gr.centralizer(H, b)
    bt = _sub(G, b, t)
    rep.add("|C_H(b)|", 6, CHb.order(), "PAPER")
    rep.add("C_H(b) = <b,t>", True, same_group(CHb, bt), "PAPER")
    P, R, _ = quaternion_pair(L, G.degree)
    W = PermutationGroup(P.generators + R.generators, G.degree)
    rep.add("W = <P,R> is a 2-group", True, gr.is_p_group(W, 2), "PAPER")
    CWb = gr.centralizer(W, b)
    rep.add("C_W(b) = <t>", True, same_group(CWb, _sub(G, t)), "PAPER")
    rep.note("|W|", W.order())
    rep.note("|C_G(t)|", H.order())
    return rep


# ---- Burnside's identities --------------------------------------------------------------

class HypothesisError(ValueError):
    """A precondition of a structural check does not hold."""


def burnside_check(Q: PermutationGroup, zeta: Perm | Mapping[Perm, Perm],
                   exhaustive_limit: int = 1 << 12, samples: int = 10_000, seed: int = 0) -> Report:
    """Class at most two and [v, w^z] = [v^z, w] = [v, w]^(z^2) for a
    fixed-point-free automorphism z of order 3 of the p-group Q.

    ``zeta`` is either a permutation normalizing Q (acting by conjugation)
    or an explicit map on Q's elements.
    """
    elems = Q.elements()
    if isinstance(zeta, Mapping):
        z = {Perm(k): Perm(v) for k, v in zeta.items()}
    else:
        zeta = Perm(zeta)
        z = {x: x.conj(zeta) for x in elems}
    eset = set(elems)
    if set(z) != eset or set(z.values()) != eset:
        raise HypothesisError("zeta is not a bijection of Q")
    for x in Q.generators:
        for y in Q.generators:
            if z[x * y] != z[x] * z[y]:
                raise HypothesisError("zeta is not a homomorphism")
    if all(z[x] == x for x in elems) or any(z[z[z[x]]] != x for x in elems):
        raise HypothesisError("zeta does not have order 3")
    if any(z[x] == x for x in elems if not x.is_identity()):
        raise HypothesisError("zeta has nontrivial fixed points")
    if len(gr.prime_factors(len(elems))) > 1:
        raise HypothesisError("Q is not a p-group")

    rep = Report("Burnside identities")
    cls = gr.nilpotency_class(Q)
    rep.add("nilpotency class at most 2", True, cls is not None and cls <= 2, "PAPER")
    rep.note("class", cls)
    n = len(elems)
    if n * n <= exhaustive_limit * exhaustive_limit and n <= exhaustive_limit:
        pairs = itertools.product(elems, repeat=2)
        mode, count = "exhaustive", n * n
    else:
        rng = random.Random(seed)
        pairs = ((rng.choice(elems), rng.choice(elems)) for _ in range(samples))
        mode, count = "sampled", samples
    bad = 0
    for v, w in pairs:
        c = comm(v, w)
        if not (comm(v, z[w]) == comm(z[v], w) == z[z[c]]):
            bad += 1
    rep.add(f"[v,w^z] = [v^z,w] = [v,w]^(z^2), {mode} over {count} pairs", 0, bad, "PAPER")
    return rep


# ---- the Feit-Thompson trichotomy -----------------------------------------------------

@dataclass
class BranchResult:
    branch: str
    N: PermutationGroup
    quotient_order: int
    quotient_name: str | None


def feit_thompson_branch(H: PermutationGroup, X: PermutationGroup) -> BranchResult:
    """Decide which of the three possible structures H has, given a
    self-centralizing subgroup X of order 3, with a verified witness N."""
    if X.order() != 3 or not all(H.contains(x) for x in X.generators):
        raise HypothesisError("X must be a subgroup of H of order 3")
    if not same_group(gr.centralizer_of(H, X), X):
        raise HypothesisError("X is not self-centralizing in H")
    n = H.order()
    if n == 168 and gr.is_simple(H):
        return BranchResult("iii", gr.trivial(H.degree), 168, "PSL2(7)")
    parts = [gr.o_p(H, p) for p in gr.prime_factors(n) if p != 3]
    N = PermutationGroup([g for P in parts for g in P.generators], H.degree)
    if not gr.is_normal(H, N):
        raise RuntimeError("witness N is not normal")
    Q = gr.quotient(H, N).group
    m = Q.order()
    name = gr.identify(Q) if m <= 200 else None
    nilpotent = gr.nilpotency_class(N) is not None
    if nilpotent and (m == 3 or name == "Sym(3)"):
        return BranchResult("i", N, m, name or "C3")
    if gr.is_p_group(N, 2) and name == "Alt(5)":
        return BranchResult("ii", N, m, name)
    raise RuntimeError(f"no branch matches: |H| = {n}, |H/N| = {m}")


def verify_feit_thompson_witness(H: PermutationGroup, res: BranchResult) -> bool:
    """Re-check a branch result from scratch."""
    Q = gr.quotient(H, res.N).group
    if not gr.is_normal(H, res.N) or Q.order() != res.quotient_order:
        return False
    if res.branch == "i":
        return gr.nilpotency_class(res.N) is not None and (Q.order() == 3 or gr.recognize(Q, "Sym(3)"))
    if res.branch == "ii":
        return gr.is_p_group(res.N, 2) and gr.recognize(Q, "Alt(5)")
    return H.order() == 168 and gr.is_simple(H)

"""Bipartite graphs with a group action: coset graphs, the incidence graph
of PG(2,3), the triples/linked-threes graph, the hypotheses of the tree
theorem, and an isomorphism test by colour refinement and backtracking.

Vertices are numbered 0..n-1 with the left class first.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from . import designs, gf3
from . import groups as gr
from .perm import ELEMENT_CAP, Perm, PermutationGroup, point_stabilizer
from .report import Report

GRAPH_FORMAT_VERSION = 1
DEFAULT_STEP_CAP = 10 ** 8


@dataclass(frozen=True, eq=False)
class BipartiteGraph:
    left: tuple
    right: tuple
    edges: tuple  # sorted (i, j) with i < len(left) <= j

    def __post_init__(self):
        nl, n = len(self.left), len(self.left) + len(self.right)
        for i, j in self.edges:
            if not (0 <= i < nl <= j < n):
                raise ValueError(f"edge {(i, j)} does not join the two classes")

    @property
    def order(self) -> int:
        return len(self.left) + len(self.right)

    @cached_property
    def adjacency(self) -> list[list[int]]:
        adj = [[] for _ in range(self.order)]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return [sorted(a) for a in adj]

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def labels(self) -> list:
        return list(self.left) + list(self.right)

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def is_regular(self, k: int | None = None) -> bool:
        d = set(self.degrees())
        return len(d) == 1 and (k is None or d == {k})

    def is_connected(self) -> bool:
        return self.order > 0 and len(self._component(0)) == self.order

    def _component(self, v: int) -> set:
        seen = {v}
        todo = [v]
        while todo:
            x = todo.pop()
            for y in self.adjacency[x]:
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        return seen

    def girth(self) -> int | None:
        best = None
        for s in range(self.order):
            dist = {s: 0}
            parent = {s: -1}
            q = deque([s])
            while q:
                x = q.popleft()
                for y in self.adjacency[x]:
                    if y not in dist:
                        dist[y] = dist[x] + 1
                        parent[y] = x
                        q.append(y)
                    elif parent[x] != y:
                        c = dist[x] + dist[y] + 1
                        if best is None or c < best:
                            best = c
        return best

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edge_set

    def to_text(self) -> str:
        out = [f"bipartite-graph {GRAPH_FORMAT_VERSION}", f"left {len(self.left)}"]
        out.extend(str(x) for x in self.left)
        out.append(f"right {len(self.right)}")
        out.extend(str(x) for x in self.right)
        out.append(f"edges {len(self.edges)}")
        out.extend(f"{i} {j}" for i, j in self.edges)
        return "\n".join(out) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "BipartiteGraph":
        lines = text.strip("\n").split("\n")
        if lines[0] != f"bipartite-graph {GRAPH_FORMAT_VERSION}":
            raise ValueError("not a version-1 graph file")
        k = 1
        nl = int(lines[k].split()[1]); left = tuple(lines[k + 1:k + 1 + nl]); k += 1 + nl
        nr = int(lines[k].split()[1]); right = tuple(lines[k + 1:k + 1 + nr]); k += 1 + nr
        ne = int(lines[k].split()[1])
        edges = tuple(tuple(int(x) for x in ln.split()) for ln in lines[k + 1:k + 1 + ne])
        return cls(left, right, edges)


def make_graph(left: Sequence, right: Sequence, edges: Iterable[tuple[int, int]]) -> BipartiteGraph:
    return BipartiteGraph(tuple(left), tuple(right), tuple(sorted(set((min(e), max(e)) for e in edges))))


@dataclass(frozen=True, eq=False)
class GraphAction:
    graph: BipartiteGraph
    group: PermutationGroup  # acting on the vertices
    labels: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.group.degree != self.graph.order:
            raise ValueError("group degree differs from the number of vertices")
        for g in self.group.generators:
            if not is_graph_automorphism(self.graph, g):
                raise ValueError("a generator does not preserve the edges")


def is_graph_automorphism(G: BipartiteGraph, g: Perm) -> bool:
    return all(G.has_edge(g[i], g[j]) for i, j in G.edges)


# ---- the concrete graphs --------------------------------------------------------------

class _Cosets:
    """Right cosets of a subgroup H of G, keyed by the smallest base image over Hg."""

    def __init__(self, G: PermutationGroup, H: PermutationGroup, cap: int):
        self.base = G.base
        self.hbase = [tuple(h[b] for b in self.base) for h in H.elements(cap)]

    def key(self, g: Perm) -> tuple:
        return min(tuple(g[x] for x in hb) for hb in self.hbase)

    def enumerate(self, G: PermutationGroup):
        reps = [G.identity]
        index = {self.key(G.identity): 0}
        for r in reps:
            for s in G.generators:
                g = r * s
                k = self.key(g)
                if k not in index:
                    index[k] = len(reps)
                    reps.append(g)
        return reps, index


def right_transversal(H: PermutationGroup, K: PermutationGroup, cap: int = ELEMENT_CAP) -> list[Perm]:
    """Representatives of the right cosets Kx in H, for K <= H."""
    kel = K.elements(cap)
    covered = set()
    out = []
    for x in H.elements(cap):
        if x not in covered:
            out.append(x)
            covered.update(k * x for k in kel)
    return out


def coset_graph(G: PermutationGroup, X: PermutationGroup, Y: PermutationGroup,
                cap: int = ELEMENT_CAP) -> GraphAction:
    """Cosets of X and of Y, adjacent when they meet; G acts by right multiplication."""
    cx, cy = _Cosets(G, X, cap), _Cosets(G, Y, cap)
    xreps, xidx = cx.enumerate(G)
    yreps, yidx = cy.enumerate(G)
    nl = len(xreps)
    # Xg meets Yh exactly when Yh = Yxg for some x in X; Yxg only depends on (X∩Y)x
    trans = right_transversal(X, gr.intersection(X, Y, cap), cap)
    edges = set()
    for i, g in enumerate(xreps):
        for x in trans:
            edges.add((i, nl + yidx[cy.key(x * g)]))
    graph = make_graph([f"X{i}" for i in range(nl)], [f"Y{j}" for j in range(len(yreps))], edges)
    gens = []
    for s in G.generators:
        img = [xidx[cx.key(r * s)] for r in xreps] + [nl + yidx[cy.key(r * s)] for r in yreps]
        gens.append(Perm(img))
    return GraphAction(graph, PermutationGroup(gens, graph.order, order_hint=None))


def gamma1() -> GraphAction:
    """Point-line incidence graph of PG(2,3), with SL_3(3) acting."""
    left = ["(" + ",".join(map(str, p)) + ")" for p in gf3.POINTS]
    right = ["[" + ",".join(map(str, l)) + "]" for l in gf3.LINES]
    edges = [(i, 13 + j) for i, p in enumerate(gf3.POINTS) for j, l in enumerate(gf3.LINES)
             if gf3.incident(p, l)]
    graph = make_graph(left, right, edges)
    labels = {x: gf3.incidence_perm(gf3.theta(x)) for x in gf3.ALL_NAMES}
    return GraphAction(graph, PermutationGroup(list(labels.values()), 26), labels)


def gamma2(S: designs.SteinerSystem | None = None, M: PermutationGroup | None = None) -> GraphAction:
    """Triples against linked threes, a triple joined to the linked threes it is a part of."""
    S = S or designs.build_steiner()
    M = M or designs.automorphism_group(S)
    trs = designs.triples()
    lts = designs.linked_threes(S)
    tidx = {frozenset(t): i for i, t in enumerate(trs)}
    lidx = {frozenset(frozenset(p) for p in L): j for j, L in enumerate(lts)}
    nl = len(trs)
    edges = [(tidx[frozenset(p)], nl + j) for j, L in enumerate(lts) for p in L]
    graph = make_graph([" ".join(map(str, t)) for t in trs],
                       ["|".join(" ".join(map(str, p)) for p in L) for L in lts], edges)
    gens = []
    for g in M.generators:
        def im(s):
            return frozenset(g[x - 1] + 1 for x in s)
        img = [tidx[im(t)] for t in trs]
        img += [nl + lidx[frozenset(im(p) for p in L)] for L in lts]
        gens.append(Perm(img))
    return GraphAction(graph, PermutationGroup(gens, graph.order, order_hint=M.order()))


# ---- orbits, fixed subgraphs, trees ------------------------------------------------------

def vertex_orbits(act: GraphAction) -> list[list[int]]:
    return act.group.orbits()


def edge_orbits(act: GraphAction) -> list[list[tuple]]:
    seen = set()
    out = []
    for e in act.graph.edges:
        if e in seen:
            continue
        orb = [e]
        seen.add(e)
        for i, j in orb:
            for g in act.group.generators:
                a, b = g[i], g[j]
                f = (min(a, b), max(a, b))
                if f not in seen:
                    seen.add(f)
                    orb.append(f)
        out.append(orb)
    return out


def is_edge_transitive(act: GraphAction) -> bool:
    return len(edge_orbits(act)) == 1


def fixed_subgraph(G: BipartiteGraph, gens: Iterable[Perm]) -> BipartiteGraph:
    """Induced subgraph on the vertices fixed by every given permutation."""
    gens = list(gens)
    nl = len(G.left)
    keep = [v for v in range(G.order) if all(g[v] == v for g in gens)]
    lk = [v for v in keep if v < nl]
    rk = [v for v in keep if v >= nl]
    new = {v: i for i, v in enumerate(lk)}
    new.update({v: len(lk) + i for i, v in enumerate(rk)})
    labels = G.labels()
    edges = [(new[i], new[j]) for i, j in G.edges if i in new and j in new]
    return make_graph([labels[v] for v in lk], [labels[v] for v in rk], edges)


def is_tree(G: BipartiteGraph) -> bool:
    return G.order > 0 and G.is_connected() and len(G.edges) == G.order - 1


def verify_theorem_b_hypotheses(act: GraphAction, reference: PermutationGroup | None = None) -> Report:
    """Connected, edge-transitive with two vertex orbits, vertex stabilizers
    of order 432 isomorphic to AGL_2(3), and for every nontrivial z in
    O_3(G_v) the fixed subgraph of <z> a tree with an edge."""
    reference = reference or gr.affine_general_linear_2_3()
    G, graph = act.group, act.graph
    rep = Report("tree theorem hypotheses")
    rep.add("connected", True, graph.is_connected(), "PAPER")
    rep.add("no vertex of degree one", True, min(graph.degrees()) >= 2, "PAPER")
    rep.add("edge-transitive", True, is_edge_transitive(act), "PAPER")
    orbits = vertex_orbits(act)
    rep.add("vertex orbits", 2, len(orbits), "PAPER")
    for orb in orbits[:2]:
        v = orb[0]
        Gv = point_stabilizer(G, v)
        rep.add(f"|G_v| for v = {v}", 432, Gv.order(), "PAPER")
        if Gv.order() != 432:
            continue
        rep.add(f"G_v isomorphic to AGL_2(3) for v = {v}", True, gr.isomorphic(Gv, reference), "PAPER")
        O = gr.o_p(Gv, 3)
        zs = [z for z in O.elements() if not z.is_identity()]
        trees = [fixed_subgraph(graph, [z]) for z in zs]
        good = sum(1 for t in trees if is_tree(t) and len(t.edges) >= 1)
        rep.add(f"fixed subgraphs of O_3(G_v) elements are trees with an edge, v = {v}",
                len(zs), good, "PAPER")
        rep.note(f"|O_3(G_v)| for v = {v}", O.order())
    return rep


# ---- isomorphism ---------------------------------------------------------------------------

class StepCapExceeded(RuntimeError):
    """The search ran out of steps: inconclusive, not a proof of non-isomorphism."""


def _refine(adjs, colors):
    """Joint colour refinement of several graphs so colours stay comparable."""
    ncol = len(set(c for col in colors for c in col))
    while True:
        sigs = [[(col[v], tuple(sorted(col[u] for u in adj[v]))) for v in range(len(adj))]
                for adj, col in zip(adjs, colors)]
        table = {s: i for i, s in enumerate(sorted(set(s for sg in sigs for s in sg)))}
        colors = [[table[s] for s in sg] for sg in sigs]
        n = len(table)
        if n == ncol:
            return colors
        ncol = n


def _histogram(col):
    h = {}
    for c in col:
        h[c] = h.get(c, 0) + 1
    return h


def isomorphism(G: BipartiteGraph, H: BipartiteGraph, step_cap: int = DEFAULT_STEP_CAP) -> list[int] | None:
    """A vertex bijection G -> H preserving edges, or None.

    Raises StepCapExceeded when the search is cut off.
    """
    if G.order != H.order or len(G.edges) != len(H.edges):
        return None
    if sorted(G.degrees()) != sorted(H.degrees()):
        return None
    n = G.order
    adjs = [G.adjacency, H.adjacency]
    steps = [0]

    def search(cg, ch):
        steps[0] += n
        if steps[0] > step_cap:
            raise StepCapExceeded(f"graph isomorphism search exceeded {step_cap} steps")
        cg, ch = _refine(adjs, [cg, ch])
        hg = _histogram(cg)
        if hg != _histogram(ch):
            return None
        if len(hg) == n:
            where = {c: v for v, c in enumerate(ch)}
            f = [where[c] for c in cg]
            if all(H.has_edge(f[i], f[j]) for i, j in G.edges):
                return f
            return None
        # individualize a vertex of the smallest non-singleton class
        target = min((k for k, m in hg.items() if m > 1), key=lambda k: (hg[k], k))
        v = cg.index(target)
        fresh = max(hg) + 1
        for w in (u for u in range(n) if ch[u] == target):
            ng = list(cg); ng[v] = fresh
            nh = list(ch); nh[w] = fresh
            f = search(ng, nh)
            if f is not None:
                return f
        return None

    f = search([0] * n, [0] * n)
    if f is not None and (len(set(f)) != n or not all(H.has_edge(f[i], f[j]) for i, j in G.edges)):
        raise RuntimeError("isomorphism failed verification")
    return f


def isomorphic(G: BipartiteGraph, H: BipartiteGraph, step_cap: int = DEFAULT_STEP_CAP) -> bool | None:
    """True/False, or None when the step cap is hit."""
    try:
        return isomorphism(G, H, step_cap) is not None
    except StepCapExceeded:
        return None


def complete_bipartite_action(k: int) -> GraphAction:
    """K_{k,k} with Sym(k) x Sym(k) acting on the two sides separately."""
    left = [f"L{i}" for i in range(k)]
    right = [f"R{i}" for i in range(k)]
    graph = make_graph(left, right, [(i, k + j) for i in range(k) for j in range(k)])
    group = gr.direct_product(gr.symmetric(k), gr.symmetric(k))
    return GraphAction(graph, group)

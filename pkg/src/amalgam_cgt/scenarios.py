"""The registry of verification scenarios and the machinery to run them."""

from __future__ import annotations

import dataclasses
import itertools
import json
import time
from dataclasses import dataclass, field
from typing import Callable

from . import checks, designs, gf3, graphs
from . import groups as gr
from .catalog import catalog
from .coset_enum import EnumerationLimits, LimitExceeded, enumerate_cosets
from .images import X_GENERATORS, Y_GENERATORS, image
from .perm import CapExceeded, Perm, PermutationGroup
from .report import REPORT_SCHEMA_VERSION, Report
from .words import verify_free_identities

RESOURCE_ERRORS = (LimitExceeded, CapExceeded, graphs.StepCapExceeded,
                   designs.BacktrackBudgetExceeded, MemoryError)


@dataclass(frozen=True)
class VerifyConfig:
    max_cosets: int = EnumerationLimits.max_cosets
    strategy: str = "hlt"
    time_cap: float | None = None  # seconds per scenario, checked after it finishes
    graph_step_cap: int = graphs.DEFAULT_STEP_CAP
    isomorphism_cap: int = 5000
    timing: bool = False  # include wall times in reports (breaks byte-identical output)

    def __post_init__(self):
        EnumerationLimits(self.max_cosets, self.strategy)  # validates both
        if self.time_cap is not None and self.time_cap <= 0:
            raise ValueError("time_cap must be positive")

    @property
    def limits(self) -> EnumerationLimits:
        return EnumerationLimits(self.max_cosets, self.strategy)

    def replace(self, **kw) -> "VerifyConfig":
        return dataclasses.replace(self, **{k: v for k, v in kw.items() if v is not None})

    @classmethod
    def from_file(cls, path: str) -> "VerifyConfig":
        with open(path) as fh:
            data = json.load(fh)
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(sorted(unknown))}")
        return cls(**data)

    def echo(self) -> dict:
        return dataclasses.asdict(self)


@dataclass(frozen=True)
class Scenario:
    name: str
    description: str
    anchor: str
    run: Callable[[VerifyConfig], Report] = field(repr=False)


@dataclass
class ScenarioResult:
    scenario: Scenario
    report: Report
    config: VerifyConfig
    seconds: float

    @property
    def passed(self) -> bool:
        return self.report.passed

    def to_dict(self) -> dict:
        d = {
            "schema": "scenario-report",
            "version": REPORT_SCHEMA_VERSION,
            "scenario": self.scenario.name,
            "description": self.scenario.description,
            "anchor": self.scenario.anchor,
            "pass": self.passed,
            "claims": [c.to_dict() for c in self.report.claims],
            "config": self.config.echo(),
        }
        if self.config.timing:
            d["seconds"] = round(self.seconds, 3)
        return d

    def to_text(self) -> str:
        head = f"{self.scenario.name}: {'PASS' if self.passed else 'FAIL'}"
        if self.config.timing:
            head += f" ({self.seconds:.1f} s)"
        body = self.report.to_text().split("\n")[1:]
        return "\n".join([head] + body)


# ---- scenario bodies -------------------------------------------------------------------

def _orders(names, expected, provenance, cfg: VerifyConfig) -> Report:
    rep = Report("orders")
    for name, exp in zip(names, expected):
        try:
            t = enumerate_cosets(catalog(name).presentation, (), cfg.limits)
            rep.add(f"|{name}| by coset enumeration", exp, t.live_count, provenance)
            rep.note(f"{name} peak rows", t.stats["max_active"])
        except LimitExceeded as e:
            rep.fail(f"|{name}| by coset enumeration", exp, str(e), provenance)
    return rep


def presentation_orders(cfg: VerifyConfig) -> Report:
    rep = _orders(["Zstar", "Xstar", "Ystar"], [108, 432, 432], "DERIVED", cfg)
    rep.add("|AGL23| by coset enumeration", 432,
            enumerate_cosets(catalog("AGL23").presentation, (), cfg.limits).live_count, "DERIVED")
    return rep


def theorem_a_orders(cfg: VerifyConfig) -> Report:
    rep = _orders(["F1", "F2", "F3", "F4"], [95040, 1, 5616, 1], "PAPER", cfg)
    # second route: the permutation action on the cosets of <a,b,p,q,t,u>
    for name, exp, deg in (("F1", 95040, 220), ("F3", 5616, 13)):
        im = image(name, cfg.max_cosets, cfg.strategy)
        rep.add(f"degree of {name} on cosets of X*", deg, im.degree, "DERIVED")
        rep.add(f"|{name}| from the stabilizer chain of that action", exp, im.group.order(), "PAPER")
    return rep


def theta_check(cfg: VerifyConfig) -> Report:
    rep = gf3.verify_theta_relators()
    rep.add("size of the generated matrix group", 5616, len(gf3.generate_sl33()), "PAPER")
    return rep


def _zimage(cfg: VerifyConfig) -> PermutationGroup:
    return image("Zstar", cfg.max_cosets, cfg.strategy).group


def amalgam_two_classes(cfg: VerifyConfig) -> Report:
    Z = _zimage(cfg)
    AZ = gr.automorphisms(Z)
    inn = AZ.inner()
    rep = Report("amalgam classes")
    rep.add("|Aut(Z)|", 216, AZ.group.order(), "DERIVED")
    rep.add("|Inn(Z)|", 108, inn.order(), "PAPER")
    dcs = gr.double_cosets(AZ.group, inn, inn)
    rep.add("(Inn(Z), Inn(Z))-double cosets in Aut(Z)", 2, len(dcs), "PAPER")
    rep.add("double cosets partition Aut(Z)", 216, sum(len(d) for d in dcs), "TRIVIAL")
    return rep


def agl23_facts(cfg: VerifyConfig) -> Report:
    rep = Report("AGL_2(3) facts")
    rep.extend(checks.verify_agl23_facts(gr.affine_general_linear_2_3()), "AGL_2(3) on 9 points: ")
    X = image("Xstar", cfg.max_cosets, cfg.strategy).group
    rep.extend(checks.verify_agl23_facts(X), "X* coset image: ")
    iso = gr.isomorphism(X, gr.affine_general_linear_2_3(), cfg.isomorphism_cap)
    rep.add("X* coset image isomorphic to AGL_2(3)", True, iso is not None and iso.is_bijective(), "PAPER")
    return rep


def _both_images(cfg: VerifyConfig, check) -> Report:
    rep = Report(check.__name__)
    for name in ("F1", "F3"):
        im = image(name, cfg.max_cosets, cfg.strategy)
        rep.extend(check(im.group, im.labels), f"{name}: ")
    return rep


def q8_lemma(cfg: VerifyConfig) -> Report:
    return _both_images(cfg, checks.verify_2q8_lemma)


def centralizer_checks(cfg: VerifyConfig) -> Report:
    return _both_images(cfg, checks.verify_centralizers)


def w_mod_t(G: PermutationGroup, labels: dict):
    """W/<t> and the permutation of its cosets induced by conjugation with b^2."""
    P, R, _ = checks.quaternion_pair(labels, G.degree)
    W = PermutationGroup(P.generators + R.generators, G.degree)
    T = PermutationGroup([labels["t"]], G.degree)
    Q = gr.quotient(W, T)
    b2 = labels["b"] ** 2
    zeta = Perm(Q.coset_of(r.conj(b2)) for r in Q.reps)
    return Q, zeta


def burnside_w(cfg: VerifyConfig) -> Report:
    def check(G, labels):
        Q, zeta = w_mod_t(G, labels)
        rep = checks.burnside_check(Q.group, zeta)
        rep.note("|W/<t>|", Q.group.order())
        return rep
    check.__name__ = "burnside"
    return _both_images(cfg, check)


def involution_quotient(G: PermutationGroup, labels: dict):
    """C_G(t)/<t> and the image of <b> in it."""
    t = labels["t"]
    H = gr.centralizer(G, t)
    Q = gr.quotient(H, PermutationGroup([t], G.degree))
    X = PermutationGroup([Q.project(labels["b"])], Q.group.degree)
    return H, Q, X


def feit_thompson(cfg: VerifyConfig) -> Report:
    rep = Report("Feit-Thompson branches")
    s3 = gr.symmetric(3)
    a5 = gr.alternating(5)
    l27 = gr.projective_special_linear_2_7()
    cases = [
        ("Sym(3)", s3, PermutationGroup([Perm.from_cycles([[1, 2, 3]], 3)], 3), "i", "TRIVIAL"),
        ("Alt(5)", a5, PermutationGroup([Perm.from_cycles([[1, 2, 3]], 5)], 5), "ii", "TRIVIAL"),
    ]
    x3 = next(g for g in l27.elements() if g.order() == 3)
    cases.append(("PSL_2(7)", l27, PermutationGroup([x3], 8), "iii", "TRIVIAL"))
    for name, H, X, branch, prov in cases:
        res = checks.feit_thompson_branch(H, X)
        rep.add(f"{name}: branch", branch, res.branch, prov)
        rep.add(f"{name}: witness verified", True, checks.verify_feit_thompson_witness(H, res), "DERIVED")
    for name in ("F1", "F3"):
        im = image(name, cfg.max_cosets, cfg.strategy)
        H, Q, X = involution_quotient(im.group, im.labels)
        res = checks.feit_thompson_branch(Q.group, X)
        rep.note(f"{name}: |C_G(t)/<t>|", Q.group.order())
        rep.note(f"{name}: branch", res.branch)
        rep.note(f"{name}: |N|", res.N.order())
        rep.add(f"{name}: witness verified", True, checks.verify_feit_thompson_witness(Q.group, res), "DERIVED")
        P, R, _ = checks.quaternion_pair(im.labels, im.degree)
        inside = all(res.N.contains(Q.project(g)) for g in P.generators + R.generators)
        rep.add(f"{name}: N is a 2-group containing the images of P and R", True,
                gr.is_p_group(res.N, 2) and inside, "DERIVED")
    return rep


def sl3_geometry(cfg: VerifyConfig) -> Report:
    rep = Report("SL_3(3) geometry")
    rep.add("points", 13, len(gf3.POINTS), "DERIVED")
    rep.add("lines", 13, len(gf3.LINES), "DERIVED")
    rep.add("points on every line", {4}, {sum(gf3.incident(p, l) for p in gf3.POINTS) for l in gf3.LINES}, "DERIVED")
    rep.add("lines through every point", {4}, {sum(gf3.incident(p, l) for l in gf3.LINES) for p in gf3.POINTS}, "DERIVED")
    G = gf3.sl33_point_group()
    rep.add("order of the action on points", 5616, G.order(), "PAPER")
    rep.add("transitive on points", True, G.is_transitive(), "DERIVED")
    kernel = [M for M in gf3.generate_sl33() if gf3.point_perm(M).is_identity()]
    rep.add("kernel of the action on points", 1, len(kernel), "DERIVED")
    A, B, C = gf3.stabilizers()
    rep.add("|A1|", 432, len(A), "DERIVED")
    rep.add("|B1|", 432, len(B), "DERIVED")
    rep.add("|C1|", 108, len(C), "DERIVED")
    agl = gr.affine_general_linear_2_3()
    Ap, Bp, Cp = gf3.as_point_group(A), gf3.as_point_group(B), gf3.as_point_group(C)
    rep.add("A1 isomorphic to AGL_2(3)", True, gr.isomorphic(Ap, agl, cfg.isomorphism_cap), "PAPER")
    rep.add("B1 isomorphic to AGL_2(3)", True, gr.isomorphic(Bp, agl, cfg.isomorphism_cap), "PAPER")
    S1 = gr.sylow3(Cp)
    rep.add("C1 = N(Z(S1))", True, checks.same_group(gr.normalizer(Cp, gr.center(S1)), Cp), "DERIVED")
    rep.add("points fixed by A1", 1, sum(1 for p in range(13) if all(g[p] == p for g in Ap.generators)), "DERIVED")
    Bl = gf3.as_incidence_group(B)
    rep.add("lines fixed by B1", 1, sum(1 for l in range(13, 26) if all(g[l] == l for g in Bl.generators)), "DERIVED")
    return rep


def steiner_build(cfg: VerifyConfig) -> Report:
    rep = Report("Steiner system")
    try:
        S = designs.build_steiner()
        cover = "exactly once"
    except designs.SteinerError as e:
        rep.fail("every 5-subset in exactly one hexad", "exactly once", str(e))
        return rep
    rep.add("hexads", 132, len(S.blocks), "DERIVED")
    rep.add("every 5-subset in exactly one hexad", "exactly once", cover, "DERIVED")
    for k, exp in zip(range(1, 6), (66, 30, 12, 4, 1)):
        counts = {S.count_through(s) for s in itertools.combinations(designs.POINTS, k)}
        rep.add(f"hexads through any {k} points", {exp}, counts, "DERIVED")
    comp = all(frozenset(designs.POINTS) - b in S.block_set for b in S.blocks)
    rep.add("complement of every hexad is a hexad", True, comp, "DERIVED")
    return rep


def linked_threes(cfg: VerifyConfig) -> Report:
    rep = Report("linked threes")
    S = designs.build_steiner()
    L = designs.linked_threes(S)
    rep.add("linked threes", 220, len(L), "DERIVED")
    per_triple = {}
    for lt in L:
        for p in lt:
            per_triple[p] = per_triple.get(p, 0) + 1
    rep.add("linked threes through each triple", {4}, set(per_triple.values()), "DERIVED")
    rep.add("triples covered", 220, len(per_triple), "DERIVED")
    M = designs.automorphism_group(S)
    rep.add("|Aut(S)|", 95040, M.order(), "PAPER")
    _, T = designs.triple_action(M)
    rep.add("Aut(S) transitive on triples", True, T.is_transitive(), "DERIVED")
    St = gr.set_stabilizer(M, [0, 1, 2])
    rep.add("|stabilizer of a triple|", 432, St.order(), "PAPER")
    rep.add("stabilizer of a triple isomorphic to AGL_2(3)", True,
            gr.isomorphic(St, gr.affine_general_linear_2_3(), cfg.isomorphism_cap), "PAPER")
    g2 = graphs.gamma2(S, M)
    orbits = graphs.vertex_orbits(g2)
    rep.add("Aut(S) transitive on linked threes", [220, 220], sorted(len(o) for o in orbits), "DERIVED")
    first = L[0]
    key = frozenset(frozenset(x - 1 for x in p) for p in first)
    stab = gr.stabilizer(M, key, lambda s, g: frozenset(frozenset(g[x] for x in p) for p in s))
    rep.add("|stabilizer of a linked three|", 432, stab.order(), "DERIVED")
    both = gr.set_stabilizer(stab, [x - 1 for x in first[0]])
    rep.add("|stabilizer of a linked three and one of its parts|", 108, both.order(), "DERIVED")
    blocks = [frozenset(x - 1 for x in b) for b in S.blocks]
    borbit = {blocks[0]}
    todo = [blocks[0]]
    while todo:
        b = todo.pop()
        for g in M.generators:
            c = frozenset(g[x] for x in b)
            if c not in borbit:
                borbit.add(c)
                todo.append(c)
    rep.add("Aut(S) transitive on hexads", 132, len(borbit), "DERIVED")
    return rep


def _graph_shape(rep: Report, prefix: str, act: graphs.GraphAction, n: int, e: int):
    g = act.graph
    rep.add(f"{prefix} vertices", n, g.order, "DERIVED")
    rep.add(f"{prefix} edges", e, len(g.edges), "DERIVED")
    rep.add(f"{prefix} 4-regular", True, g.is_regular(4), "DERIVED")
    rep.add(f"{prefix} connected", True, g.is_connected(), "DERIVED")
    rep.add(f"{prefix} edge-transitive", True, graphs.is_edge_transitive(act), "PAPER")
    rep.add(f"{prefix} vertex orbits", 2, len(graphs.vertex_orbits(act)), "PAPER")


def _iso_claim(rep: Report, name: str, G, H, cap: int):
    try:
        f = graphs.isomorphism(G, H, cap)
        rep.add(name, True, f is not None, "PAPER")
    except graphs.StepCapExceeded as e:
        rep.fail(name, True, f"inconclusive: {e}", "PAPER")


def gamma1_iso(cfg: VerifyConfig) -> Report:
    rep = Report("incidence graph of PG(2,3)")
    g1 = graphs.gamma1()
    _graph_shape(rep, "Gamma1", g1, 26, 52)
    rep.add("Gamma1 girth", 6, g1.graph.girth(), "DERIVED")
    A, B, _ = gf3.stabilizers()
    cg = graphs.coset_graph(gf3.sl33_point_group(), gf3.as_point_group(A), gf3.as_point_group(B))
    rep.add("coset graph vertices", 26, cg.graph.order, "DERIVED")
    rep.add("coset graph edges", 52, len(cg.graph.edges), "DERIVED")
    _iso_claim(rep, "Gamma1 isomorphic to the coset graph of SL_3(3) on (A1, B1)", g1.graph, cg.graph,
               cfg.graph_step_cap)
    return rep


def gamma2_iso(cfg: VerifyConfig) -> Report:
    rep = Report("triples and linked threes")
    g2 = graphs.gamma2()
    _graph_shape(rep, "Gamma2", g2, 440, 880)
    im = image("F1", cfg.max_cosets, cfg.strategy)
    cg = graphs.coset_graph(im.group, im.subgroup(X_GENERATORS), im.subgroup(Y_GENERATORS))
    rep.add("coset graph vertices", 440, cg.graph.order, "DERIVED")
    rep.add("coset graph edges", 880, len(cg.graph.edges), "DERIVED")
    _iso_claim(rep, "Gamma2 isomorphic to the coset graph of F1 on (X*, Y*) images", g2.graph, cg.graph,
               cfg.graph_step_cap)
    return rep


def theorem_b_hypotheses(cfg: VerifyConfig) -> Report:
    rep = Report("tree theorem hypotheses")
    rep.extend(graphs.verify_theorem_b_hypotheses(graphs.gamma1()), "Gamma1: ")
    rep.extend(graphs.verify_theorem_b_hypotheses(graphs.gamma2()), "Gamma2: ")
    return rep


def free_identities(cfg: VerifyConfig) -> Report:
    rep = Report("free identities")
    for entry in verify_free_identities():
        rep.add(f"{entry['identity']} in the free group", True, entry["pass"], "PAPER")
    return rep


SCENARIOS: tuple[Scenario, ...] = (
    Scenario("presentation-orders", "orders of the amalgam pieces by coset enumeration",
             "relator sets of the amalgam", presentation_orders),
    Scenario("theorem-a-orders", "orders of the four quotients F1..F4",
             "orders of F1, F2, F3, F4", theorem_a_orders),
    Scenario("theta-check", "the eight matrices satisfy every defining relator and generate SL_3(3)",
             "matrix images of the generators", theta_check),
    Scenario("amalgam-two-classes", "double cosets of Inn(Z) in Aut(Z)",
             "two isomorphism classes of amalgams", amalgam_two_classes),
    Scenario("agl23-facts", "structure of AGL_2(3) and of the X* image",
             "facts about AGL_2(3)", agl23_facts),
    Scenario("q8-lemma", "the quaternion subgroups P and R in the F1 and F3 images",
             "two quaternion subgroups", q8_lemma),
    Scenario("centralizer-checks", "C_H(b) and C_W(b) in the F1 and F3 images",
             "involution centralizer", centralizer_checks),
    Scenario("burnside-w", "Burnside identities on W/<t>",
             "fixed-point-free automorphism of order 3", burnside_w),
    Scenario("feit-thompson-branch", "branch of the trichotomy for self-centralizing subgroups of order 3",
             "self-centralizing subgroup of order 3", feit_thompson),
    Scenario("sl3-geometry", "points, lines and stabilizers of SL_3(3)",
             "projective plane of order 3", sl3_geometry),
    Scenario("steiner-build", "S(5,6,12) from the extended ternary Golay code",
             "Steiner system on 12 points", steiner_build),
    Scenario("linked-threes", "linked threes and the automorphism group M12",
             "linked threes", linked_threes),
    Scenario("gamma1-iso", "incidence graph of PG(2,3) against its coset graph",
             "edge-transitive graph of SL_3(3)", gamma1_iso),
    Scenario("gamma2-iso", "triples/linked-threes graph against the coset graph of F1",
             "edge-transitive graph of M12", gamma2_iso),
    Scenario("theorem-b-hypotheses", "hypotheses of the tree theorem on both graphs",
             "fixed subgraphs are trees", theorem_b_hypotheses),
    Scenario("free-identities", "commutator expansion identities in a free group",
             "commutator identities", free_identities),
)

_BY_NAME = {s.name: s for s in SCENARIOS}


def list_scenarios() -> list[str]:
    return [s.name for s in SCENARIOS]


def get_scenario(name: str) -> Scenario:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise KeyError(f"unknown scenario {name!r}; known: {', '.join(_BY_NAME)}") from None


def run_scenario(name: str, config: VerifyConfig | None = None) -> ScenarioResult:
    """Run one scenario; resource-cap errors become failed claims."""
    config = config or VerifyConfig()
    sc = get_scenario(name)
    t0 = time.perf_counter()
    try:
        rep = sc.run(config)
    except RESOURCE_ERRORS as e:
        rep = Report(sc.name)
        rep.fail("completed within resource caps", True, f"{type(e).__name__}: {e}")
    seconds = time.perf_counter() - t0
    if config.time_cap is not None and seconds > config.time_cap:
        rep.add("finished within the time cap", True, False,
                reason=f"took {seconds:.1f} s, cap {config.time_cap} s")
    return ScenarioResult(sc, rep, config, seconds)


def run_all(config: VerifyConfig | None = None) -> list[ScenarioResult]:
    return [run_scenario(n, config) for n in list_scenarios()]


def results_to_json(results: list[ScenarioResult]) -> str:
    doc = {"schema": "verification-run", "version": REPORT_SCHEMA_VERSION,
           "pass": all(r.passed for r in results),
           "scenarios": [r.to_dict() for r in results]}
    return json.dumps(doc, indent=2, sort_keys=False)


def results_to_text(results: list[ScenarioResult]) -> str:
    body = "\n\n".join(r.to_text() for r in results)
    npass = sum(r.passed for r in results)
    return body + f"\n\n{npass}/{len(results)} scenarios passed\n"

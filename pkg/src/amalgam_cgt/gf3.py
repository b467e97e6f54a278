"""3x3 matrices over GF(3), SL_3(3) and its projective plane.

Row vectors, matrices acting on the right: a point <v> goes to <vM>, so a
word x1 x2 ... evaluates to the product M(x1) M(x2) ...  A line is stored
as the coefficient vector l of the equation v.l = 0; it goes to <M^-1 l>.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Sequence

from . import catalog
from .perm import Perm, PermutationGroup
from .presentation import parse_presentation
from .report import Report
from .words import Word

Mat3 = tuple  # nine residues, row-major


def mat(rows: Sequence[Sequence[int]]) -> Mat3:
    flat = tuple(int(x) % 3 for row in rows for x in row)
    if len(flat) != 9:
        raise ValueError("expected a 3x3 matrix")
    return flat


IDENTITY: Mat3 = mat([[1, 0, 0], [0, 1, 0], [0, 0, 1]])


def mul(A: Mat3, B: Mat3) -> Mat3:
    return tuple((A[3 * i] * B[j] + A[3 * i + 1] * B[3 + j] + A[3 * i + 2] * B[6 + j]) % 3
                 for i in range(3) for j in range(3))


def det(A: Mat3) -> int:
    a, b, c, d, e, f, g, h, i = A
    return (a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)) % 3


def inverse(A: Mat3) -> Mat3:
    d = det(A)
    if d == 0:
        raise ZeroDivisionError("singular matrix")
    a, b, c, dd, e, f, g, h, i = A
    adj = (e * i - f * h, c * h - b * i, b * f - c * e,
           f * g - dd * i, a * i - c * g, c * dd - a * f,
           dd * h - e * g, b * g - a * h, a * e - b * dd)
    dinv = d  # 1 and 2 are their own inverses mod 3
    return tuple((x * dinv) % 3 for x in adj)


def power(A: Mat3, n: int) -> Mat3:
    if n < 0:
        return power(inverse(A), -n)
    out = IDENTITY
    for _ in range(n):
        out = mul(out, A)
    return out


def rows(A: Mat3) -> list[list[int]]:
    return [list(A[0:3]), list(A[3:6]), list(A[6:9])]


_THETA = {
    "a": mat([[1, 0, 0], [1, 1, 0], [0, 0, 1]]),
    "b": mat([[1, 0, 0], [0, 1, 0], [0, 1, 1]]),
    "t": mat([[1, 0, 0], [0, -1, 0], [0, 0, -1]]),
    "u": mat([[-1, 0, 0], [0, -1, 0], [0, 0, 1]]),
    "p": mat([[1, 0, 0], [0, 0, 1], [0, -1, 0]]),
    "q": mat([[1, 0, 0], [0, -1, 1], [0, 1, 1]]),
    "r": mat([[0, 1, 0], [-1, 0, 0], [0, 0, 1]]),
    "s": mat([[-1, 1, 0], [1, 1, 0], [0, 0, 1]]),
}
THETA_NAMES = tuple(_THETA)


def theta(name: str) -> Mat3:
    try:
        return _THETA[name]
    except KeyError:
        raise KeyError(f"no matrix for {name!r}; names are {', '.join(THETA_NAMES)}") from None


def evaluate(w: Word, names: Sequence[str], images: dict | None = None) -> Mat3:
    images = images or _THETA
    out = IDENTITY
    for x in w:
        m = images[names[abs(x) - 1]]
        out = mul(out, m if x > 0 else inverse(m))
    return out


ALL_NAMES = ("a", "b", "p", "q", "r", "s", "t", "u")


def relator_sets() -> dict[str, list[Word]]:
    """The three defining relator families, over the generators a,b,p,q,r,s,t,u."""
    head = "gens " + ", ".join(ALL_NAMES) + "; rels "
    return {
        "R_Z": list(parse_presentation(head + catalog.R_Z).relators),
        "R_X": list(parse_presentation(head + catalog.R_X).relators),
        "R_Y": list(parse_presentation(head + catalog.R_Y).relators),
    }


def verify_theta_relators(images: dict | None = None) -> Report:
    """Evaluate every defining relator under the matrix assignment."""
    images = images or _THETA
    rep = Report("matrix relators")
    for name, m in sorted(images.items()):
        rep.add(f"det {name}", 1, det(m), "PAPER")
    for family, rels in relator_sets().items():
        for w in rels:
            spelled = w.spell(ALL_NAMES)
            rep.add(f"{family}: {spelled}", rows(IDENTITY), rows(evaluate(w, ALL_NAMES, images)), "PAPER")
    return rep


# ---- the projective plane --------------------------------------------------------------

def normalize(v: Sequence[int]) -> tuple:
    """Scale so that the first nonzero coordinate is 1."""
    v = tuple(x % 3 for x in v)
    for x in v:
        if x:
            return tuple((y * x) % 3 for y in v)  # x is its own inverse mod 3
    raise ValueError("the zero vector is not a projective point")


POINTS: tuple = tuple(sorted({normalize(v) for v in itertools.product(range(3), repeat=3) if any(v)}))
LINES: tuple = POINTS  # the same coordinate triples, read as equations
_PINDEX = {p: i for i, p in enumerate(POINTS)}


def incident(point: Sequence[int], line: Sequence[int]) -> bool:
    return sum(x * y for x, y in zip(point, line)) % 3 == 0


def act_point(v: Sequence[int], M: Mat3) -> tuple:
    return normalize([sum(v[i] * M[3 * i + j] for i in range(3)) for j in range(3)])


def act_line(l: Sequence[int], M: Mat3) -> tuple:
    Mi = inverse(M)
    return normalize([sum(Mi[3 * i + j] * l[j] for j in range(3)) for i in range(3)])


def point_perm(M: Mat3) -> Perm:
    return Perm(_PINDEX[act_point(v, M)] for v in POINTS)


def line_perm(M: Mat3) -> Perm:
    return Perm(_PINDEX[act_line(l, M)] for l in LINES)


def incidence_perm(M: Mat3) -> Perm:
    """Action on points 0..12 followed by lines 13..25."""
    return Perm(list(point_perm(M)) + [13 + i for i in line_perm(M)])


def closure(gens: Iterable[Mat3]) -> frozenset:
    gens = list(gens)
    seen = {IDENTITY}
    frontier = [IDENTITY]
    while frontier:
        nxt = []
        for A in frontier:
            for g in gens:
                B = mul(A, g)
                if B not in seen:
                    seen.add(B)
                    nxt.append(B)
        frontier = nxt
    return frozenset(seen)


@lru_cache(maxsize=1)
def generate_sl33() -> frozenset:
    """All matrices generated by the eight assigned matrices."""
    return closure(_THETA.values())


def sl33_point_group() -> PermutationGroup:
    return PermutationGroup([point_perm(theta(x)) for x in ALL_NAMES], 13)


def sl33_incidence_group() -> PermutationGroup:
    return PermutationGroup([incidence_perm(theta(x)) for x in ALL_NAMES], 26)


def labelled_point_action() -> dict[str, Perm]:
    return {x: point_perm(theta(x)) for x in ALL_NAMES}


BASE_POINT = (1, 0, 0)
BASE_LINE = (0, 0, 1)  # the line through <(1,0,0)> and <(0,1,0)>


def fixes_point(M: Mat3, v=BASE_POINT) -> bool:
    return act_point(v, M) == normalize(v)


def fixes_line(M: Mat3, l=BASE_LINE) -> bool:
    return act_line(l, M) == normalize(l)


def stabilizers():
    """(A1, B1, C1) as matrix sets: the stabilizers of the point <(1,0,0)>,
    of the line <(1,0,0),(0,1,0)>, and their intersection."""
    G = generate_sl33()
    A = frozenset(M for M in G if fixes_point(M))
    B = frozenset(M for M in G if fixes_line(M))
    return A, B, A & B


def as_point_group(ms: Iterable[Mat3]) -> PermutationGroup:
    return PermutationGroup([point_perm(M) for M in ms], 13)


def as_incidence_group(ms: Iterable[Mat3]) -> PermutationGroup:
    return PermutationGroup([incidence_perm(M) for M in ms], 26)

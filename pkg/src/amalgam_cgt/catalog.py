"""Built-in presentations: the amalgam pieces, their universal completion F and
the four quotients F1..F4."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .presentation import Presentation, amalgamated_presentation, parse_presentation
from .words import Word

R_Z = """
a^3 = b^3 = [a,b]^3 = [a,[a,b]] = [b,[a,b]] = 1;
t^2 = u^2 = [t,u] = 1;
a^u = a; b^u = b^-1; a^t = a^-1; b^t = b;
"""

R_X = """
p^4 = q^4 = 1; p^2 = q^2 = t;
q^p = q^-1; a^p = [a^-1,b]; [a,b]^q = [b,a] a;
p^u = p^-1; p^b = p q; q^b = p; p^(b^2) = q;
"""

R_Y = """
r^4 = s^4 = 1; r^2 = s^2 = u;
s^r = s^-1; [a^-1,b]^r = b; [a,b]^s = b^-1 [b,a];
r^t = r^-1; s^t = s r; r^a = r s; s^a = r; r^(a^2) = s;
"""

# x = r^(pr), y = s^(pr); the right-hand sides select F1..F4
_EXTRA = "[x,q][p,y] = {0}; [q,x][x y, p q] = {1};"
_RHS = {"F1": ("1", "1"), "F2": ("t", "1"), "F3": ("1", "t"), "F4": ("t", "t")}

# e a translation, g of order 8 and w of order 3 spanning GL_2(3)
AGL23_TEXT = """
gens e, g, w;
rels
  e^3; [e, e^g]; e^(g^2) = e (e^g)^-1; e^w = e^g;
  g^8; w^3; (g w^-1)^2; (g^3 w)^2; (g^2 w^-1)^3;
"""

C3_TEXT = "gens a; rels a^3;"


def _expand_xy(text: str) -> str:
    text = re.sub(r"\bx\b", "(r^(p r))", text)
    return re.sub(r"\by\b", "(s^(p r))", text)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    presentation: Presentation
    subgroup_words: tuple[Word, ...] = field(default=())


def _build() -> dict[str, CatalogEntry]:
    zstar = parse_presentation("gens a, b, t, u; rels" + R_Z)
    xstar = parse_presentation("gens a, b, p, q, t, u; rels" + R_Z + R_X)
    ystar = parse_presentation("gens a, b, r, s, t, u; rels" + R_Z + R_Y)
    f = parse_presentation("gens a, b, p, q, r, s, t, u; rels" + R_Z + R_X + R_Y)
    out = {
        "Zstar": CatalogEntry("Zstar", zstar),
        "Xstar": CatalogEntry("Xstar", xstar),
        "Ystar": CatalogEntry("Ystar", ystar),
        "F": CatalogEntry("F", f),
    }
    for name, (lhs1, lhs2) in _RHS.items():
        extra = parse_presentation(
            "gens a, b, p, q, r, s, t, u; rels " + _expand_xy(_EXTRA.format(lhs1, lhs2)))
        out[name] = CatalogEntry(name, f.with_relators(extra.relators))
    out["C3test"] = CatalogEntry("C3test", parse_presentation(C3_TEXT))
    out["AGL23"] = CatalogEntry("AGL23", parse_presentation(AGL23_TEXT))
    return out


_CATALOG = _build()

NAMES = ("Zstar", "Xstar", "Ystar", "F", "F1", "F2", "F3", "F4", "C3test", "AGL23")


def catalog(name: str) -> CatalogEntry:
    try:
        return _CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown catalog entry {name!r}; known: {', '.join(NAMES)}") from None


def presentation(name: str) -> Presentation:
    return catalog(name).presentation


def f_from_amalgam() -> Presentation:
    return amalgamated_presentation(presentation("Xstar"), presentation("Ystar"),
                                    {"a", "b", "t", "u"})

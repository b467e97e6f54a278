"""Presentations and the textual presentation language.

Grammar (whitespace-insensitive)::

    file     := "gens" namelist ";" "rels" relchain { ";" relchain } [";"]
    relchain := expr { "=" expr }
    expr     := term { term }
    term     := atom { "^" ( int | atom ) }
    atom     := name | "1" | "(" expr ")" | "[" expr "," expr { "," expr } "]" | atom "-1"

``^int`` is a power, ``^atom`` a conjugation.  A chain ``e1 = ... = en``
yields the relators ``e_i e_n^-1`` for ``i < n``.  Names in the relator
section are matched longest-first against the declared generators, so
``pq`` reads as ``p q`` when ``p`` and ``q`` are generators.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .words import Word, comm, free_reduce


class PresentationError(ValueError):
    pass


class PresentationSyntaxError(PresentationError):
    def __init__(self, message: str, pos: int | None = None):
        self.pos = pos
        self.message = message
        super().__init__(message if pos is None else f"at offset {pos}: {message}")


class UndeclaredGeneratorError(PresentationSyntaxError):
    pass


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        gens = tuple(self.generators)
        if not gens:
            raise PresentationError("a presentation needs at least one generator")
        if len(set(gens)) != len(gens):
            raise PresentationError(f"duplicate generator names in {gens}")
        for g in gens:
            if not _NAME_RE.fullmatch(g):
                raise PresentationError(f"invalid generator name {g!r}")
        rels = tuple(Word(r) for r in self.relators)
        for r in rels:
            if r.max_generator() > len(gens):
                raise PresentationError(f"relator {list(r)} uses an undefined generator index")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", rels)

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def index(self, name: str) -> int:
        """1-based index of a generator."""
        return self.generators.index(name) + 1

    def word(self, text: str) -> Word:
        """Parse a single expression over this presentation's generators."""
        return parse_word(text, self.generators)

    def spell(self, w: Word) -> str:
        return Word(w).spell(self.generators)

    def to_text(self) -> str:
        lines = ["gens " + ", ".join(self.generators) + ";", "rels"]
        lines.extend("  " + self.spell(r) + ";" for r in self.relators)
        return "\n".join(lines) + "\n"

    def digest(self) -> str:
        return hashlib.sha256(self.to_text().encode()).hexdigest()

    def with_relators(self, extra: Iterable[Word]) -> "Presentation":
        return Presentation(self.generators, self.relators + tuple(extra))

    def restrict(self, names: Sequence[str], relators: Iterable[Word]) -> "Presentation":
        """Presentation on a subset of generators; ``relators`` are given over self."""
        mapping = {self.index(n): i + 1 for i, n in enumerate(names)}
        out = []
        for r in relators:
            try:
                out.append(Word(mapping[abs(x)] * (1 if x > 0 else -1) for x in r))
            except KeyError:
                raise PresentationError(f"relator {self.spell(r)} leaves {list(names)}") from None
        return Presentation(tuple(names), tuple(out))


# --- tokenizer -------------------------------------------------------------

def _tokenize(text: str, names: Sequence[str], offset: int = 0):
    by_len = sorted(names, key=len, reverse=True)
    toks = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch in "^()[],=;":
            toks.append((ch, ch, offset + i))
            i += 1
            continue
        if ch == "-" or ch.isdigit():
            m = re.compile(r"-?\d+").match(text, i)
            if not m:
                raise PresentationSyntaxError(f"unexpected {ch!r}", offset + i)
            toks.append(("int", int(m.group()), offset + i))
            i = m.end()
            continue
        if ch.isalpha() or ch == "_":
            for nm in by_len:
                if text.startswith(nm, i):
                    toks.append(("name", nm, offset + i))
                    i += len(nm)
                    break
            else:
                m = _NAME_RE.match(text, i)
                raise UndeclaredGeneratorError(f"undeclared generator {m.group()!r}", offset + i)
            continue
        raise PresentationSyntaxError(f"unexpected character {ch!r}", offset + i)
    toks.append(("eof", None, offset + n))
    return toks


# --- expression trees ---------------------------------------------------------
# ("gen", k) | ("one",) | ("mul", [nodes]) | ("pow", node, n) | ("conj", node, node)
# | ("comm", node, node) | ("inv", node)


class _Parser:
    def __init__(self, toks, names):
        self.toks = toks
        self.i = 0
        self.index = {nm: k + 1 for k, nm in enumerate(names)}

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise PresentationSyntaxError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        self.i += 1
        return tok

    def _starts_atom(self):
        kind, val, _ = self.peek()
        return kind in ("name", "(", "[") or (kind == "int" and val == 1)

    def expr(self):
        if not self._starts_atom():
            tok = self.peek()
            raise PresentationSyntaxError(f"expected an expression, found {tok[1]!r}", tok[2])
        terms = [self.term()]
        while self._starts_atom():
            terms.append(self.term())
        return terms[0] if len(terms) == 1 else ("mul", terms)

    def term(self):
        node = self.atom()
        while self.peek()[0] == "^":
            self.take("^")
            kind, val, pos = self.peek()
            if kind == "int":
                self.take()
                node = ("pow", node, val)
            elif kind in ("name", "(", "["):
                node = ("conj", node, self.atom())
            else:
                raise PresentationSyntaxError(f"bad exponent {val!r}", pos)
        return node

    def atom(self):
        kind, val, pos = self.take()
        if kind == "name":
            node = ("gen", self.index[val])
        elif kind == "int" and val == 1:
            node = ("one",)
        elif kind == "(":
            node = self.expr()
            self.take(")")
        elif kind == "[":
            parts = [self.expr()]
            while self.peek()[0] == ",":
                self.take(",")
                parts.append(self.expr())
            self.take("]")
            if len(parts) < 2:
                raise PresentationSyntaxError("a commutator needs two entries", pos)
            node = parts[0]
            for p in parts[1:]:
                node = ("comm", node, p)
        else:
            raise PresentationSyntaxError(f"unexpected {val!r}", pos)
        # postfix "-1" inverse, e.g. "a-1"
        while self.peek()[0] == "int" and self.peek()[1] == -1:
            self.take()
            node = ("inv", node)
        return node

    def relchain(self):
        members = [self.expr()]
        while self.peek()[0] == "=":
            self.take("=")
            members.append(self.expr())
        return members


def expand_sugar(node) -> Word:
    """Flatten an expression tree to a freely reduced word."""
    kind = node[0]
    if kind == "gen":
        return Word((node[1],))
    if kind == "one":
        return Word()
    if kind == "mul":
        out = Word()
        for n in node[1]:
            out = out * expand_sugar(n)
        return out
    if kind == "pow":
        return expand_sugar(node[1]) ** node[2]
    if kind == "conj":
        return expand_sugar(node[1]).conj(expand_sugar(node[2]))
    if kind == "comm":
        return comm(expand_sugar(node[1]), expand_sugar(node[2]))
    if kind == "inv":
        return ~expand_sugar(node[1])
    raise ValueError(f"unknown node {node!r}")


def parse_expression(text: str, names: Sequence[str]):
    """Parse ``text`` into an expression tree over the given generator names."""
    p = _Parser(_tokenize(text, names), names)
    node = p.expr()
    p.take("eof")
    return node


def parse_word(text: str, names: Sequence[str]) -> Word:
    return expand_sugar(parse_expression(text, names))


def chain_relators(members: list[Word]) -> list[Word]:
    last = members[-1]
    return [free_reduce(m * ~last) for m in members[:-1]]


_HEADER = re.compile(r"\s*gens\b(?P<names>[^;]*);\s*rels\b", re.S)


def parse_presentation(text: str) -> Presentation:
    m = _HEADER.match(text)
    if not m:
        raise PresentationSyntaxError("expected 'gens <names>; rels ...'", 0)
    names = [nm for nm in re.split(r"[\s,]+", m.group("names").strip()) if nm]
    if not names:
        raise PresentationSyntaxError("empty generator list", m.start("names"))
    for nm in names:
        if not _NAME_RE.fullmatch(nm):
            raise PresentationSyntaxError(f"invalid generator name {nm!r}", m.start("names"))
    if len(set(names)) != len(names):
        raise PresentationSyntaxError("duplicate generator names", m.start("names"))
    toks = _tokenize(text[m.end():], names, offset=m.end())
    p = _Parser(toks, names)
    relators: list[Word] = []
    while True:
        while p.peek()[0] == ";":
            p.take(";")
        if p.peek()[0] == "eof":
            break
        members = p.relchain()
        if len(members) == 1:
            relators.append(expand_sugar(members[0]))
        else:
            relators.extend(chain_relators([expand_sugar(x) for x in members]))
        if p.peek()[0] != "eof":
            p.take(";")
    return Presentation(tuple(names), tuple(relators))


def amalgamated_presentation(px: Presentation, py: Presentation, shared: Iterable[str]) -> Presentation:
    """Free product of ``px`` and ``py`` with the named generators identified.

    Unshared generators of ``py`` are placed just before the next shared
    generator they precede in ``py``; relators of ``px`` come first.
    Relators of ``py`` that already occur (after renaming) are not repeated.
    """
    shared = set(shared)
    for nm in shared:
        if nm not in px.generators or nm not in py.generators:
            raise PresentationError(f"shared generator {nm!r} missing from one side")
    clash = (set(px.generators) & set(py.generators)) - shared
    if clash:
        raise PresentationError(f"unshared generators with the same name: {sorted(clash)}")
    # merge the two generator orders at the shared generators
    names = []
    pending = [g for g in py.generators]
    for g in px.generators:
        if g in shared and g in pending:
            k = pending.index(g)
            names.extend(h for h in pending[:k] if h not in shared and h not in names)
            del pending[:k + 1]
        names.append(g)
    names.extend(h for h in pending if h not in shared and h not in names)
    index = {nm: i + 1 for i, nm in enumerate(names)}
    rels = []
    seen = set()
    for side in (px, py):
        rename = {side.index(g): index[g] for g in side.generators}
        for r in side.relators:
            w = Word(rename[abs(x)] * (1 if x > 0 else -1) for x in r)
            if w not in seen:
                rels.append(w)
                seen.add(w)
    return Presentation(tuple(names), tuple(rels))

"""Permutations and permutation groups with a deterministic stabilizer chain.

Points are 0-based internally; text uses 1-based disjoint cycles.  Products
act on the right: ``(g * h)[i] == h[g[i]]``, i.e. apply ``g`` first.
"""

from __future__ import annotations

import math
import re
from functools import cached_property, reduce
from typing import Callable, Hashable, Iterable, Iterator, Sequence


_IDENTITY: dict[int, tuple] = {}


class Perm(tuple):
    """A permutation of ``range(n)`` stored as its image tuple."""

    __slots__ = ()

    def __new__(cls, images: Iterable[int] = ()):
        return tuple.__new__(cls, images)

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return tuple.__new__(cls, range(n))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int, one_based: bool = True) -> "Perm":
        img = list(range(n))
        off = 1 if one_based else 0
        for cyc in cycles:
            cyc = [c - off for c in cyc]
            for i, c in enumerate(cyc):
                img[c] = cyc[(i + 1) % len(cyc)]
        p = cls(img)
        if sorted(p) != list(range(n)):
            raise ValueError("cycles do not describe a permutation")
        return p

    @classmethod
    def parse(cls, text: str, n: int) -> "Perm":
        """Parse 1-based cycle notation such as ``(1 2 3)(4 5)`` or ``()``."""
        body = text.strip()
        if not re.fullmatch(r"(\(\s*(\d+([\s,]+\d+)*)?\s*\))+", body):
            raise ValueError(f"bad cycle notation {text!r}")
        cycles = [[int(x) for x in re.split(r"[\s,]+", c.strip())]
                  for c in re.findall(r"\(([^)]*)\)", body) if c.strip()]
        for cyc in cycles:
            if any(not 1 <= x <= n for x in cyc) or len(set(cyc)) != len(cyc):
                raise ValueError(f"bad cycle {cyc} for degree {n}")
        return cls.from_cycles(cycles, n)

    @property
    def degree(self) -> int:
        return len(self)

    def __mul__(self, other: "Perm") -> "Perm":
        return tuple.__new__(Perm, [other[i] for i in self])

    def __invert__(self) -> "Perm":
        inv = [0] * len(self)
        for i, j in enumerate(self):
            inv[j] = i
        return tuple.__new__(Perm, inv)

    inverse = __invert__

    def __pow__(self, n: int) -> "Perm":
        if n < 0:
            return (~self) ** (-n)
        result = Perm.identity(len(self))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self, g: "Perm") -> "Perm":
        """``self^g = g^-1 self g``."""
        out = [0] * len(self)
        for i, j in enumerate(self):
            out[g[i]] = g[j]
        return tuple.__new__(Perm, out)

    def is_identity(self) -> bool:
        n = len(self)
        ident = _IDENTITY.get(n)
        if ident is None:
            ident = _IDENTITY[n] = tuple(range(n))
        return tuple.__eq__(self, ident)

    def cycles(self) -> list[list[int]]:
        seen = [False] * len(self)
        out = []
        for i in range(len(self)):
            if seen[i] or self[i] == i:
                continue
            cyc = [i]
            seen[i] = True
            j = self[i]
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = self[j]
            out.append(cyc)
        return out

    def order(self) -> int:
        return reduce(math.lcm, (len(c) for c in self.cycles()), 1)

    def support(self) -> list[int]:
        return [i for i, j in enumerate(self) if i != j]

    def cycle_string(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in cyc)

    def __repr__(self):
        return f"Perm({self.cycle_string()}, n={len(self)})"


def comm(x: Perm, y: Perm) -> Perm:
    """``[x,y] = x^-1 y^-1 x y``."""
    return (~x) * (~y) * x * y


class CapExceeded(RuntimeError):
    """A desk-scale computation would exceed its configured element cap."""


ELEMENT_CAP = 1_000_000


class _Level:
    __slots__ = ("point", "gens", "trans", "orbit", "done")

    def __init__(self, point: int):
        self.point = point
        self.gens: list[Perm] = []
        self.trans: dict[int, Perm] = {}
        self.orbit: list[int] = []
        self.done: set[tuple[int, int]] = set()


class PermutationGroup:
    """A group generated by permutations of a common degree.

    The stabilizer chain is built on first use and cached.  Base points are
    chosen deterministically: a prescribed prefix, then the first point
    moved by the element that needs a new level.
    """

    def __init__(self, generators: Iterable[Perm], degree: int | None = None,
                 base: Sequence[int] = (), order_hint: int | None = None):
        gens = [Perm(g) for g in generators]
        if degree is None:
            if not gens:
                raise ValueError("degree required for a group with no generators")
            degree = len(gens[0])
        for g in gens:
            if len(g) != degree:
                raise ValueError("generators of different degrees")
        self.degree = degree
        self.generators = [g for g in gens if not g.is_identity()]
        self._base_prefix = list(base)
        self._order_hint = order_hint
        self._levels: list[_Level] | None = None

    # ---- construction of the chain ------------------------------------------

    def _sift(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        levels = self._levels
        for j in range(start, len(levels)):
            L = levels[j]
            u = L.trans.get(g[L.point])
            if u is None:
                return g, j
            if u is not L.trans[L.point]:
                g = g * ~u
        return g, len(levels)

    def _extend_orbit(self, L: _Level):
        orbit, trans = L.orbit, L.trans
        i = 0
        while i < len(orbit):
            p = orbit[i]
            u = trans[p]
            for s in L.gens:
                q = s[p]
                if q not in trans:
                    trans[q] = u * s
                    orbit.append(q)
            i += 1

    def _new_level(self, g: Perm) -> _Level:
        used = {L.point for L in self._levels}
        point = None
        for b in self._base_prefix:
            if b not in used and g[b] != b:
                point = b
                break
        if point is None:
            for b in self._base_prefix:
                if b not in used:
                    point = b
                    break
        if point is None:
            point = next(i for i in range(self.degree) if g[i] != i)
        L = _Level(point)
        L.trans[point] = Perm.identity(self.degree)
        L.orbit.append(point)
        self._levels.append(L)
        return L

    def _add_strong(self, h: Perm, upto: int):
        """Add ``h`` to the generating sets of levels ``0..upto`` it fixes."""
        while upto >= len(self._levels):
            self._new_level(h)
        for l in range(upto + 1):
            L = self._levels[l]
            if all(h[self._levels[k].point] == self._levels[k].point for k in range(l)):
                if h not in L.gens:
                    L.gens.append(h)
                    self._extend_orbit(L)

    def _build(self):
        self._levels = []
        ident = Perm.identity(self.degree)
        for b in self._base_prefix:
            L = _Level(b)
            L.trans[b] = ident
            L.orbit.append(b)
            self._levels.append(L)
        for g in self.generators:
            h, j = self._sift(g)
            if not h.is_identity():
                self._add_strong(h, j)
        target = self._order_hint
        i = len(self._levels) - 1
        while i >= 0:
            if target is not None and self._chain_order() == target:
                break
            L = self._levels[i]
            restart = None
            for pi in range(len(L.orbit)):
                p = L.orbit[pi]
                u = L.trans[p]
                for si, s in enumerate(L.gens):
                    key = (p, id(s))
                    if key in L.done:
                        continue
                    L.done.add(key)
                    q = s[p]
                    h = u * s * ~L.trans[q]
                    if h.is_identity():
                        continue
                    r, j = self._sift(h, i + 1)
                    if not r.is_identity():
                        self._add_strong(r, j)
                        restart = j
                        break
                if restart is not None:
                    break
            if restart is not None:
                i = restart
                continue
            i -= 1
        # drop trivial levels from the prescribed prefix
        self._levels = [L for L in self._levels if len(L.orbit) > 1 or L.gens] or []

    def _chain_order(self) -> int:
        return math.prod(len(L.orbit) for L in self._levels)

    @property
    def chain(self) -> list[_Level]:
        if self._levels is None:
            self._build()
        return self._levels

    # ---- basic queries ----------------------------------------------------------

    @cached_property
    def identity(self) -> Perm:
        return Perm.identity(self.degree)

    def order(self) -> int:
        return math.prod(len(L.orbit) for L in self.chain)

    def __len__(self):
        return self.order()

    @property
    def base(self) -> list[int]:
        return [L.point for L in self.chain]

    def strong_generators(self) -> list[Perm]:
        out = []
        for L in self.chain:
            for g in L.gens:
                if g not in out:
                    out.append(g)
        return out

    def contains(self, g: Perm) -> bool:
        g = Perm(g)
        if len(g) != self.degree:
            return False
        self.chain
        r, _ = self._sift(g)
        return r.is_identity()

    __contains__ = contains
    membership = contains

    def is_trivial(self) -> bool:
        return not self.generators

    def orbit(self, point: int) -> list[int]:
        orb = [point]
        seen = {point}
        for p in orb:
            for g in self.generators:
                q = g[p]
                if q not in seen:
                    seen.add(q)
                    orb.append(q)
        return orb

    def orbits(self) -> list[list[int]]:
        seen = set()
        out = []
        for i in range(self.degree):
            if i not in seen:
                orb = sorted(self.orbit(i))
                seen.update(orb)
                out.append(orb)
        return out

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    def elements(self, cap: int = ELEMENT_CAP) -> list[Perm]:
        """All elements in chain order (deterministic)."""
        n = self.order()
        if n > cap:
            raise CapExceeded(f"group of order {n} exceeds element cap {cap}")
        elems = [self.identity]
        for L in reversed(self.chain):
            reps = [L.trans[p] for p in L.orbit]
            elems = [e * u for u in reps for e in elems]
        return elems

    def __iter__(self) -> Iterator[Perm]:
        return iter(self.elements())

    def random_element(self, rng) -> Perm:
        g = self.identity
        for L in reversed(self.chain):
            g = g * L.trans[L.orbit[rng.randrange(len(L.orbit))]]
        return g

    def subgroup(self, gens: Iterable[Perm], **kw) -> "PermutationGroup":
        return PermutationGroup(list(gens), self.degree, **kw)

    def is_subgroup_of(self, other: "PermutationGroup") -> bool:
        return all(other.contains(g) for g in self.generators)

    def __eq__(self, other):
        if not isinstance(other, PermutationGroup):
            return NotImplemented
        return (self.degree == other.degree and self.order() == other.order()
                and self.is_subgroup_of(other))

    def __hash__(self):
        return hash((self.degree, self.order()))

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(g * h == h * g for i, g in enumerate(gens) for h in gens[i + 1:])

    def __repr__(self):
        return f"<PermutationGroup degree={self.degree} ngens={len(self.generators)}>"

    def to_text(self) -> str:
        lines = [f"degree {self.degree}"]
        lines.extend(g.cycle_string() for g in self.generators)
        return "\n".join(lines) + "\n"


def parse_generators(text: str) -> PermutationGroup:
    """Read ``degree N`` followed by one 1-based cycle-notation permutation per line."""
    degree = None
    perms = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"degree\s*:?\s*(\d+)", line)
        if m:
            degree = int(m.group(1))
            continue
        if degree is None:
            raise ValueError("generator file must start with 'degree N'")
        perms.append(Perm.parse(line, degree))
    if degree is None:
        raise ValueError("missing 'degree N' line")
    return PermutationGroup(perms, degree)


# ---- orbit-stabilizer for arbitrary actions -------------------------------------

def action_orbit(G: PermutationGroup, x: Hashable, act: Callable[[Hashable, Perm], Hashable],
                 cap: int = ELEMENT_CAP):
    """Orbit of ``x`` with a transversal: returns ``(orbit_list, {y: u})`` where ``act(x, u) == y``."""
    trans = {x: G.identity}
    orbit = [x]
    for y in orbit:
        u = trans[y]
        for g in G.generators:
            z = act(y, g)
            if z not in trans:
                trans[z] = u * g
                orbit.append(z)
                if len(orbit) > cap:
                    raise CapExceeded(f"orbit longer than {cap}")
    return orbit, trans


def stabilizer(G: PermutationGroup, x: Hashable, act: Callable[[Hashable, Perm], Hashable],
               cap: int = ELEMENT_CAP) -> PermutationGroup:
    """Stabilizer of ``x`` under a right action ``act(x, g)`` of ``G``.

    Schreier generators are added until the order reaches ``|G| / |orbit|``.
    """
    orbit, trans = action_orbit(G, x, act, cap)
    target = G.order() // len(orbit)
    H = PermutationGroup([], G.degree)
    if target == 1:
        return H
    gens: list[Perm] = []
    for y in orbit:
        u = trans[y]
        for g in G.generators:
            s = u * g * ~trans[act(y, g)]
            if s.is_identity() or (gens and H.contains(s)):
                continue
            gens.append(s)
            H = PermutationGroup(gens, G.degree)
            if H.order() == target:
                return PermutationGroup(gens, G.degree, order_hint=target)
    raise RuntimeError("Schreier generators did not reach the expected stabilizer order")


def point_stabilizer(G: PermutationGroup, point: int) -> PermutationGroup:
    return stabilizer(G, point, lambda p, g: g[p])


def conj_action(x: Perm, g: Perm) -> Perm:
    return (~g) * x * g


def set_action(s: frozenset, g: Perm) -> frozenset:
    return frozenset(g[i] for i in s)

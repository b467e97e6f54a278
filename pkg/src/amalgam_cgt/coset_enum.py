"""Todd-Coxeter coset enumeration.

The heavy lifting happens in :mod:`amalgam_cgt._tc_kernels`; this module
packs presentations into flat arrays, runs a strategy, and wraps the
closed, compacted and standardized result in a :class:`CosetTable`.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import _tc_kernels as K
from .perm import Perm
from .presentation import Presentation
from .words import Word

TABLE_FORMAT_VERSION = 1
STRATEGIES = ("hlt", "felsch")
PDL_SIZE = 256


class LimitExceeded(RuntimeError):
    """The coset table outgrew ``max_cosets``: the index may be infinite or the cap too small."""


class TableNotClosed(ValueError):
    pass


@dataclass(frozen=True)
class EnumerationLimits:
    max_cosets: int = 2_500_000
    strategy: str = "hlt"

    def __post_init__(self):
        if self.max_cosets < 1:
            raise ValueError("max_cosets must be positive")
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}")


def column(letter: int) -> int:
    return 2 * (letter - 1) if letter > 0 else 2 * (-letter - 1) + 1


def involutions(P: Presentation) -> frozenset[int]:
    """Generators (1-based) for which x^2 is a relator."""
    return frozenset(abs(r[0]) for r in P.relators if len(r) == 2 and r[0] == r[1])


def _columns(w: Sequence[int], invols) -> list[int]:
    # an involution is its own inverse, so x^-1 reads the x column
    return [column(abs(x)) if abs(x) in invols else column(x) for x in w]


def _pack(words: Sequence[Word], invols=frozenset()):
    cols = [c for w in words for c in _columns(w, invols)]
    starts = np.zeros(len(words) + 1, dtype=np.int64)
    for i, w in enumerate(words):
        starts[i + 1] = starts[i] + len(w)
    return np.asarray(cols, dtype=np.int32), starts


def _pack_conjugates(words: Sequence[Word], ncol: int, invols=frozenset()):
    """All cyclic conjugates of the relators and their inverses, grouped by first column."""
    by_col: list[list[list[int]]] = [[] for _ in range(ncol)]
    for w in list(words) + [~Word(w) for w in words]:
        cw = _columns(w, invols)
        for k in range(len(cw)):
            rot = cw[k:] + cw[:k]
            if rot not in by_col[rot[0]]:
                by_col[rot[0]].append(rot)
    flat, starts, cidx = [], [0], [0]
    for col in range(ncol):
        for rot in by_col[col]:
            flat.extend(rot)
            starts.append(len(flat))
        cidx.append(len(starts) - 1)
    return (np.asarray(flat, dtype=np.int32), np.asarray(starts, dtype=np.int64),
            np.asarray(cidx, dtype=np.int64))


@dataclass(frozen=True, eq=False)
class CosetTable:
    """A closed coset table.

    ``rows`` has shape ``(index + 1, 2 * ngens)``; row 0 is padding, cosets
    are numbered from 1 and coset 1 is the subgroup itself.
    """
    presentation: Presentation
    subgroup_words: tuple[Word, ...]
    rows: np.ndarray
    strategy: str = "hlt"
    stats: dict = field(default_factory=dict)

    @property
    def live_count(self) -> int:
        return self.rows.shape[0] - 1

    index = live_count

    def __eq__(self, other):
        if not isinstance(other, CosetTable):
            return NotImplemented
        return (self.presentation == other.presentation
                and self.subgroup_words == other.subgroup_words
                and np.array_equal(self.rows, other.rows))

    def is_closed(self) -> bool:
        return is_closed(self.rows, self.presentation.relators, self.subgroup_words)

    def trace(self, c: int, w: Iterable[int]) -> int:
        if not 1 <= c <= self.live_count:
            raise IndexError(f"coset {c} out of range 1..{self.live_count}")
        for x in w:
            c = int(self.rows[c, column(x)])
        return c

    def to_json(self) -> str:
        return json.dumps(table_to_dict(self), separators=(",", ":"))


def is_closed(rows: np.ndarray, relators: Sequence[Word], subgroup_words: Sequence[Word] = ()) -> bool:
    """Independent closure check: every entry defined, the table consistent,
    every relator a loop at every coset and every subgroup word a loop at 1."""
    n = rows.shape[0] - 1
    body = rows[1:]
    if n < 1 or (body == 0).any() or (body > n).any():
        return False
    idx = np.arange(1, n + 1)
    for x in range(0, rows.shape[1], 2):
        if not np.array_equal(rows[rows[1:, x], x + 1], idx):
            return False
    for w in relators:
        cur = idx.copy()
        for x in w:
            cur = rows[cur, column(x)]
        if not np.array_equal(cur, idx):
            return False
    for w in subgroup_words:
        c = 1
        for x in w:
            c = rows[c, column(x)]
        if c != 1:
            return False
    return True


def enumerate_cosets(P: Presentation, subgroup: Sequence[Word] = (),
                     limits: EnumerationLimits | None = None) -> CosetTable:
    """Enumerate the cosets of ``<subgroup>`` in the group presented by ``P``."""
    limits = limits or EnumerationLimits()
    subgroup = tuple(Word(w) for w in subgroup)
    for w in subgroup:
        if w.max_generator() > P.ngens:
            raise ValueError(f"subgroup word {list(w)} uses an undefined generator")
    ncol = 2 * P.ngens
    invols = involutions(P)
    inv = np.arange(ncol, dtype=np.int32) ^ 1
    shadow = np.zeros(ncol, dtype=np.int32)
    for k in invols:
        inv[2 * k - 2] = 2 * k - 2
        shadow[2 * k - 1] = 1
    # shortest relators first; empty relators carry no information
    rels_list = sorted((r for r in P.relators if len(r)), key=len)
    rels, rstart = _pack(rels_list, invols)
    subs, sstart = _pack([w for w in subgroup if len(w)], invols)
    cr, cstart, cidx = _pack_conjugates(rels_list, ncol, invols)

    cap = limits.max_cosets
    table = np.zeros((cap + 1, ncol), dtype=np.int32)
    par = np.zeros(cap + 1, dtype=np.int32)
    queue = np.zeros(cap + 1, dtype=np.int32)
    ded = np.zeros((min(4 * cap + 16, 1 << 20), 2), dtype=np.int32)
    pdl = np.zeros((PDL_SIZE, 2), dtype=np.int32)
    st = np.zeros(K.NSTATE, dtype=np.int64)
    par[1] = 1
    st[K.N_ALLOC] = st[K.N_LIVE] = st[K.MAX_ALLOC] = st[K.N_DEFINED] = 1

    t0 = time.perf_counter()
    if limits.strategy == "hlt":
        code = K.hlt(table, inv, shadow, par, queue, ded, st, pdl, rels, rstart,
                     cr, cstart, cidx, subs, sstart)
    else:
        fill = (5 * (ncol + 2)) // 4
        code = K.felsch(table, inv, shadow, par, queue, ded, st, pdl, fill, rels, rstart,
                        cr, cstart, cidx, subs, sstart)
    elapsed = time.perf_counter() - t0
    stats = {
        "strategy": limits.strategy,
        "max_cosets": cap,
        "max_active": int(st[K.MAX_ALLOC]),
        "total_defined": int(st[K.N_DEFINED]),
        "coincidences": int(st[K.N_COINC]),
        "seconds": round(elapsed, 3),
    }
    if code == K.NOSPACE:
        raise LimitExceeded(
            f"coset table exceeded {cap} rows ({int(st[K.N_LIVE])} live); "
            "the index may be infinite or the cap too small")
    n = int(st[K.N_ALLOC])
    if n != st[K.N_LIVE]:
        K.compact(table, par, st, 1)
        n = int(st[K.N_ALLOC])
    for k in invols:
        table[1:n + 1, 2 * k - 1] = table[1:n + 1, 2 * k - 2]
    rows = K.standardize(table, n)
    del table
    out = CosetTable(P, subgroup, rows, limits.strategy, stats)
    if out.live_count != n or not out.is_closed():
        raise RuntimeError("enumeration finished with a table that is not closed")
    return out


def standardize(t: CosetTable) -> CosetTable:
    """Renumber cosets breadth-first from coset 1, scanning columns in order."""
    if not is_closed(t.rows, t.presentation.relators, t.subgroup_words):
        raise TableNotClosed("standardize needs a closed table")
    rows = K.standardize(np.ascontiguousarray(t.rows, dtype=np.int32), t.live_count)
    return CosetTable(t.presentation, t.subgroup_words, rows, t.strategy, dict(t.stats))


def coset_action(t: CosetTable) -> list[tuple[str, Perm]]:
    """The permutation induced by each generator on the cosets (0-based points)."""
    if not is_closed(t.rows, t.presentation.relators, t.subgroup_words):
        raise TableNotClosed("coset_action needs a closed table")
    out = []
    for k, name in enumerate(t.presentation.generators):
        col = t.rows[1:, 2 * k] - 1
        out.append((name, Perm(col.tolist())))
    return out


def coset_representatives(t: CosetTable) -> list[Word]:
    """A word for each coset, read off the breadth-first spanning tree."""
    n = t.live_count
    reps: list[Word | None] = [None] * (n + 1)
    reps[1] = Word()
    order = [1]
    for c in order:
        for col in range(t.rows.shape[1]):
            d = int(t.rows[c, col])
            if reps[d] is None:
                letter = col // 2 + 1
                reps[d] = reps[c] * Word((letter if col % 2 == 0 else -letter,))
                order.append(d)
    return reps[1:]


def table_to_dict(t: CosetTable) -> dict:
    P = t.presentation
    return {
        "format": "coset-table",
        "version": TABLE_FORMAT_VERSION,
        "presentation_sha256": P.digest(),
        "generators": list(P.generators),
        "subgroup": [P.spell(w) for w in t.subgroup_words],
        "strategy": t.strategy,
        "max_cosets": t.stats.get("max_cosets"),
        "index": t.live_count,
        "rows": t.rows[1:].tolist(),
    }


def table_from_dict(d: dict, P: Presentation) -> CosetTable:
    if d.get("format") != "coset-table" or d.get("version") != TABLE_FORMAT_VERSION:
        raise ValueError("not a version-1 coset table dump")
    if d["presentation_sha256"] != P.digest():
        raise ValueError("table was produced for a different presentation")
    rows = np.zeros((len(d["rows"]) + 1, 2 * P.ngens), dtype=np.int32)
    rows[1:] = np.asarray(d["rows"], dtype=np.int32)
    subgroup = tuple(P.word(s) for s in d["subgroup"])
    return CosetTable(P, subgroup, rows, d.get("strategy", "hlt"),
                      {"max_cosets": d.get("max_cosets")})

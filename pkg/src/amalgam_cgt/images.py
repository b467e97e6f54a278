"""Permutation images of catalog groups, with labelled generators.

F1 and F3 are realized on the cosets of the subgroup generated by the
generators of X* (indices 220 and 13); the amalgam pieces on the cosets
of the trivial subgroup.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .catalog import catalog
from .coset_enum import CosetTable, EnumerationLimits, coset_action, enumerate_cosets
from .perm import Perm, PermutationGroup
from .words import Word

X_GENERATORS = ("a", "b", "p", "q", "t", "u")
Y_GENERATORS = ("a", "b", "r", "s", "t", "u")
Z_GENERATORS = ("a", "b", "t", "u")


@dataclass(frozen=True, eq=False)
class GroupImage:
    name: str
    group: PermutationGroup
    labels: dict
    table: CosetTable

    @property
    def degree(self) -> int:
        return self.group.degree

    def __getitem__(self, label: str) -> Perm:
        return self.labels[label]

    def subgroup(self, names) -> PermutationGroup:
        return PermutationGroup([self.labels[n] for n in names], self.degree)

    def evaluate(self, w: Word) -> Perm:
        names = self.table.presentation.generators
        g = Perm.identity(self.degree)
        for x in w:
            y = self.labels[names[abs(x) - 1]]
            g = g * (y if x > 0 else ~y)
        return g


def build_image(name: str, subgroup_names=(), limits: EnumerationLimits | None = None,
                order_hint: int | None = None) -> GroupImage:
    entry = catalog(name)
    P = entry.presentation
    sub = [Word((P.index(n),)) for n in subgroup_names]
    table = enumerate_cosets(P, sub, limits)
    labels = dict(coset_action(table))
    G = PermutationGroup(list(labels.values()), table.live_count, order_hint=order_hint)
    return GroupImage(name, G, labels, table)


@lru_cache(maxsize=None)
def image(name: str, max_cosets: int = EnumerationLimits.max_cosets, strategy: str = "hlt") -> GroupImage:
    """Cached image of a catalog group.

    F1..F4 act on the cosets of the X* generators; everything else acts
    regularly on the cosets of the trivial subgroup.
    """
    limits = EnumerationLimits(max_cosets, strategy)
    if name in ("F1", "F2", "F3", "F4"):
        return build_image(name, X_GENERATORS, limits)
    return build_image(name, (), limits)

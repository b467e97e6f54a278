"""Free-group words over signed generator indices.

A letter ``k > 0`` stands for generator ``k`` (1-based) and ``-k`` for its
inverse.  Conventions used everywhere in the package::

    x^y   = y^-1 x y
    [x,y] = x^-1 y^-1 x y
"""

from __future__ import annotations

from typing import Iterable, Sequence


def free_reduce(letters: Iterable[int]) -> "Word":
    """Cancel adjacent ``g g^-1`` pairs until none remain."""
    out: list[int] = []
    for x in letters:
        if x == 0:
            raise ValueError("0 is not a valid letter")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple.__new__(Word, out)


class Word(tuple):
    """A freely reduced word.  The empty word is the identity."""

    def __new__(cls, letters: Iterable[int] = ()):
        return free_reduce(letters)

    def __mul__(self, other):
        return free_reduce(tuple.__add__(self, other))

    def __add__(self, other):
        raise TypeError("use * to multiply words")

    def __invert__(self) -> "Word":
        return tuple.__new__(Word, [-x for x in reversed(self)])

    def inverse(self) -> "Word":
        return ~self

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return (~self) ** (-n)
        out = Word()
        for _ in range(n):
            out = out * self
        return out

    def conj(self, g: "Word") -> "Word":
        """``self^g = g^-1 self g``."""
        return (~g) * self * g

    def max_generator(self) -> int:
        return max((abs(x) for x in self), default=0)

    def spell(self, names: Sequence[str]) -> str:
        if not self:
            return "1"
        parts = []
        i = 0
        while i < len(self):
            x = self[i]
            j = i
            while j < len(self) and self[j] == x:
                j += 1
            n = j - i
            name = names[abs(x) - 1]
            e = n if x > 0 else -n
            parts.append(name if e == 1 else f"{name}^{e}")
            i = j
        return " ".join(parts)

    def __repr__(self):
        return f"Word({list(self)!r})"


IDENTITY = Word()


def gen(k: int) -> Word:
    return Word((k,))


def comm(x: Word, y: Word) -> Word:
    """``[x,y] = x^-1 y^-1 x y``."""
    return (~x) * (~y) * x * y


def cyclic_reduce(w: Word) -> Word:
    w = Word(w)
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return tuple.__new__(Word, w[i:j + 1])


def identity_entry(name: str, lhs: Word, rhs: Word, names: Sequence[str] = "abc") -> dict:
    return {
        "identity": name,
        "lhs": lhs.spell(names),
        "rhs": rhs.spell(names),
        "pass": Word(lhs) == Word(rhs),
    }


def verify_free_identities() -> list[dict]:
    """Check the two commutator expansion identities in the free group on a, b, c."""
    a, b, c = gen(1), gen(2), gen(3)
    return [
        identity_entry("[a,bc] = [a,c][a,b]^c", comm(a, b * c), comm(a, c) * comm(a, b).conj(c)),
        identity_entry("[ab,c] = [a,c]^b[b,c]", comm(a * b, c), comm(a, c).conj(b) * comm(b, c)),
    ]

"""Word combinatorics: periods, agreeability, primitivity, rotations and lassos.

A word is any tuple of labels.  Only the equality of letters matters here, so
these helpers work equally for label strings and for integer label codes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Sequence

Word = tuple


def has_period(w: Sequence[Hashable], p: int) -> bool:
    """True iff ``w = beta w' = w' gamma`` with ``|beta| = p`` and ``w'`` nonempty.

    That is ``w[i] == w[i + p]`` everywhere and ``p <= len(w) - 1``.
    """
    if p < 1:
        raise ValueError("period must be >= 1")
    n = len(w)
    if p > n - 1:
        return False
    return all(w[i] == w[i + p] for i in range(n - p))


def is_agreeable(w: Sequence[Hashable], level: int) -> bool:
    """True iff ``w`` has a period ``p`` with ``1 <= p <= min(level, |w| - 1)``."""
    if len(w) < 1 or level < 1:
        raise ValueError("need a nonempty word and level >= 1")
    return any(has_period(w, p) for p in range(1, min(level, len(w) - 1) + 1))


def primitive_root(w: Sequence[Hashable]) -> Word:
    """Shortest ``d`` with ``w = d^k``."""
    w = tuple(w)
    n = len(w)
    if n == 0:
        raise ValueError("empty word has no primitive root")
    for d in range(1, n + 1):
        if n % d == 0 and w[:d] * (n // d) == w:
            return w[:d]
    raise AssertionError("unreachable")


def is_primitive(w: Sequence[Hashable]) -> bool:
    return len(primitive_root(w)) == len(w)


def rotate(w: Sequence[Hashable], k: int) -> Word:
    """Cyclic left rotation: ``rotate(w, 1) == w[1:] + w[:1]``."""
    w = tuple(w)
    if not w:
        raise ValueError("cannot rotate the empty word")
    k %= len(w)
    return w[k:] + w[:k]


@dataclass(frozen=True)
class Lasso:
    """The eventually periodic infinite word ``prefix . cycle . cycle . ...``."""

    prefix: Word
    cycle: Word

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "cycle", tuple(self.cycle))
        if not self.cycle:
            raise ValueError("lasso cycle must be nonempty")

    def letter(self, i: int) -> Hashable:
        """0-based letter access into the infinite word."""
        u, z = self.prefix, self.cycle
        if i < len(u):
            return u[i]
        return z[(i - len(u)) % len(z)]

    def take(self, n: int) -> Word:
        return tuple(self.letter(i) for i in range(n))

    def canonical(self) -> "Lasso":
        """Primitive cycle, and a prefix that cannot be rolled into the cycle."""
        u, z = list(self.prefix), primitive_root(self.cycle)
        while u and u[-1] == z[-1]:
            u.pop()
            z = z[-1:] + z[:-1]
        return Lasso(tuple(u), z)

    def __len__(self):
        return len(self.prefix) + len(self.cycle)


def lasso_least_pure_period(x: Lasso, bound: int) -> int | None:
    """Least ``p <= bound`` with ``x[i] == x[i + p]`` for every ``i >= 0``.

    Past the prefix the word is ``|cycle|``-periodic, so comparing positions
    ``0 .. |prefix| + |cycle| + p`` decides shift invariance for the whole word.
    """
    u, z = len(x.prefix), len(x.cycle)
    for p in range(1, bound + 1):
        horizon = u + z + p
        if all(x.letter(i) == x.letter(i + p) for i in range(horizon)):
            return p
    return None


def format_word(w: Sequence[str]) -> str:
    return ".".join(w)

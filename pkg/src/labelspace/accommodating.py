"""Accommodating families, generalized vertices and their partitions.

Key identity used throughout: ``v`` lies in ``r(alpha)`` exactly when ``alpha``
labels a path ending at ``v``.  Hence ``v ~_l w`` (equal incoming label words up
to length ``l``) iff ``v`` and ``w`` lie in the same sets ``r(alpha)`` with
``|alpha| <= l``.  The sets ``r(alpha)`` are precisely the states of the subset
automaton seeded with the whole vertex set, and the shortest such ``alpha`` is the
state's BFS depth.  Refining by the states of depth ``<= l`` gives ``Omega_l``;
refining by all of them gives the limit partition exactly, with no guessing of
a stabilization bound (a level where the partition does not change does not
certify that it never changes again).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator

from .automaton import DEFAULT_STATE_CAP, range_automaton
from .errors import ResourceError, UndefinedResultError
from .graph import LabelledGraph, in_label_words, iter_bits, popcount, range_of_word, require_valid

DEFAULT_FAMILY_CAP = 10_000


def _set_key(mask: int):
    return (popcount(mask), tuple(iter_bits(mask)))


@dataclass(frozen=True)
class ExplicitFamily:
    """A materialized family of vertex sets.  The empty set is an implicit member."""

    members: tuple[int, ...]

    kind = "explicit"

    def __contains__(self, mask: int) -> bool:
        return mask == 0 or mask in self._lookup

    @property
    def _lookup(self):
        cached = self.__dict__.get("_set")
        if cached is None:
            cached = frozenset(self.members)
            object.__setattr__(self, "_set", cached)
        return cached

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self):
        return len(self.members)


@dataclass(frozen=True)
class BlockFamily:
    """All finite unions of the given disjoint blocks (the empty union included)."""

    blocks: tuple[int, ...]

    kind = "blocks"

    def __contains__(self, mask: int) -> bool:
        return all((mask & b) in (0, b) for b in self.blocks) and mask & ~self.cover == 0

    @property
    def cover(self) -> int:
        out = 0
        for b in self.blocks:
            out |= b
        return out

    def atoms_of(self, mask: int) -> list[int]:
        return [b for b in self.blocks if b & mask]

    def materialize(self, limit: int = 12) -> ExplicitFamily:
        if len(self.blocks) > limit:
            raise ResourceError("materialized block family size", 2 ** limit, "--cap-family")
        members = []
        for pick in range(1, 1 << len(self.blocks)):
            m = 0
            for i in iter_bits(pick):
                m |= self.blocks[i]
            members.append(m)
        return ExplicitFamily(tuple(sorted(members, key=_set_key)))


@dataclass(frozen=True)
class Partition:
    level: int | None
    blocks: tuple[int, ...]

    def block_of(self, v: int) -> int:
        for b in self.blocks:
            if b >> v & 1:
                return b
        raise KeyError(v)

    def __len__(self):
        return len(self.blocks)

    def refines(self, coarser: "Partition") -> bool:
        return all(any(b & ~c == 0 for c in coarser.blocks) for b in self.blocks)


def _order_blocks(blocks) -> tuple[int, ...]:
    return tuple(sorted(blocks, key=lambda b: (b & -b).bit_length()))


def _refine(blocks: list[int], s: int) -> list[int]:
    out = []
    for b in blocks:
        inside, outside = b & s, b & ~s
        out.extend(x for x in (inside, outside) if x)
    return out


def smallest_accommodating(g: LabelledGraph, cap: int = DEFAULT_FAMILY_CAP,
                           state_cap: int = DEFAULT_STATE_CAP) -> ExplicitFamily:
    """Least family holding every ``r(alpha)`` and closed under ranges, meets and joins.

    Computed as a worklist fixpoint: each newly admitted set is met and joined
    with every earlier member and pushed through every single letter.
    """
    cached = g.cache.get("smallest_accommodating")
    if cached is not None:
        return cached
    require_valid(g)
    aut = range_automaton(g, state_cap)
    ranges = sorted({t for s in range(len(aut)) for _, t in aut.successors(s)})
    seen: set[int] = set()
    members: list[int] = []
    queue = deque(aut.states[t] for t in ranges)
    n_labels = len(g.labels)
    while queue:
        x = queue.popleft()
        if not x or x in seen:
            continue
        seen.add(x)
        members.append(x)
        if len(members) > cap:
            raise ResourceError("accommodating family size", cap, "--cap-family")
        for y in members:
            for z in (x & y, x | y):
                if z and z not in seen:
                    queue.append(z)
        for a in range(n_labels):
            z = g.image(x, a)
            if z and z not in seen:
                queue.append(z)
    family = ExplicitFamily(tuple(sorted(members, key=_set_key)))
    g.cache["smallest_accommodating"] = family
    return family


def _levels(g: LabelledGraph, state_cap: int):
    """Partitions ``Omega_1 .. Omega_D`` where ``D`` is the deepest range state."""
    cached = g.cache.get("omega_levels")
    if cached is not None:
        return cached
    require_valid(g)
    aut = range_automaton(g, state_cap)
    is_range = {t for s in range(len(aut)) for _, t in aut.successors(s)}
    by_depth: dict[int, list[int]] = {}
    for t in sorted(is_range):
        by_depth.setdefault(aut.depth[t] or 1, []).append(aut.states[t])
    deepest = max(by_depth, default=1)
    blocks = [g.full]
    levels = []
    for level in range(1, deepest + 1):
        for s in by_depth.get(level, ()):
            blocks = _refine(blocks, s)
        levels.append(_order_blocks(blocks))
    g.cache["omega_levels"] = levels
    return levels


def omega(g: LabelledGraph, level: int, state_cap: int = DEFAULT_STATE_CAP) -> Partition:
    """``Omega_l``: vertices grouped by their incoming label words of length ``<= l``."""
    if level < 1:
        raise ValueError("level must be >= 1")
    levels = _levels(g, state_cap)
    return Partition(level, levels[min(level, len(levels)) - 1])


def stable_partition(g: LabelledGraph, state_cap: int = DEFAULT_STATE_CAP) -> tuple[Partition, int]:
    """The limit partition and the least level ``l*`` at which it is reached."""
    levels = _levels(g, state_cap)
    final = levels[-1]
    lstar = next(i + 1 for i, blocks in enumerate(levels) if len(blocks) == len(final))
    return Partition(None, final), lstar


def generalized_vertex(g: LabelledGraph, v, level: int) -> int:
    """``[v]_l`` as a bitmask."""
    vi = g.index(v) if isinstance(v, str) else v
    return omega(g, level).block_of(vi)


def xl_yl(g: LabelledGraph, v, level: int) -> tuple[int, frozenset]:
    """``(X_l(v), Y_l(v))`` where ``X`` meets the ranges of ``v``'s incoming words
    and ``Y`` collects the incoming words of ``X``'s members that ``v`` lacks.

    Then ``[v]_l = X \\ r(Y)`` with ``r(Y)`` the union of the ranges of ``Y``.
    """
    vi = g.index(v) if isinstance(v, str) else v
    words = in_label_words(g, vi, level)
    if not words:
        raise UndefinedResultError(
            f"vertex {g.vertices[vi]} receives no path of length <= {level}; "
            "the meet over an empty word set is undefined, use generalized_vertex directly")
    x = g.full
    for w in words:
        x &= range_of_word(g, w)
    y = set()
    for u in iter_bits(x):
        y.update(in_label_words(g, u, level) - words)
    return x, frozenset(y)


def range_of_words(g: LabelledGraph, words) -> int:
    out = 0
    for w in words:
        out |= range_of_word(g, w)
    return out


def bar_e(g: LabelledGraph, state_cap: int = DEFAULT_STATE_CAP) -> BlockFamily:
    """All finite unions of generalized vertices, stored as the limit-partition blocks.

    Every ``[v]_l`` is a union of limit blocks (partitions only refine as ``l``
    grows) and every limit block is some ``[v]_l``, so unions of limit blocks are
    exactly the finite unions of generalized vertices.
    """
    part, _ = stable_partition(g, state_cap)
    return BlockFamily(part.blocks)


def singleton_condition(g: LabelledGraph, state_cap: int = DEFAULT_STATE_CAP) -> bool:
    part, _ = stable_partition(g, state_cap)
    return all(popcount(b) == 1 for b in part.blocks)


def join_irreducibles(family: ExplicitFamily | BlockFamily) -> tuple[int, ...]:
    """Members that are not the union of the members strictly below them."""
    if isinstance(family, BlockFamily):
        return family.blocks
    out = []
    for j in family.members:
        below = 0
        for k in family.members:
            if k != j and k & ~j == 0:
                below |= k
        if below != j:
            out.append(j)
    return tuple(out)


def is_closed(g: LabelledGraph, family: ExplicitFamily) -> bool:
    members = set(family.members)
    for x in family.members:
        for a in range(len(g.labels)):
            z = g.image(x, a)
            if z and z not in members:
                return False
        for y in family.members:
            for z in (x & y, x | y):
                if z and z not in members:
                    return False
    return True

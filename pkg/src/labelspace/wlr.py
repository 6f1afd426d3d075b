"""Weak left-resolving checks: ``r(A, w) & r(B, w) == r(A & B, w)`` for all members and words.

Explicit families are checked pair by pair over the triple product
``(r(A, w), r(B, w), r(A & B, w))``.  Nested pairs are skipped because the
identity is automatic when ``A`` contains ``B`` or vice versa.

Block families (all unions of disjoint blocks) reduce to distinct block pairs:
with ``A`` and ``B`` unions of blocks, ``r(A, w) & r(B, w)`` is the union of
``r(Bi, w) & r(Bj, w)`` over blocks ``Bi`` of ``A`` and ``Bj`` of ``B``, while
``r(A & B, w)`` is the union of ``r(Bi, w)`` over the shared blocks.  The two
agree for every pair and word iff ranges of distinct blocks never meet, and a
violating block pair is itself a counterexample (its meet is empty).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .accommodating import BlockFamily, ExplicitFamily
from .errors import ResourceError
from .graph import LabelledGraph, relative_range, require_valid

DEFAULT_PAIR_CAP = 2_000_000


@dataclass(frozen=True)
class WlrCounterexample:
    A: int
    B: int
    word: tuple[str, ...]

    def holds_on(self, g: LabelledGraph) -> bool:
        """True when the triple really violates the identity in ``g``."""
        left = relative_range(g, self.A, self.word) & relative_range(g, self.B, self.word)
        return left != relative_range(g, self.A & self.B, self.word)

    def as_dict(self, g: LabelledGraph) -> dict:
        return {"A": g.ids(self.A), "B": g.ids(self.B), "word": ".".join(self.word)}


@dataclass(frozen=True)
class WlrVerdict:
    holds: bool
    counterexample: WlrCounterexample | None = None
    family_kind: str = "explicit"
    pairs_checked: int = 0
    all_counterexamples: tuple[WlrCounterexample, ...] = field(default=())


def _first_violation(g: LabelledGraph, start: tuple[int, ...], violated, limit: int | None):
    """Shortest, then lexicographically least, word reaching a violated product state."""
    n_labels = len(g.labels)
    parent = {start: None}
    queue = deque([(start, 0)])
    while queue:
        node, depth = queue.popleft()
        if limit is not None and depth >= limit:
            break
        for a in range(n_labels):
            nxt = tuple(g.image(m, a) for m in node)
            if not nxt[0] or not nxt[1]:
                continue
            if violated(nxt):
                word = [a]
                x = node
                while parent[x] is not None:
                    x, b = parent[x]
                    word.append(b)
                return tuple(reversed(word))
            if nxt not in parent:
                parent[nxt] = (node, a)
                queue.append((nxt, depth + 1))
    return None


def _explicit_pairs(members):
    for i, a in enumerate(members):
        for b in members[i + 1:]:
            inter = a & b
            if inter == a or inter == b:
                continue
            yield a, b


def _block_pairs(blocks):
    for i, a in enumerate(blocks):
        for b in blocks[i + 1:]:
            yield a, b


def check_wlr(g: LabelledGraph, family, exhaustive: bool = False,
              pair_cap: int = DEFAULT_PAIR_CAP) -> WlrVerdict:
    """Decide weak left-resolving for ``family``.

    The reported counterexample is least by (word length, pair order, word).
    With ``exhaustive`` every failing pair contributes its own least word to
    ``all_counterexamples``.
    """
    require_valid(g)
    if isinstance(family, BlockFamily):
        kind = "blocks"
        pairs = list(_block_pairs(family.blocks))

        def make(a, b):
            return (a, b), lambda s: s[0] & s[1] != 0
    else:
        if not isinstance(family, ExplicitFamily):
            family = ExplicitFamily(tuple(family))
        kind = "explicit"
        pairs = list(_explicit_pairs(list(family.members)))

        def make(a, b):
            return (a, b, a & b), lambda s: s[0] & s[1] != s[2]
    if len(pairs) > pair_cap:
        raise ResourceError("WLR pair count", pair_cap, "--cap-pairs")

    best = None
    found = []
    for order, (a, b) in enumerate(pairs):
        start, violated = make(a, b)
        limit = None if exhaustive or best is None else best[0]
        word = _first_violation(g, start, violated, limit)
        if word is None:
            continue
        cex = WlrCounterexample(a, b, g.spell(word))
        found.append(cex)
        key = (len(word), order, word)
        if best is None or key < best[:3]:
            best = (len(word), order, word, cex)
    if best is None:
        return WlrVerdict(True, None, kind, len(pairs))
    return WlrVerdict(False, best[3], kind, len(pairs), tuple(found) if exhaustive else (best[3],))

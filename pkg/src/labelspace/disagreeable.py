"""Exact disagreeability of generalized vertices and of the whole space.

A word is disagreeable at level ``l`` when it has no period ``p <= l``.  A set
``S`` is disagreeable at level ``l`` when words sourced in ``S`` without such a
period exist at unbounded lengths.  Every long word from ``S`` extends to an
infinite realizable sequence (no sinks), so the question reduces to the set
``X_S`` of infinite label sequences from ``S``:

* ``X_S`` infinite: two sequences sharing a prefix of length ``>= 2l`` that
  then split cannot both be purely periodic with periods ``<= l`` (by Fine and
  Wilf both would be periodic with the gcd period and hence equal), so a
  non-periodic sequence exists and its long prefixes are disagreeable.
* ``X_S`` finite: ``S`` is disagreeable iff some listed lasso is not purely
  periodic with a period ``<= l``.  If all long prefixes of ``x`` carry some
  period ``<= l``, one period repeats for infinitely many prefixes and then
  holds on all of ``x``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .accommodating import generalized_vertex, omega, stable_partition
from .automaton import (DEFAULT_STATE_CAP, SubsetAutomaton, build, cyclic_states,
                        infinite_label_classification, reachable)
from .graph import LabelledGraph, relative_range, require_valid
from .words import Lasso, is_agreeable, lasso_least_pure_period

SEARCH_BUDGET = 20_000


@dataclass(frozen=True)
class BlockEvidence:
    """``infinite`` or the complete lasso list with unbounded least pure periods."""

    block: int
    infinite: bool
    lassos: tuple[Lasso, ...] = ()

    def periods(self) -> list[int | None]:
        return [len(x.cycle) if not x.prefix else None for x in self.lassos]

    def as_dict(self, g: LabelledGraph) -> dict:
        if self.infinite:
            return {"block": g.ids(self.block), "sequences": "infinite"}
        return {"block": g.ids(self.block), "sequences": "finite",
                "lassos": [{"prefix": ".".join(x.prefix), "cycle": ".".join(x.cycle),
                            "least_pure_period": p}
                           for x, p in zip(self.lassos, self.periods())]}


@dataclass(frozen=True)
class BlockResult:
    block: int
    level: int
    disagreeable: bool
    evidence: BlockEvidence
    witness: Lasso | None = None
    threshold: int | None = None

    def witness_word(self) -> tuple | None:
        """A disagreeable word from the block; every longer prefix of the witness is one too."""
        if self.witness is None:
            return None
        return self.witness.take(max(self.threshold, self.level + 1))


@dataclass(frozen=True)
class DisagreeableVerdict:
    space_disagreeable: bool
    failure: tuple[str, int] | None = None
    failure_block: int | None = None
    evidence: tuple[BlockEvidence, ...] = field(default=())


def _threshold(x: Lasso, level: int) -> int:
    """Least ``N`` such that every prefix of ``x`` of length ``>= N`` is disagreeable."""
    horizon = len(x.prefix) + len(x.cycle) + 2 * level + 1
    last = 0
    for n in range(1, horizon + 1):
        if n >= 2 and is_agreeable(x.take(n), level):
            last = n
    return last + 1


def _search_lasso(aut: SubsetAutomaton, s: int, level: int, budget: int) -> Lasso | None:
    """Shortest-first search for a lasso from ``s`` with no pure period ``<= level``."""
    spell = aut.graph.spell
    layer = [((), (s,))]
    spent = 0
    while layer:
        for word, states in layer:
            last = states[-1]
            for i in range(len(states) - 1):
                if states[i] == last:
                    x = Lasso(spell(word[:i]), spell(word[i:]))
                    if lasso_least_pure_period(x, level) is None:
                        return x.canonical()
        nxt = []
        for word, states in layer:
            for a, t in aut.successors(states[-1]):
                nxt.append((word + (a,), states + (t,)))
                spent += 1
                if spent > budget:
                    return None
        layer = nxt
    return None


def _bfs_path(aut: SubsetAutomaton, src: int, goal) -> tuple[list[int], int]:
    parent = {src: None}
    order = [src]
    for q in order:
        if goal(q):
            path = []
            x = q
            while parent[x] is not None:
                x, a = parent[x]
                path.append(a)
            return path[::-1], q
        for a, t in aut.successors(q):
            if t not in parent:
                parent[t] = (q, a)
                order.append(t)
    raise AssertionError("goal state unreachable")


def _cycle_at(aut: SubsetAutomaton, q: int) -> list[int]:
    """Shortest nonempty word leading from ``q`` back to ``q``."""
    parent = {}
    order = []
    for a, t in aut.successors(q):
        if t not in parent:
            parent[t] = (None, a)
            order.append(t)
    for x in order:
        if x == q:
            path = []
            while True:
                prev, a = parent[x]
                path.append(a)
                if prev is None:
                    break
                x = prev
            return path[::-1]
        for a, t in aut.successors(x):
            if t not in parent:
                parent[t] = (x, a)
                order.append(t)
    raise AssertionError("state is not on a cycle")


def _constructive_lasso(aut: SubsetAutomaton, s: int, level: int) -> Lasso:
    """Pump a cycle feeding a branch point and try both continuations."""
    nodes = reachable(aut, s)

    def succ(q):
        return [t for _, t in aut.successors(q)]

    cyclic = cyclic_states(nodes, succ)
    c = next(q for q in nodes if q in cyclic
             and any(len(aut.successors(t)) >= 2 for t in reachable(aut, q)))
    u, _ = _bfs_path(aut, s, lambda q: q == c)
    z = _cycle_at(aut, c)
    k = -(-2 * level // len(z)) or 1
    p, b = _bfs_path(aut, c, lambda q: len(aut.successors(q)) >= 2)
    base = u + z * k + p
    spell = aut.graph.spell
    for a, t in aut.successors(b)[:2]:
        q_path, ct = _bfs_path(aut, t, lambda q: q in cyclic)
        x = Lasso(spell(base + [a] + q_path), spell(_cycle_at(aut, ct)))
        if lasso_least_pure_period(x, level) is None:
            return x.canonical()
    raise AssertionError("two diverging continuations cannot both be periodic")


def _evidence(aut: SubsetAutomaton, block: int) -> BlockEvidence:
    cls = infinite_label_classification(aut, aut.state(block))
    if cls.infinite:
        return BlockEvidence(block, True)
    return BlockEvidence(block, False, cls.lassos)


def _decide(aut: SubsetAutomaton, block: int, level: int, evidence: BlockEvidence,
            budget: int = SEARCH_BUDGET) -> BlockResult:
    if evidence.infinite:
        s = aut.state(block)
        x = _search_lasso(aut, s, level, budget) or _constructive_lasso(aut, s, level)
        return BlockResult(block, level, True, evidence, x, _threshold(x, level))
    for x in evidence.lassos:
        if lasso_least_pure_period(x, level) is None:
            return BlockResult(block, level, True, evidence, x, _threshold(x, level))
    return BlockResult(block, level, False, evidence)


def disagreeable_block(g: LabelledGraph, S: int, level: int,
                       state_cap: int = DEFAULT_STATE_CAP) -> BlockResult:
    """Decide whether ``S`` is disagreeable at ``level``, with a witness lasso or a period certificate."""
    require_valid(g)
    if level < 1:
        raise ValueError("level must be >= 1")
    aut = build(g, [S], cap=state_cap)
    return _decide(aut, S, level, _evidence(aut, S))


def disagreeable_space(g: LabelledGraph, state_cap: int = DEFAULT_STATE_CAP) -> DisagreeableVerdict:
    """Check ``[v]_l`` for every vertex and every level.

    Levels ``1 .. l*`` are checked directly.  Beyond ``l*`` the class is fixed
    and only the period bound grows, so failure there happens exactly when the
    class has finitely many sequences, all purely periodic; the least failing
    level is then the largest least period, but at least ``l* + 1``.
    """
    require_valid(g)
    part, lstar = stable_partition(g, state_cap)
    blocks = sorted({b for l in range(1, lstar + 1) for b in omega(g, l).blocks},
                    key=lambda b: (b & -b).bit_length())
    aut = build(g, blocks, cap=state_cap)
    evidence = {b: _evidence(aut, b) for b in blocks}
    ordered = tuple(evidence[b] for b in blocks)
    for level in range(1, lstar + 1):
        for v in range(g.n):
            block = generalized_vertex(g, v, level)
            if not _decide(aut, block, level, evidence[block]).disagreeable:
                return DisagreeableVerdict(False, (g.vertices[v], level), block, ordered)
    tail = None
    for v in range(g.n):
        ev = evidence[part.block_of(v)]
        if ev.infinite:
            continue
        periods = ev.periods()
        if all(p is not None for p in periods):
            at = max(lstar + 1, max(periods))
            if tail is None or at < tail[0]:
                tail = (at, v)
    if tail is not None:
        at, v = tail
        return DisagreeableVerdict(False, (g.vertices[v], at), part.block_of(v), ordered)
    return DisagreeableVerdict(True, None, None, ordered)


def is_disagreeable_word_from(g: LabelledGraph, S: int, word, level: int) -> bool:
    """Replay helper: ``word`` is realizable from ``S`` and has no period ``<= level``."""
    return bool(relative_range(g, S, word)) and not is_agreeable(tuple(word), level)

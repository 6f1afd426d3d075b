"""Exact strong cofinality and cofinality deciders.

For a source vertex ``w``, a source class ``C`` containing ``w`` and a target
block ``V`` of the limit partition, the condition fails exactly when some
infinite label sequence ``x`` realizable from ``w`` keeps ``r(C, x[:N])``
outside ``U(V)`` for every ``N >= 1``.  Here ``U(V)`` is the union of all
relative ranges of ``V``, i.e. every vertex reachable from ``V`` in one or more
steps; any finite union of relative ranges of ``V`` lies inside it and ``U(V)``
itself is such a finite union, since ``V`` has only finitely many distinct
relative ranges.

The search runs over pairs ``(r({w}, prefix), r(C, prefix))`` and looks for a
lasso whose nodes from step one on are all bad.  Target classes ``[v]_l`` at
finite levels contain a limit block, and a smaller target only makes
containment harder, so limit blocks are the binding case.

Strong cofinality uses ``C = [w]_1``.  Plain cofinality may pick any level
``d >= l`` for the source, and ``[w]_d`` only shrinks, so the stable class
``[w]_{l*}`` is the optimal choice.  If ``C`` already lies inside ``U(V)`` then
every ``r(C, prefix)`` does too and the pair is skipped.
"""

from __future__ import annotations

from dataclasses import dataclass

from .accommodating import generalized_vertex, stable_partition
from .automaton import DEFAULT_STATE_CAP, LassoWitness, bad_lasso_search, build, reach_union
from .graph import LabelledGraph, relative_range, require_valid


@dataclass(frozen=True)
class CofinalityWitness:
    w: str
    block: int
    lasso: LassoWitness

    def as_dict(self, g: LabelledGraph) -> dict:
        return {"w": self.w, "block": g.ids(self.block), **self.lasso.as_dict()}


@dataclass(frozen=True)
class CofinalityVerdict:
    holds: bool
    kind: str
    source_level: int
    witness: CofinalityWitness | None = None


def forward_reach(g: LabelledGraph, mask: int) -> int:
    """Vertices reachable from ``mask`` by paths of length at least one."""
    out = 0
    frontier = mask
    while frontier:
        step = 0
        for a in range(len(g.labels)):
            step |= g.image(frontier, a)
        frontier = step & ~out
        out |= step
    return out


def _check(g: LabelledGraph, kind: str, state_cap: int) -> CofinalityVerdict:
    require_valid(g)
    part, lstar = stable_partition(g, state_cap)
    level = 1 if kind == "strong" else lstar
    sources = [generalized_vertex(g, w, level) for w in range(g.n)]
    seeds = [1 << w for w in range(g.n)] + sources + list(part.blocks)
    aut = build(g, seeds, cap=state_cap)
    for w in range(g.n):
        src = sources[w]
        for block in part.blocks:
            target = reach_union(aut, aut.state(block))
            if src & ~target == 0:
                continue

            def bad(node, target=target):
                return aut.states[node[1]] & ~target != 0

            found = bad_lasso_search(aut, aut.state(1 << w), bad, pairing=aut.state(src),
                                     annotation=f"source class {g.fmt(src)} never enters U({g.fmt(block)})")
            if found is not None:
                return CofinalityVerdict(False, kind, level, CofinalityWitness(g.vertices[w], block, found))
    return CofinalityVerdict(True, kind, level)


def check_strong_cofinality(g: LabelledGraph, state_cap: int = DEFAULT_STATE_CAP) -> CofinalityVerdict:
    return _check(g, "strong", state_cap)


def check_cofinality(g: LabelledGraph, state_cap: int = DEFAULT_STATE_CAP) -> CofinalityVerdict:
    return _check(g, "plain", state_cap)


def replay_cofinality_witness(g: LabelledGraph, witness: CofinalityWitness, source_level: int,
                              extra_cycles: int = 3) -> bool:
    """Re-verify a witness by direct range computation along its lasso."""
    x = witness.lasso.lasso()
    wi = g.index(witness.w)
    src = generalized_vertex(g, wi, source_level)
    target = forward_reach(g, witness.block)
    horizon = len(x.prefix) + extra_cycles * len(x.cycle)
    for n in range(1, horizon + 1):
        word = x.take(n)
        if not relative_range(g, 1 << wi, word):
            return False
        if relative_range(g, src, word) & ~target == 0:
            return False
    return True

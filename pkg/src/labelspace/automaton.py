"""Determinized label-transition systems over nonempty vertex sets.

``build(g, seeds)`` closes the seed sets under single-letter relative ranges,
pruning the empty set.  Because every graph reaching this module has no sinks,
every state has at least one outgoing transition, and an infinite label
sequence ``x`` is realizable from a set ``S`` exactly when every prefix of
``x`` keeps ``r(S, prefix)`` nonempty (the path tree is finitely branching
with nonempty levels, so it carries an infinite branch).  Infinite label
sequences from ``S`` are therefore exactly the infinite walks of the automaton
from the state ``S``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import ResourceError
from .graph import LabelledGraph, require_valid
from .words import Lasso

DEFAULT_STATE_CAP = 2 ** 20


@dataclass(frozen=True)
class LassoWitness:
    """A finite presentation ``prefix . cycle^inf`` of an infinite label sequence."""

    prefix: tuple[str, ...]
    cycle: tuple[str, ...]
    annotation: str = ""

    def lasso(self) -> Lasso:
        return Lasso(self.prefix, self.cycle)

    def as_dict(self) -> dict:
        return {"prefix": ".".join(self.prefix), "cycle": ".".join(self.cycle)}


@dataclass(frozen=True)
class InfiniteLabels:
    """Infinitely many infinite label sequences are realizable."""

    infinite = True


@dataclass(frozen=True)
class FiniteLabels:
    lassos: tuple[Lasso, ...]

    infinite = False


class SubsetAutomaton:
    def __init__(self, graph: LabelledGraph, states: list[int], delta: np.ndarray,
                 seeds: Sequence[int], depth: list[int]):
        self.graph = graph
        self.states = states
        self.index = {m: i for i, m in enumerate(states)}
        self.delta = delta
        self.seeds = tuple(seeds)
        self.depth = depth
        self._reach_union: dict[int, int] = {}
        self._succ = [[(a, int(t)) for a, t in enumerate(row) if t >= 0] for row in delta.tolist()]

    def __len__(self):
        return len(self.states)

    def state(self, mask: int) -> int:
        return self.index[mask]

    def step(self, s: int, a: int) -> int:
        return int(self.delta[s, a]) if s >= 0 else -1

    def run(self, s: int, codes: Iterable[int]) -> int:
        for a in codes:
            if s < 0:
                return -1
            s = int(self.delta[s, a])
        return s

    def successors(self, s: int) -> list[tuple[int, int]]:
        return self._succ[s]


def build(g: LabelledGraph, seeds: Iterable[int], cap: int = DEFAULT_STATE_CAP,
          backend: str | None = None) -> SubsetAutomaton:
    """Breadth-first closure of ``seeds`` under all single-letter relative ranges."""
    require_valid(g)
    seeds = list(seeds)
    if not seeds:
        raise ValueError("at least one seed set is required")
    if any(m <= 0 or m > g.full for m in seeds):
        raise ValueError("seed sets must be nonempty subsets of the vertex set")
    n_labels = len(g.labels)
    nw = _kernels.n_words(g.n)
    table = g.succ_table()

    states: list[int] = []
    index: dict[int, int] = {}
    depth: list[int] = []
    rows: list[list[int]] = []
    seed_ids = []

    def add(mask, d):
        if len(states) >= cap:
            raise ResourceError("subset automaton state count", cap, "--cap-states")
        index[mask] = len(states)
        states.append(mask)
        depth.append(d)
        rows.append([-1] * n_labels)
        return index[mask]

    frontier = []
    for m in seeds:
        if m not in index:
            frontier.append(add(m, 0))
        seed_ids.append(index[m])

    level = 0
    while frontier:
        level += 1
        packed = _kernels.pack((states[s] for s in frontier), nw)
        flat = _kernels.unpack(_kernels.images(table, packed, backend).reshape(-1, nw))
        nxt = []
        for i, s in enumerate(frontier):
            row = rows[s]
            for a in range(n_labels):
                m = flat[i * n_labels + a]
                if not m:
                    continue
                t = index.get(m)
                if t is None:
                    t = add(m, level)
                    nxt.append(t)
                row[a] = t
        frontier = nxt
    delta = np.array(rows, dtype=np.int64).reshape(len(states), n_labels)
    return SubsetAutomaton(g, states, delta, seed_ids, depth)


def range_automaton(g: LabelledGraph, cap: int = DEFAULT_STATE_CAP) -> SubsetAutomaton:
    """The automaton seeded with the whole vertex set; its non-seed states are all ``r(alpha)``."""
    aut = g.cache.get("range_automaton")
    if aut is None:
        aut = build(g, [g.full], cap=cap)
        g.cache["range_automaton"] = aut
    return aut


def reachable(aut: SubsetAutomaton, s: int) -> list[int]:
    """States reachable from ``s`` in zero or more steps, in BFS order."""
    seen = {s}
    order = [s]
    queue = deque([s])
    while queue:
        q = queue.popleft()
        for _, t in aut.successors(q):
            if t not in seen:
                seen.add(t)
                order.append(t)
                queue.append(t)
    return order


def reach_union(aut: SubsetAutomaton, s: int) -> int:
    """``U(S)``: union of every state reachable from ``s`` in at least one step."""
    hit = aut._reach_union.get(s)
    if hit is not None:
        return hit
    seen = set()
    queue = deque(t for _, t in aut.successors(s))
    union = 0
    while queue:
        q = queue.popleft()
        if q in seen:
            continue
        seen.add(q)
        union |= aut.states[q]
        queue.extend(t for _, t in aut.successors(q) if t not in seen)
    aut._reach_union[s] = union
    return union


def strongly_connected(nodes: Sequence, succ: Callable) -> list[list]:
    """Tarjan's algorithm, iterative; ``succ(node)`` yields neighbour nodes."""
    index: dict = {}
    low: dict = {}
    on_stack = set()
    stack = []
    comps = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(succ(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ(w))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
    return comps


def cyclic_states(nodes: Sequence, succ: Callable) -> set:
    """Nodes lying on some directed cycle."""
    out = set()
    for comp in strongly_connected(nodes, succ):
        if len(comp) > 1 or comp[0] in set(succ(comp[0])):
            out.update(comp)
    return out


def infinite_label_classification(aut: SubsetAutomaton, s: int) -> InfiniteLabels | FiniteLabels:
    """Classify the infinite label sequences realizable from state ``s``.

    Infinitely many exist iff some branching state (two or more letters) is
    reachable from a state on a cycle.  Otherwise every walk becomes
    deterministic once it touches a cycle, and the full finite list of
    eventually periodic words is returned in canonical form.
    """
    nodes = reachable(aut, s)

    def succ(q):
        return [t for _, t in aut.successors(q)]

    cyclic = cyclic_states(nodes, succ)
    downstream = set()
    queue = deque(cyclic)
    while queue:
        q = queue.popleft()
        if q in downstream:
            continue
        downstream.add(q)
        queue.extend(succ(q))
    if any(len(aut.successors(q)) >= 2 for q in downstream):
        return InfiniteLabels()

    found = set()
    # non-cyclic states form a DAG, so this DFS terminates
    stack = [(s, ())]
    while stack:
        q, path = stack.pop()
        if q in cyclic:
            cycle = []
            t = q
            while True:
                ((a, t),) = aut.successors(t)
                cycle.append(a)
                if t == q:
                    break
            found.add(Lasso(path, tuple(cycle)).canonical())
            continue
        for a, t in reversed(aut.successors(q)):
            stack.append((t, path + (a,)))
    spell = aut.graph.spell
    ordered = sorted(found, key=lambda x: (len(x), x.prefix, x.cycle))
    return FiniteLabels(tuple(Lasso(spell(x.prefix), spell(x.cycle)) for x in ordered))


def _product_successors(aut: SubsetAutomaton, node: tuple[int, ...]):
    """Letters on which the first component is defined; other components may die (-1)."""
    out = []
    first = node[0]
    for a, t in aut.successors(first):
        rest = tuple(int(aut.delta[c, a]) if c >= 0 else -1 for c in node[1:])
        out.append((a, (t,) + rest))
    return out


def _bfs_words(start, succ, allowed, target=None):
    """Lex-least shortest words; with ``target`` stop at the first edge into it."""
    parent = {start: None}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for a, y in succ(x):
            if target is not None and y == target:
                parent_chain = [a]
                while parent[x] is not None:
                    x, b = parent[x]
                    parent_chain.append(b)
                return tuple(reversed(parent_chain))
            if y not in parent and allowed(y):
                parent[y] = (x, a)
                queue.append(y)
    if target is not None:
        return None
    words = {}
    for node in parent:
        w = []
        x = node
        while parent[x] is not None:
            x, a = parent[x]
            w.append(a)
        words[node] = tuple(reversed(w))
    return words


def bad_lasso_search(aut: SubsetAutomaton, start, bad: Callable, pairing=None,
                     annotation: str = "") -> LassoWitness | None:
    """Find an infinite walk whose every node from step 1 on satisfies ``bad``.

    Nodes are tuples of automaton states: ``start`` alone, or ``(start, pairing)``
    when a secondary component is tracked alongside (``pairing`` may itself be a
    tuple).  The walk must keep the first component alive; secondary components
    are carried along and may become empty (``-1``).  The returned lasso is the
    least by total length, then by label order of ``prefix . cycle``.
    """
    if pairing is None:
        root = (start,) if isinstance(start, int) else tuple(start)
    else:
        extra = (pairing,) if isinstance(pairing, int) else tuple(pairing)
        root = (start,) + extra

    def succ(node):
        return _product_successors(aut, node)

    bad_cache = {}

    def is_bad(node):
        hit = bad_cache.get(node)
        if hit is None:
            hit = bad_cache[node] = bool(bad(node))
        return hit

    prefixes = _bfs_words(root, succ, is_bad)
    region = [x for x in prefixes if x != root or is_bad(root)]
    cyclic = cyclic_states(region, lambda x: [y for _, y in succ(x) if is_bad(y)])
    best = None
    for q in region:
        if q not in cyclic:
            continue
        cycle = _bfs_words(q, succ, is_bad, target=q)
        if cycle is None:
            continue
        key = (len(prefixes[q]) + len(cycle), prefixes[q] + cycle)
        if best is None or key < best[0]:
            best = (key, prefixes[q], cycle)
    if best is None:
        return None
    spell = aut.graph.spell
    return LassoWitness(spell(best[1]), spell(best[2]), annotation)


def to_dot(aut: SubsetAutomaton) -> str:
    g = aut.graph
    lines = ["digraph subset_automaton {", "  rankdir=LR;"]
    for i, m in enumerate(aut.states):
        shape = "doublecircle" if i in aut.seeds else "circle"
        lines.append(f'  s{i} [label="{g.fmt(m)}", shape={shape}];')
    for i in range(len(aut)):
        for a, t in aut.successors(i):
            lines.append(f'  s{i} -> s{t} [label="{g.labels[a]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"

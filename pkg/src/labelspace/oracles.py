"""Bounded brute-force mirrors of every decider, and a randomized comparison suite.

The oracles share nothing with the deciders beyond the parsed edge list: ranges
are recomputed edge by edge over Python sets, partitions come from backward
pair exploration, and infinite behaviour is probed by explicit lasso or window
enumeration.  Each comparison answers ``match``, ``mismatch`` or
``inconclusive`` (a budget ran out); inconclusive results never count as
failures.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .graph import LabelledGraph, parse_graph, serialize

MATCH, MISMATCH, INCONCLUSIVE = "match", "mismatch", "inconclusive"
DEFAULT_BUDGET = 20_000


class Inconclusive(Exception):
    pass


# naive ranges -------------------------------------------------------------


class Naive:
    """Edge-list view of a graph over frozensets of vertex indices."""

    def __init__(self, g: LabelledGraph):
        self.g = g
        self.n = g.n
        self.letters = list(g.labels)
        self.out = {}
        self.inn = {}
        for s, d, a in g.edges:
            lab = g.labels[a]
            self.out.setdefault((s, lab), set()).add(d)
            self.inn.setdefault((d, lab), set()).add(s)
        self.V = frozenset(range(g.n))

    def step(self, A, a) -> frozenset:
        out = set()
        for v in A:
            out |= self.out.get((v, a), set())
        return frozenset(out)

    def range(self, A, word) -> frozenset:
        A = frozenset(A)
        for a in word:
            A = self.step(A, a)
        return A

    def back(self, B, a) -> frozenset:
        out = set()
        for v in B:
            out |= self.inn.get((v, a), set())
        return frozenset(out)

    def reach(self, A) -> frozenset:
        """Vertices at the end of paths of length >= 1 starting in ``A``."""
        seen = set()
        frontier = set(A)
        while frontier:
            nxt = set()
            for v in frontier:
                for a in self.letters:
                    nxt |= self.out.get((v, a), set())
            frontier = nxt - seen
            seen |= nxt
        return frozenset(seen)

    def in_words(self, v, level) -> set:
        out = set()
        layer = {(): frozenset([v])}
        for _ in range(level):
            nxt = {}
            for w, heads in layer.items():
                for a in self.letters:
                    src = self.back(heads, a)
                    if src:
                        nxt[(a,) + w] = src
            out.update(nxt)
            layer = nxt
        return out


def to_mask(S) -> int:
    m = 0
    for v in S:
        m |= 1 << v
    return m


def to_set(mask: int) -> frozenset:
    return frozenset(i for i in range(mask.bit_length()) if mask >> i & 1)


# partitions -----------------------------------------------------------------


def separation_lengths(nv: Naive) -> dict:
    """Length of the shortest word in exactly one of the in-languages of ``v`` and ``w``.

    Explores pairs of backward source sets; ``None`` means never separated.
    """
    out = {}
    for v in range(nv.n):
        for w in range(v + 1, nv.n):
            start = (frozenset([v]), frozenset([w]))
            seen = {start}
            layer = [start]
            depth = 0
            found = None
            while layer and found is None:
                depth += 1
                nxt = []
                for x, y in layer:
                    for a in nv.letters:
                        bx, by = nv.back(x, a), nv.back(y, a)
                        if bool(bx) != bool(by):
                            found = depth
                            break
                        node = (bx, by)
                        if bx and node not in seen:
                            seen.add(node)
                            nxt.append(node)
                    if found is not None:
                        break
                layer = nxt
            out[v, w] = out[w, v] = found
    return out


def naive_partition(nv: Naive, level: int | None, sep: dict) -> list[frozenset]:
    blocks = []
    for v in range(nv.n):
        for b in blocks:
            w = min(b)
            d = sep[v, w]
            if d is None or (level is not None and d > level):
                b.add(v)
                break
        else:
            blocks.append({v})
    return sorted((frozenset(b) for b in blocks), key=min)


# families -----------------------------------------------------------------


def naive_smallest_family(nv: Naive, cap: int = 5000) -> set:
    family = {nv.step(nv.V, a) for a in nv.letters} - {frozenset()}
    while True:
        grown = set(family)
        for x in family:
            for a in nv.letters:
                grown.add(nv.step(x, a))
            for y in family:
                grown.add(x & y)
                grown.add(x | y)
        grown.discard(frozenset())
        if len(grown) > cap:
            raise Inconclusive("family cap")
        if grown == family:
            return family
        family = grown


def naive_wlr(nv: Naive, members, budget: int = 200_000):
    """Shortest violated word length, ``None`` if the identity always holds."""
    members = list(members)
    pairs = [(A, B) for A in members for B in members]
    start = tuple(frozenset([v]) for v in range(nv.n))
    seen = {start}
    layer = [start]
    depth = 0
    spent = 0
    while layer:
        depth += 1
        nxt = []
        for vec in layer:
            for a in nv.letters:
                new = tuple(nv.step(s, a) for s in vec)
                spent += 1
                if spent > budget:
                    raise Inconclusive("wlr budget")
                if new not in seen:
                    seen.add(new)
                    nxt.append(new)
                for A, B in pairs:
                    ra = frozenset().union(*(new[v] for v in A))
                    rb = frozenset().union(*(new[v] for v in B))
                    rab = frozenset().union(*(new[v] for v in A & B))
                    if ra & rb != rab:
                        return depth
        layer = nxt
    return None


# cofinality -----------------------------------------------------------------


def _pair_graph(nv: Naive, w: int, C: frozenset):
    """Pairs ``(r({w}, prefix), r(C, prefix))`` reachable while the first stays nonempty."""
    start = (frozenset([w]), C)
    succ = {}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        if node in succ:
            continue
        x, y = node
        out = []
        for a in nv.letters:
            nx = nv.step(x, a)
            if nx:
                out.append((nx, nv.step(y, a)))
        succ[node] = out
        queue.extend(t for t in out if t not in succ)
    return start, succ


def _bad_lasso_by_enumeration(start, succ, bad, budget: int) -> bool:
    """Enumerate runs of length ``<= len(succ)`` whose nodes from step one on are bad.

    A run closing a loop is a lasso; every bad lasso has a representative of
    total length at most the node count (simple path plus simple cycle).
    """
    bound = len(succ)
    stack = [[start]]
    spent = 0
    while stack:
        path = stack.pop()
        last = path[-1]
        if len(path) > 1 and last in path[:-1]:
            return True
        if len(path) > bound:
            continue
        for t in succ[last]:
            spent += 1
            if spent > budget:
                raise Inconclusive("lasso budget")
            if bad(t):
                stack.append(path + [t])
    return False


def _bad_lasso_by_fixpoint(start, succ, bad) -> bool:
    """Greatest fixpoint: nodes that are bad and have a successor in the set."""
    alive = {x for x in succ if bad(x)}
    changed = True
    while changed:
        changed = False
        for x in list(alive):
            if not any(t in alive for t in succ[x]):
                alive.discard(x)
                changed = True
    return any(t in alive for t in succ[start])


def naive_cofinality(nv: Naive, source_classes: list, blocks: list, budget: int = 20_000):
    """Return ``(holds, material)``; ``material`` counts cases where exempting ``N = 0`` mattered."""
    material = 0
    holds = True
    for w in range(nv.n):
        C = source_classes[w]
        start, succ = _pair_graph(nv, w, C)
        for V in blocks:
            U = nv.reach(V)

            def bad(node, U=U):
                return not node[1] <= U

            try:
                bad1 = _bad_lasso_by_enumeration(start, succ, bad, budget)
            except Inconclusive:
                bad1 = _bad_lasso_by_fixpoint(start, succ, bad)
            bad0 = bad1 and bad(start)
            if bad1 != bad0:
                material += 1
            if bad1:
                holds = False
    return holds, material


# disagreeability ------------------------------------------------------------


def naive_disagreeable(nv: Naive, S: frozenset, level: int, max_steps: int = 400) -> bool:
    """Exact window exploration.

    A state is (current range, surviving periods, last ``level`` letters, length
    capped at ``level + 1``).  The set of states at exact length ``n`` is a
    function of the set at ``n - 1``, so the sequence is eventually periodic;
    ``S`` is disagreeable iff some state without surviving periods occurs in the
    periodic part (past length ``level``).
    """
    start = (S, frozenset(range(1, level + 1)), (), 0)
    frontier = frozenset([start])
    history = {frontier: 0}
    seq = [frontier]
    for n in range(1, max_steps + 1):
        nxt = set()
        for T, alive, tail, length in frontier:
            for a in nv.letters:
                T2 = nv.step(T, a)
                if not T2:
                    continue
                new_len = min(length + 1, level + 1)
                keep = set()
                for p in alive:
                    if length < p:
                        keep.add(p)
                    elif tail[-p] == a:
                        keep.add(p)
                tail2 = (tail + (a,))[-level:]
                nxt.add((T2, frozenset(keep), tail2, new_len))
        frontier = frozenset(nxt)
        if frontier in history:
            start_idx = history[frontier]
            cycle = seq[start_idx:]
            return any(not alive and length > level
                       for states in cycle for _, alive, _, length in states)
        history[frontier] = n
        seq.append(frontier)
    raise Inconclusive("window exploration budget")


# algebra ------------------------------------------------------------------


def rewrite_product(nv: Naive, gens: list) -> tuple | None:
    """Reduce a product of generators to ``(alpha, A, beta)`` or ``None`` for zero.

    Generators are ``("s", a)``, ``("t", a)`` for ``s_a*`` and ``("p", frozenset)``.
    Rules: ``p p -> p&``, ``p s_a -> s_a p_{r(.,a)}``, ``s_a* p -> p_{r(.,a)} s_a*``,
    ``s_a* s_b -> 0`` or ``p_{r(a)}``; ``s_a`` alone stands for ``s_a p_{r(a)}``.
    """
    seq = []
    for kind, x in gens:
        if kind == "s":
            seq += [("s", x), ("p", nv.step(nv.V, x))]
        elif kind == "t":
            seq += [("p", nv.step(nv.V, x)), ("t", x)]
        else:
            seq.append(("p", frozenset(x)))
    changed = True
    while changed:
        changed = False
        for i in range(len(seq) - 1):
            (k1, x1), (k2, x2) = seq[i], seq[i + 1]
            if k1 == "p" and k2 == "p":
                seq[i:i + 2] = [("p", x1 & x2)]
            elif k1 == "p" and k2 == "s":
                seq[i:i + 2] = [("s", x2), ("p", nv.step(x1, x2))]
            elif k1 == "t" and k2 == "p":
                seq[i:i + 2] = [("p", nv.step(x2, x1)), ("t", x1)]
            elif k1 == "t" and k2 == "s":
                if x1 != x2:
                    return None
                seq[i:i + 2] = [("p", nv.step(nv.V, x1))]
            else:
                continue
            changed = True
            break
    alpha = tuple(x for k, x in seq if k == "s")
    beta = tuple(reversed([x for k, x in seq if k == "t"]))
    projections = [x for k, x in seq if k == "p"]
    A = nv.V
    for P in projections:
        A = A & P
    A = A & nv.range(nv.V, alpha) if alpha else A
    A = A & nv.range(nv.V, beta) if beta else A
    if not A:
        return None
    return alpha, A, beta


def term_generators(alpha, A: frozenset, beta) -> list:
    return [("s", a) for a in alpha] + [("p", A)] + [("t", a) for a in reversed(beta)]


# random graphs and the suite ---------------------------------------------------


def random_graph(rng: random.Random, max_vertices: int = 6, max_labels: int = 3) -> LabelledGraph:
    n = rng.randint(1, max_vertices)
    k = rng.randint(1, max_labels)
    letters = "abc"[:k] if k <= 3 else [f"l{i}" for i in range(k)]
    vs = [f"v{i}" for i in range(n)]
    edges = set()
    for v in vs:
        edges.add((v, rng.choice(vs), rng.choice(letters)))
    density = rng.uniform(0.05, 0.35)
    for s, d, a in product(vs, vs, letters):
        if rng.random() < density:
            edges.add((s, d, a))
    lines = [f"vertex {v}" for v in vs] + [f"edge {s} {d} {a}" for s, d, a in sorted(edges)]
    return parse_graph("\n".join(lines) + "\n")


@dataclass
class SuiteResult:
    cases: int = 0
    counts: dict = field(default_factory=dict)
    mismatches: list = field(default_factory=list)
    material_exemptions: int = 0

    def record(self, check: str, outcome: str, g: LabelledGraph | None = None, detail: str = ""):
        c = self.counts.setdefault(check, {MATCH: 0, MISMATCH: 0, INCONCLUSIVE: 0})
        c[outcome] += 1
        if outcome == MISMATCH:
            self.mismatches.append((check, detail, serialize(g) if g is not None else ""))

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def summary(self) -> str:
        lines = [f"cases: {self.cases}"]
        for check in sorted(self.counts):
            c = self.counts[check]
            lines.append(f"{check:<22} match={c[MATCH]} mismatch={c[MISMATCH]} "
                         f"inconclusive={c[INCONCLUSIVE]}")
        lines.append(f"cofinality N=0 exemption material in {self.material_exemptions} case(s)")
        for check, detail, text in self.mismatches:
            lines.append(f"MISMATCH in {check}: {detail}")
            lines.append(text.rstrip())
        lines.append("all match" if self.ok else f"{len(self.mismatches)} mismatch(es)")
        return "\n".join(lines)


def _compare(result: SuiteResult, name: str, g: LabelledGraph, decided, oracle):
    try:
        expected = oracle()
    except Inconclusive:
        result.record(name, INCONCLUSIVE, g)
        return
    got = decided()
    if got == expected:
        result.record(name, MATCH, g)
    else:
        result.record(name, MISMATCH, g, f"decider={got!r} oracle={expected!r}")


def check_graph(g: LabelledGraph, result: SuiteResult, rng: random.Random, levels: int = 4,
                budget: int = DEFAULT_BUDGET):
    """Compare every decider with its oracle on one graph.

    ``budget`` bounds the oracle explorations; lowering it can only turn
    answers into ``inconclusive``.
    """
    from .accommodating import omega, smallest_accommodating, stable_partition
    from .automaton import build
    from .cofinality import check_cofinality, check_strong_cofinality
    from .disagreeable import disagreeable_block
    from .graph import relative_range
    from .wlr import check_wlr
    from .accommodating import bar_e

    nv = Naive(g)
    letters = list(g.labels)

    def ranges():
        aut = build(g, [g.full])
        for _ in range(20):
            A = rng.randrange(g.full + 1)
            u = tuple(rng.choice(letters) for _ in range(rng.randint(1, 4)))
            v = tuple(rng.choice(letters) for _ in range(rng.randint(1, 4)))
            direct = relative_range(g, A, u + v)
            if direct != relative_range(g, relative_range(g, A, u), v):
                return False
            if direct != to_mask(nv.range(to_set(A), u + v)):
                return False
            s = aut.run(aut.state(g.full), g.codes(u))
            if (aut.states[s] if s >= 0 else 0) != to_mask(nv.range(nv.V, u)):
                return False
        return True

    _compare(result, "relative_range", g, ranges, lambda: True)

    _compare(result, "smallest_accommodating", g,
             lambda: sorted(smallest_accommodating(g).members),
             lambda: sorted(to_mask(S) for S in naive_smallest_family(nv, cap=budget)))

    sep = separation_lengths(nv)
    finite = [d for d in sep.values() if d is not None]
    top = max(finite, default=0) + 1

    def parts():
        limit, lstar = stable_partition(g)
        got = [list(omega(g, l).blocks) for l in range(1, top + 1)]
        return got, list(limit.blocks), lstar

    def naive_parts():
        got = [[to_mask(b) for b in naive_partition(nv, l, sep)] for l in range(1, top + 1)]
        limit = [to_mask(b) for b in naive_partition(nv, None, sep)]
        lstar = next(i + 1 for i, blocks in enumerate(got) if blocks == limit)
        return got, limit, lstar

    _compare(result, "omega", g, parts, naive_parts)

    def wlr_oracle(members):
        d = naive_wlr(nv, [to_set(m) for m in members], budget=10 * budget)
        return d is None, d

    try:
        fam = smallest_accommodating(g).members
        _compare(result, "wlr_smallest", g,
                 lambda: (lambda v: (v.holds, len(v.counterexample.word) if v.counterexample else None))(
                     check_wlr(g, smallest_accommodating(g))),
                 lambda: wlr_oracle(fam))
    except Exception as exc:  # noqa: BLE001 - resource caps on the decider side
        result.record("wlr_smallest", INCONCLUSIVE, g, str(exc))
    blocks = bar_e(g)
    if len(blocks.blocks) <= 8:
        _compare(result, "wlr_blocks", g,
                 lambda: (lambda v: (v.holds, len(v.counterexample.word) if v.counterexample else None))(
                     check_wlr(g, blocks)),
                 lambda: wlr_oracle(blocks.materialize().members))
    else:
        result.record("wlr_blocks", INCONCLUSIVE, g)

    limit_blocks = naive_partition(nv, None, sep)
    lvl1 = naive_partition(nv, 1, sep)
    _, lstar = stable_partition(g)
    lstar_blocks = naive_partition(nv, lstar, sep)

    def classes(part):
        return [next(b for b in part if v in b) for v in range(nv.n)]

    material = [0]

    def cof_oracle(part):
        holds, mat = naive_cofinality(nv, classes(part), limit_blocks, budget=budget)
        material[0] += mat
        return holds

    _compare(result, "strong_cofinality", g, lambda: check_strong_cofinality(g).holds,
             lambda: cof_oracle(lvl1))
    _compare(result, "cofinality", g, lambda: check_cofinality(g).holds,
             lambda: cof_oracle(lstar_blocks))
    result.material_exemptions += material[0]

    for level in range(1, levels + 1):
        seen = set()
        for v in range(g.n):
            S = omega(g, level).block_of(v)
            if S in seen:
                continue
            seen.add(S)
            _compare(result, "disagreeable_block", g,
                     lambda S=S, level=level: disagreeable_block(g, S, level).disagreeable,
                     lambda S=S, level=level: naive_disagreeable(nv, to_set(S), level,
                                                                 max_steps=max(1, budget // 50)))


def run_suite(seed: int = 0, cases: int = 200, max_vertices: int = 6, max_labels: int = 3,
              levels: int = 4, budget: int = DEFAULT_BUDGET) -> SuiteResult:
    rng = random.Random(seed)
    result = SuiteResult()
    for _ in range(cases):
        g = random_graph(rng, max_vertices, max_labels)
        result.cases += 1
        check_graph(g, result, rng, levels, budget)
    return result


def random_term(rng: random.Random, g: LabelledGraph, members, max_len: int = 3):
    letters = list(g.labels)
    alpha = tuple(rng.choice(letters) for _ in range(rng.randint(0, max_len)))
    beta = tuple(rng.choice(letters) for _ in range(rng.randint(0, max_len)))
    A = rng.choice(members)
    return Fraction(rng.randint(-3, 3) or 1, rng.randint(1, 4)), alpha, A, beta

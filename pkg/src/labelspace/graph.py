"""Labelled graphs: data model, line-format parsing, validation and relative ranges.

Vertex sets are Python ``int`` bitmasks over the dense vertex indices (bit ``i``
is vertex ``i``).  Words are tuples of label strings; ``()`` is the internal
empty-word sentinel with ``relative_range(g, A, ()) == A``.

File format, one directive per line::

    # comment
    vertex <id>
    edge <src> <dst> <label>

Vertices are indexed in order of first appearance.  If any ``vertex`` line is
present the vertex set is closed and edges may only mention declared ids.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import _kernels
from .errors import GraphParseError, ValidationError


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


class LabelledGraph:
    """Finite directed graph with an edge labelling onto its alphabet.

    Immutable after construction.  ``succ[a][v]`` is the bitmask of
    ``a``-successors of vertex ``v`` (``a`` a label code), ``pred`` the reverse.
    Duplicate ``(src, dst, label)`` triples are collapsed but remembered in
    ``duplicate_edges`` so that :func:`validate` can report them.
    """

    def __init__(self, vertices: Sequence[str], edges: Iterable[tuple[str, str, str]]):
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("vertex ids must be unique")
        self._vindex = {v: i for i, v in enumerate(self.vertices)}
        raw = [(str(s), str(d), str(a)) for s, d, a in edges]
        for s, d, _ in raw:
            for v in (s, d):
                if v not in self._vindex:
                    raise ValueError(f"edge mentions unknown vertex {v!r}")
        self.labels = tuple(sorted({a for _, _, a in raw}))
        self._lindex = {a: i for i, a in enumerate(self.labels)}

        seen = set()
        dups = []
        triples = []
        for s, d, a in raw:
            key = (self._vindex[s], self._vindex[d], self._lindex[a])
            if key in seen:
                dups.append((s, d, a))
                continue
            seen.add(key)
            triples.append(key)
        self.edges = tuple(triples)
        self.duplicate_edges = tuple(dups)

        n, nl = len(self.vertices), len(self.labels)
        self.n = n
        self.full = (1 << n) - 1
        self.succ = [[0] * n for _ in range(nl)]
        self.pred = [[0] * n for _ in range(nl)]
        for s, d, a in self.edges:
            self.succ[a][s] |= 1 << d
            self.pred[a][d] |= 1 << s
        self._image_cache: dict[tuple[int, int], int] = {}
        self._succ_table = None
        self.cache: dict = {}

    # identifiers ---------------------------------------------------------

    def index(self, vertex: str) -> int:
        try:
            return self._vindex[vertex]
        except KeyError:
            raise KeyError(f"unknown vertex {vertex!r}") from None

    def label_code(self, label: str) -> int:
        try:
            return self._lindex[label]
        except KeyError:
            raise ValueError(f"label {label!r} is not in the alphabet {self.labels}") from None

    def mask(self, vertices: Iterable[str]) -> int:
        m = 0
        for v in vertices:
            m |= 1 << self.index(v)
        return m

    def ids(self, mask: int) -> list[str]:
        return [self.vertices[i] for i in iter_bits(mask)]

    def fmt(self, mask: int) -> str:
        return "{" + ",".join(self.ids(mask)) + "}"

    def word(self, w) -> tuple[str, ...]:
        """Normalise ``w`` to a label tuple.

        Strings are split on ``.``; a dot-free string that is not itself a label
        is read one character per label (so ``"ab"`` works for one-letter alphabets).
        """
        if isinstance(w, str):
            if w in ("", "ε"):
                return ()
            if "." in w:
                parts = tuple(w.split("."))
            elif w in self._lindex:
                parts = (w,)
            else:
                parts = tuple(w)
        else:
            parts = tuple(w)
        for a in parts:
            self.label_code(a)
        return parts

    def codes(self, w) -> tuple[int, ...]:
        return tuple(self._lindex[a] for a in self.word(w))

    def spell(self, codes: Iterable[int]) -> tuple[str, ...]:
        return tuple(self.labels[c] for c in codes)

    # ranges --------------------------------------------------------------

    def image(self, mask: int, a: int) -> int:
        """``r(mask, a)`` for a single label code ``a``."""
        key = (mask, a)
        hit = self._image_cache.get(key)
        if hit is not None:
            return hit
        row = self.succ[a]
        out = 0
        for v in iter_bits(mask):
            out |= row[v]
        self._image_cache[key] = out
        return out

    def run(self, mask: int, codes: Iterable[int]) -> int:
        for a in codes:
            if not mask:
                return 0
            mask = self.image(mask, a)
        return mask

    def out_labels(self, v: int) -> list[int]:
        return [a for a in range(len(self.labels)) if self.succ[a][v]]

    def succ_table(self) -> np.ndarray:
        """Packed successor table for the batched kernels, shape ``(L, n, nw)``."""
        if self._succ_table is None:
            nw = _kernels.n_words(self.n)
            rows = [self.succ[a][v] for a in range(len(self.labels)) for v in range(self.n)]
            table = _kernels.pack(rows, nw).reshape(len(self.labels), self.n, nw)
            table.setflags(write=False)
            self._succ_table = table
        return self._succ_table

    def __eq__(self, other):
        if not isinstance(other, LabelledGraph):
            return NotImplemented
        return (self.vertices == other.vertices and self.labels == other.labels
                and sorted(self.edges) == sorted(other.edges))

    def __hash__(self):
        return hash((self.vertices, self.labels, tuple(sorted(self.edges))))

    def __repr__(self):
        return f"LabelledGraph(|V|={self.n}, |E|={len(self.edges)}, labels={list(self.labels)})"


def parse_graph(text: str) -> LabelledGraph:
    declared: list[str] = []
    order: dict[str, None] = {}
    edges = []
    seen: dict[tuple[str, str, str], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tok = line.split()
        if tok[0] == "vertex":
            if len(tok) != 2:
                raise GraphParseError("expected 'vertex <id>'", lineno)
            declared.append(tok[1])
            order.setdefault(tok[1])
        elif tok[0] == "edge":
            if len(tok) != 4:
                raise GraphParseError("expected 'edge <src> <dst> <label>'", lineno)
            s, d, a = tok[1:]
            if "." in a:
                raise GraphParseError(f"label {a!r} may not contain '.'", lineno)
            if (s, d, a) in seen:
                raise GraphParseError(
                    f"duplicate edge {s} -{a}-> {d} (first on line {seen[s, d, a]}); "
                    "parallel edges must carry distinct labels", lineno)
            seen[s, d, a] = lineno
            order.setdefault(s)
            order.setdefault(d)
            edges.append((s, d, a, lineno))
        else:
            raise GraphParseError(f"unknown directive {tok[0]!r}", lineno)
    if declared:
        known = set(declared)
        for s, d, _, lineno in edges:
            for v in (s, d):
                if v not in known:
                    raise GraphParseError(f"unknown vertex {v!r} (not declared)", lineno)
    return LabelledGraph(list(order), [(s, d, a) for s, d, a, _ in edges])


def serialize(g: LabelledGraph) -> str:
    """Canonical text: all vertices in index order, edges sorted by (src, label, dst)."""
    lines = [f"vertex {v}" for v in g.vertices]
    for s, d, a in sorted(g.edges, key=lambda e: (e[0], g.labels[e[2]], e[1])):
        lines.append(f"edge {g.vertices[s]} {g.vertices[d]} {g.labels[a]}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ValidationReport:
    sinks: tuple[str, ...] = ()
    duplicate_edges: tuple[tuple[str, str, str], ...] = ()
    notes: tuple[str, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.sinks and not self.duplicate_edges

    def summary(self) -> str:
        if self.ok:
            return "ok"
        parts = []
        if self.sinks:
            parts.append("sinks: " + ", ".join(self.sinks))
        if self.duplicate_edges:
            parts.append("duplicate labelled edges: "
                         + ", ".join(f"{s}-{a}->{d}" for s, d, a in self.duplicate_edges))
        return "; ".join(parts)


def validate(g: LabelledGraph) -> ValidationReport:
    sinks = tuple(g.vertices[v] for v in range(g.n) if not g.out_labels(v))
    notes = ()
    if g.n == 0:
        notes = ("graph has no vertices",)
    return ValidationReport(sinks=sinks, duplicate_edges=g.duplicate_edges, notes=notes)


def require_valid(g: LabelledGraph) -> None:
    if "valid" in g.cache:
        return
    report = validate(g)
    if not report.ok or g.n == 0:
        raise ValidationError(report)
    g.cache["valid"] = True


def relative_range(g: LabelledGraph, A: int, w) -> int:
    """``r(A, w)``: ranges of the paths labelled ``w`` whose source lies in ``A``."""
    return g.run(A, g.codes(w))


def range_of_word(g: LabelledGraph, w) -> int:
    """``r(w) = r(E^0, w)``."""
    return relative_range(g, g.full, w)


def in_label_words(g: LabelledGraph, v, level: int) -> frozenset[tuple[str, ...]]:
    """Labels of all paths of length ``1 .. level`` ending at ``v``."""
    if level < 1:
        raise ValueError("level must be >= 1")
    vi = g.index(v) if isinstance(v, str) else v
    out = set()
    # word (as codes, last letter last) -> bitmask of path sources
    layer = {(): 1 << vi}
    for _ in range(level):
        nxt = {}
        for word, heads in layer.items():
            for a in range(len(g.labels)):
                src = 0
                pred = g.pred[a]
                for u in iter_bits(heads):
                    src |= pred[u]
                if src:
                    key = (a,) + word
                    nxt[key] = nxt.get(key, 0) | src
        out.update(nxt)
        layer = nxt
    return frozenset(g.spell(w) for w in out)

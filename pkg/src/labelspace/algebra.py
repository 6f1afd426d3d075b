"""Normal-form calculus for terms ``c * s_alpha p_A s_beta*`` over a labelled space.

Relations used:

* ``p_A p_B = p_{A & B}`` and ``p_{A | B} = p_A + p_B - p_{A & B}``;
* ``p_A s_a = s_a p_{r(A, a)}``;
* ``s_a* s_b = 0`` for ``a != b`` and ``s_a* s_a = p_{r(a)}``;
* ``p_A = sum over letters a leaving A of s_a p_{r(A, a)} s_a*``.

Products of spanning terms are computed in closed form.  Equality of linear
combinations is decided on a normal form: every term is expanded with the last
relation until both words have the same minimum length, then each projection
is written over the join-irreducible members of the family.  For a finite
distributive lattice of sets, ``A -> {join-irreducibles inside A}`` turns
unions and meets into unions and meets of indicator sets, so the second
relation becomes an identity of indicator vectors.

This is a syntactic calculus: it checks consequences of the relations and
makes no statement about operator norms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .accommodating import (BlockFamily, ExplicitFamily, join_irreducibles,
                            smallest_accommodating)
from .errors import FamilyError
from .graph import LabelledGraph, range_of_word, relative_range, require_valid
from .wlr import check_wlr

Key = tuple[tuple[str, ...], int, tuple[str, ...]]


@dataclass(frozen=True)
class Term:
    coeff: Fraction
    alpha: tuple[str, ...]
    A: int
    beta: tuple[str, ...]

    @property
    def key(self) -> Key:
        return (self.alpha, self.A, self.beta)


class LinComb:
    """Finite sum of canonical terms; zero coefficients are dropped."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Key, Fraction] | None = None):
        self.terms = {k: c for k, c in (terms or {}).items() if c != 0}

    @classmethod
    def of(cls, items: Iterable[Term]) -> "LinComb":
        acc: dict[Key, Fraction] = {}
        for t in items:
            acc[t.key] = acc.get(t.key, Fraction(0)) + t.coeff
        return cls(acc)

    def __iter__(self):
        for (alpha, A, beta), c in sorted(self.terms.items(), key=lambda kv: _order(kv[0])):
            yield Term(c, alpha, A, beta)

    def __add__(self, other: "LinComb") -> "LinComb":
        acc = dict(self.terms)
        for k, c in other.terms.items():
            acc[k] = acc.get(k, Fraction(0)) + c
        return LinComb(acc)

    def __neg__(self) -> "LinComb":
        return LinComb({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "LinComb") -> "LinComb":
        return self + (-other)

    def scale(self, c) -> "LinComb":
        c = Fraction(c)
        return LinComb({k: c * v for k, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, LinComb):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"LinComb({len(self.terms)} terms)"


def _order(key: Key):
    alpha, A, beta = key
    return (len(alpha), alpha, len(beta), beta, A)


class Algebra:
    """Relation calculus over ``g`` with a fixed working family.

    ``family`` is ``"smallest"`` (the smallest accommodating family), ``"blocks"``
    (unions of limit blocks) or an explicit family object.  Families that are not
    weakly left-resolving are refused.
    """

    def __init__(self, g: LabelledGraph, family="smallest"):
        require_valid(g)
        self.g = g
        if family == "smallest":
            family = smallest_accommodating(g)
        elif family == "blocks":
            from .accommodating import bar_e
            family = bar_e(g)
        elif not isinstance(family, (ExplicitFamily, BlockFamily)):
            raise FamilyError(f"unknown family {family!r}")
        verdict = check_wlr(g, family)
        if not verdict.holds:
            cex = verdict.counterexample
            raise FamilyError(
                "family is not weakly left-resolving: "
                f"r({g.fmt(cex.A)} & {g.fmt(cex.B)}, {'.'.join(cex.word)}) differs from the meet of ranges")
        self.family = family
        self._irreducibles = join_irreducibles(family)

    # construction ------------------------------------------------------

    def _r(self, w: tuple[str, ...]) -> int:
        return self.g.full if not w else range_of_word(self.g, w)

    def canonicalize(self, t: Term) -> Term | None:
        """Shrink ``A`` to ``A & r(alpha) & r(beta)``; ``None`` when the term vanishes."""
        if t.coeff == 0:
            return None
        A = t.A & self._r(t.alpha) & self._r(t.beta)
        if not A:
            return None
        if A not in self.family:
            raise FamilyError(f"{self.g.fmt(A)} is not in the working family")
        return Term(t.coeff, t.alpha, A, t.beta)

    def term(self, alpha=(), A: int | None = None, beta=(), coeff=1) -> LinComb:
        g = self.g
        alpha, beta = g.word(alpha), g.word(beta)
        if A is None:
            A = self._r(alpha) & self._r(beta)
        if A and A not in self.family:
            raise FamilyError(f"{g.fmt(A)} is not in the working family")
        t = self.canonicalize(Term(Fraction(coeff), alpha, A, beta))
        return LinComb.of([t] if t else [])

    def p(self, A: int) -> LinComb:
        return self.term((), A, ())

    def s(self, w) -> LinComb:
        return self.term(w, None, ())

    def s_star(self, w) -> LinComb:
        return self.term((), None, w)

    # products ------------------------------------------------------------

    def multiply_terms(self, x: Term, y: Term) -> Term | None:
        g = self.g
        alpha, A, beta = x.alpha, x.A, x.beta
        gamma, B, delta = y.alpha, y.A, y.beta
        coeff = x.coeff * y.coeff
        if gamma[:len(beta)] == beta:
            rest = gamma[len(beta):]
            t = Term(coeff, alpha + rest, relative_range(g, A, rest) & B, delta)
        elif beta[:len(gamma)] == gamma:
            rest = beta[len(gamma):]
            t = Term(coeff, alpha, A & relative_range(g, B, rest), delta + rest)
        else:
            return None
        return self.canonicalize(t)

    def multiply(self, x: LinComb, y: LinComb) -> LinComb:
        out = []
        for s in x:
            for t in y:
                z = self.multiply_terms(s, t)
                if z is not None:
                    out.append(z)
        return LinComb.of(out)

    def adjoint(self, x: LinComb) -> LinComb:
        return LinComb.of(Term(t.coeff.conjugate(), t.beta, t.A, t.alpha) for t in x)

    def expand(self, A: int, n: int) -> LinComb:
        """``p_A`` as the sum of ``s_sigma p_{r(A, sigma)} s_sigma*`` over words of length ``n``."""
        if n < 1:
            raise ValueError("depth must be >= 1")
        return LinComb.of(self._expand_term(Term(Fraction(1), (), A, ()), n))

    def _expand_term(self, t: Term, n: int) -> list[Term]:
        g = self.g
        layer = [((), t.A)]
        for _ in range(n):
            nxt = []
            for word, mask in layer:
                for a in range(len(g.labels)):
                    m = g.image(mask, a)
                    if m:
                        nxt.append((word + (g.labels[a],), m))
            layer = nxt
        out = []
        for sigma, m in layer:
            c = self.canonicalize(Term(t.coeff, t.alpha + sigma, m, t.beta + sigma))
            if c is not None:
                out.append(c)
        return out

    # equality ----------------------------------------------------------

    def normal_form(self, x: LinComb, depth: int | None = None) -> dict:
        """Map ``(alpha, J, beta) -> coeff`` with every ``min(|alpha|, |beta|) == depth``."""
        if depth is None:
            depth = max((min(len(t.alpha), len(t.beta)) for t in x), default=0)
        acc: dict = {}
        for t in x:
            m = min(len(t.alpha), len(t.beta))
            if m > depth:
                raise ValueError("depth below the term depth")
            pieces = self._expand_term(t, depth - m) if depth > m else [t]
            for piece in pieces:
                for j in self._irreducibles:
                    if j & ~piece.A == 0:
                        k = (piece.alpha, j, piece.beta)
                        acc[k] = acc.get(k, Fraction(0)) + piece.coeff
        return {k: c for k, c in acc.items() if c != 0}

    def equivalent(self, x: LinComb, y: LinComb) -> bool:
        depth = max((min(len(t.alpha), len(t.beta)) for t in list(x) + list(y)), default=0)
        return self.normal_form(x - y, depth) == {}

    # display -------------------------------------------------------------

    def format_term(self, t: Term) -> str:
        parts = []
        if t.alpha:
            parts.append(f"s[{'.'.join(t.alpha)}]")
        parts.append("p" + self.g.fmt(t.A))
        if t.beta:
            parts.append(f"s*[{'.'.join(t.beta)}]")
        body = " ".join(parts)
        if t.coeff == 1:
            return body
        return f"({t.coeff}) {body}"

    def format(self, x: LinComb) -> str:
        if not x:
            return "0"
        return " + ".join(self.format_term(t) for t in x)

"""Combine the checkers into a simplicity verdict with citations.

Rules, evaluated in order:

0. ranges of distinct limit blocks meet (the block family is not weakly
   left-resolving) -> NOT_APPLICABLE, the criteria presuppose it;
1. strongly cofinal and disagreeable -> SIMPLE;
2. not strongly cofinal -> NOT_SIMPLE;
3. every vertex is its own limit block and not disagreeable -> NOT_SIMPLE;
4. otherwise UNKNOWN.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .accommodating import bar_e, singleton_condition, stable_partition
from .automaton import DEFAULT_STATE_CAP
from .cofinality import CofinalityVerdict, check_cofinality, check_strong_cofinality
from .disagreeable import DisagreeableVerdict, disagreeable_space
from .graph import LabelledGraph, require_valid
from .wlr import DEFAULT_PAIR_CAP, WlrVerdict, check_wlr

SIMPLE = "SIMPLE"
NOT_SIMPLE = "NOT_SIMPLE"
UNKNOWN = "UNKNOWN"
NOT_APPLICABLE = "NOT_APPLICABLE"

CITATIONS = {
    "wlr-presupposition": "The simplicity criteria are stated for block families whose "
                          "relative ranges satisfy r(A,w) & r(B,w) = r(A & B,w).",
    "strongly-cofinal+disagreeable=>simple": "strongly cofinal and disagreeable imply simple",
    "simple=>strongly-cofinal": "simple implies strongly cofinal; used as its contrapositive",
    "simple+singletons=>disagreeable": "simple with every {v} in the block family implies "
                                       "disagreeable; used as its contrapositive",
    "singletons:simple<=>cofinal+disagreeable": "with every {v} in the block family, simple "
                                                "iff strongly cofinal and disagreeable",
    "no-criterion": "strongly cofinal, not disagreeable and some limit block is not a "
                    "singleton: no criterion decides this case",
}


@dataclass(frozen=True)
class SimplicityReport:
    wlr_bar_e: WlrVerdict
    singleton: bool
    strong_cofinal: CofinalityVerdict
    cofinal: CofinalityVerdict
    disagreeable: DisagreeableVerdict
    verdict: str
    rule: int
    lstar: int
    citations: tuple[dict, ...] = field(default=())


def _cite(*tags: str) -> tuple[dict, ...]:
    return tuple({"tag": t, "statement": CITATIONS[t]} for t in tags)


def decide(wlr_holds: bool, strong: bool, disagreeable: bool, singleton: bool) -> tuple[str, int, tuple]:
    """The rule table on its own, for reuse and exhaustive testing."""
    if not wlr_holds:
        return NOT_APPLICABLE, 0, _cite("wlr-presupposition")
    if strong and disagreeable:
        extra = ("singletons:simple<=>cofinal+disagreeable",) if singleton else ()
        return SIMPLE, 1, _cite("strongly-cofinal+disagreeable=>simple", *extra)
    if not strong:
        return NOT_SIMPLE, 2, _cite("simple=>strongly-cofinal")
    if singleton:
        return NOT_SIMPLE, 3, _cite("simple+singletons=>disagreeable",
                                    "singletons:simple<=>cofinal+disagreeable")
    return UNKNOWN, 4, _cite("no-criterion")


def simplicity_verdict(g: LabelledGraph, state_cap: int = DEFAULT_STATE_CAP,
                       pair_cap: int = DEFAULT_PAIR_CAP) -> SimplicityReport:
    require_valid(g)
    _, lstar = stable_partition(g, state_cap)
    wlr = check_wlr(g, bar_e(g, state_cap), exhaustive=True, pair_cap=pair_cap)
    single = singleton_condition(g, state_cap)
    strong = check_strong_cofinality(g, state_cap)
    plain = check_cofinality(g, state_cap)
    dis = disagreeable_space(g, state_cap)
    verdict, rule, cites = decide(wlr.holds, strong.holds, dis.space_disagreeable, single)
    return SimplicityReport(wlr, single, strong, plain, dis, verdict, rule, lstar, cites)

"""Exact analysis of finite labelled graphs.

Computes accommodating families, generalized vertices and their limit
partition, and decides weak left-resolving, cofinality, strong cofinality and
disagreeability, combining them into a simplicity verdict.
"""

from .accommodating import (BlockFamily, ExplicitFamily, Partition, bar_e, generalized_vertex,
                            omega, singleton_condition, smallest_accommodating, stable_partition,
                            xl_yl)
from .algebra import Algebra, LinComb, Term
from .automaton import build, infinite_label_classification, reach_union
from .cofinality import check_cofinality, check_strong_cofinality
from .disagreeable import disagreeable_block, disagreeable_space
from .errors import (FamilyError, GraphParseError, LabelSpaceError, ResourceError,
                     UndefinedResultError, ValidationError)
from .graph import (LabelledGraph, in_label_words, parse_graph, range_of_word, relative_range,
                    serialize, validate)
from .verdict import simplicity_verdict
from .wlr import check_wlr

__version__ = "0.1.0"

__all__ = [
    "Algebra", "BlockFamily", "ExplicitFamily", "FamilyError", "GraphParseError",
    "LabelSpaceError", "LabelledGraph", "LinComb", "Partition", "ResourceError", "Term",
    "UndefinedResultError", "ValidationError", "bar_e", "build", "check_cofinality",
    "check_strong_cofinality", "check_wlr", "disagreeable_block", "disagreeable_space",
    "generalized_vertex", "in_label_words", "infinite_label_classification", "omega",
    "parse_graph", "range_of_word", "reach_union", "relative_range", "serialize",
    "simplicity_verdict", "singleton_condition", "smallest_accommodating", "stable_partition",
    "validate", "xl_yl",
]

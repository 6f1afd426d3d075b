"""Reference graphs shipped with the package."""

from importlib import resources

from ..graph import LabelledGraph, parse_graph

NAMES = ("A", "B", "C", "D")


def path(name: str):
    return resources.files(__name__).joinpath(f"{name}.lg")


def text(name: str) -> str:
    return path(name).read_text(encoding="utf-8")


def load(name: str) -> LabelledGraph:
    return parse_graph(text(name))

"""Bundled corpora: named graphs, all graphs on up to 7 vertices, SRG parameters."""

from __future__ import annotations

from importlib import resources

from ..graph import Graph, read_graph6_lines

BUNDLED = {
    "named": "named.g6",
    "atlas7": "atlas7.g6",
    "srg": "srg.csv",
}


def bundled_text(name: str) -> str:
    return resources.files(__name__).joinpath(BUNDLED.get(name, name)).read_text("ascii")


def bundled_graphs(name: str) -> list[Graph]:
    return list(read_graph6_lines(bundled_text(name).splitlines(), source=name))

"""Matching-covered bipartite graphs: tests, ear decompositions, extremal classes and k-extendability."""

from .core import A, B, BipGraph, EdgeCut, Matching, Tree, Vertex, boundary, build, components, remove
from .errors import GraphError

__version__ = "0.1.0"

__all__ = [
    "A",
    "B",
    "BipGraph",
    "EdgeCut",
    "GraphError",
    "Matching",
    "Tree",
    "Vertex",
    "boundary",
    "build",
    "components",
    "remove",
]

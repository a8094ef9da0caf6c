"""Graph complexes for long j-knots in R^n and their configuration space integrals."""

from .canon import Canonical, canonicalize
from .coboundary import GraphVector, contract_edge, delta, delta_vec, tau
from .enumeration import enumerate_graphs
from .grammar import GraphSyntaxError, format_graph, parse_graph
from .graph import (
    ALL_REGIMES,
    DecoratedGraph,
    Edge,
    Loop,
    ParityRegime,
    Symmetry,
    apply_symmetry,
    grading,
    validate,
)
from .named import h1, h2, h_terms

__version__ = "0.1.0"

__all__ = [
    "ALL_REGIMES",
    "Canonical",
    "DecoratedGraph",
    "Edge",
    "GraphSyntaxError",
    "GraphVector",
    "Loop",
    "ParityRegime",
    "Symmetry",
    "apply_symmetry",
    "canonicalize",
    "contract_edge",
    "delta",
    "delta_vec",
    "enumerate_graphs",
    "format_graph",
    "grading",
    "h1",
    "h2",
    "h_terms",
    "parse_graph",
    "tau",
    "validate",
]

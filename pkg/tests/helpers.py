"""Random graph generators shared by the test modules."""

from __future__ import annotations

import random
from itertools import combinations

from knotgc.enumeration import decorate
from knotgc.graph import ALL_REGIMES, apply_symmetry, is_admissible, random_symmetry


def random_structure(rng: random.Random, max_vertices: int = 5, allow_relations: bool = True):
    """A random admissible decorated graph in default decoration.

    With ``allow_relations`` the graph may carry repeated edges or two double
    loops at one vertex, so relation-zero cases are exercised too.
    """
    while True:
        regime = rng.choice(ALL_REGIMES)
        n = rng.randint(1, max_vertices)
        t = rng.randint(0, n // 2)
        s = n - t
        if s == 0:
            continue
        pairs = list(combinations(range(1, n + 1), 2))
        theta = [p for p in pairs if rng.random() < 0.45]
        if allow_relations and theta and rng.random() < 0.1:
            theta.append(rng.choice(theta))
        i_pairs = list(combinations(range(1, s + 1), 2))
        eta = [p for p in i_pairs if rng.random() < 0.3]
        small, double = [], []
        if regime.small_loops_allowed:
            small = [rng.randint(1, s) for _ in range(rng.choice((0, 0, 1, 2)))]
        if regime.double_loops_allowed:
            double = [rng.randint(1, s) for _ in range(rng.choice((0, 0, 1, 2)))]
            if not allow_relations:
                double = sorted(set(double))
        graph = decorate(regime, s, t, theta, eta, small, double)
        if is_admissible(graph) and (theta or small or double):
            return graph


def random_graph(rng: random.Random, max_vertices: int = 5, allow_relations: bool = True):
    """A random admissible graph with a random relabeling applied."""
    graph = random_structure(rng, max_vertices, allow_relations)
    image, _ = apply_symmetry(graph, random_symmetry(graph, rng))
    return image

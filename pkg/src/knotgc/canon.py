"""Canonical forms of decorated graphs, with the sign of the relabeling.

The search runs over vertex relabelings that respect an isomorphism-invariant
colouring (colour refinement seeded by vertex kind and degrees).  Once the
vertex relabeling is fixed, every other decoration is normalized directly:
oriented edges point from the smaller to the larger label, labeled edges are
numbered in sorted order, loops get sign +1 and are numbered in sorted order.
The sign of each of these moves is accumulated; renumbering small loops costs
nothing, since only the order of double loops enters the sign.  The canonical form is the
smallest key found; a second relabeling reaching the same key with the
opposite sign is an odd automorphism and the class is zero.
"""

from __future__ import annotations

from itertools import permutations, product
from typing import Optional

from .graph import (
    DOUBLE, ETA, SMALL, THETA, DecoratedGraph, Edge, Loop, is_admissible,
    is_relation_zero, loop_permutation_exponent, parity,
)

Key = tuple


class Canonical:
    """Result of :func:`canonicalize` for a nonzero class: ``graph = sign * form``."""

    __slots__ = ("form", "sign", "key")

    def __init__(self, form: DecoratedGraph, sign: int, key: Key):
        self.form = form
        self.sign = sign
        self.key = key

    def __iter__(self):
        yield self.form
        yield self.sign

    def __repr__(self):
        return f"Canonical({self.form}, {self.sign:+d})"


def _refine(graph: DecoratedGraph) -> list[list[int]]:
    """Ordered colour classes of vertices; i-vertex classes come first."""
    nv = graph.n_vertices
    nbrs: list[list[tuple[int, int]]] = [[] for _ in range(nv + 1)]
    for kind_id, kind in ((0, THETA), (1, ETA)):
        for e in graph.edges(kind):
            nbrs[e.p].append((kind_id, e.q))
            nbrs[e.q].append((kind_id, e.p))
    loops = [[0, 0] for _ in range(nv + 1)]
    for lp in graph.small_loops:
        loops[lp.vertex][0] += 1
    for lp in graph.double_loops:
        loops[lp.vertex][1] += 1

    colour = [0] * (nv + 1)
    sigs = [None] + [
        (
            0 if v <= graph.s else 1,
            sum(1 for k, _ in nbrs[v] if k == 0),
            sum(1 for k, _ in nbrs[v] if k == 1),
            loops[v][0],
            loops[v][1],
        )
        for v in range(1, nv + 1)
    ]
    n_classes = -1
    while True:
        ranks = {sig: r for r, sig in enumerate(sorted(set(sigs[1:])))}
        colour = [0] + [ranks[sigs[v]] for v in range(1, nv + 1)]
        if len(ranks) == n_classes:
            break
        n_classes = len(ranks)
        sigs = [None] + [
            (colour[v], tuple(sorted((k, colour[w]) for k, w in nbrs[v])))
            for v in range(1, nv + 1)
        ]
    classes: list[list[int]] = [[] for _ in range(n_classes)]
    for v in range(1, nv + 1):
        classes[colour[v]].append(v)
    return classes


def _relabelings(classes: list[list[int]], nv: int):
    starts = []
    pos = 1
    for cls in classes:
        starts.append(pos)
        pos += len(cls)
    pi = [0] * (nv + 1)
    fixed = [(cls[0], start) for cls, start in zip(classes, starts) if len(cls) == 1]
    for v, start in fixed:
        pi[v] = start
    moving = [(cls, start) for cls, start in zip(classes, starts) if len(cls) > 1]
    if not moving:
        yield pi
        return
    for choice in product(*(permutations(cls) for cls, _ in moving)):
        for (cls, start), order in zip(moving, choice):
            for offset, v in enumerate(order):
                pi[v] = start + offset
        yield pi


def _key(graph: DecoratedGraph, pi: list[int]) -> Key:
    th = sorted((pi[e.p], pi[e.q]) if pi[e.p] < pi[e.q] else (pi[e.q], pi[e.p]) for e in graph.theta)
    et = sorted((pi[e.p], pi[e.q]) if pi[e.p] < pi[e.q] else (pi[e.q], pi[e.p]) for e in graph.eta)
    lp = sorted(
        [(pi[x.vertex], 0) for x in graph.small_loops]
        + [(pi[x.vertex], 1) for x in graph.double_loops]
    )
    return (graph.s, graph.t, tuple(th), tuple(et), tuple(lp))


def _sign_exponent(graph: DecoratedGraph, pi: list[int]) -> int:
    reg = graph.regime
    s = graph.s
    exp = 0
    if reg.j_odd and s > 1:
        exp += parity([pi[v] - 1 for v in range(1, s + 1)])
    if reg.n_odd and graph.t > 1:
        exp += parity([pi[v] - 1 - s for v in range(s + 1, graph.n_vertices + 1)])

    labeled: dict[tuple, list] = {}
    for kind_id, kind in ((0, THETA), (1, ETA)):
        for e in graph.edges(kind):
            a, b = pi[e.p], pi[e.q]
            if e.label is None:
                if a > b:
                    exp += 1
            else:
                cls = (THETA, ETA) if reg.shared_labels else (kind,)
                labeled.setdefault(cls, []).append(
                    ((kind_id, (a, b) if a < b else (b, a)), e.label)
                )
    for entries in labeled.values():
        entries.sort()
        # new label of rank r is r+1; old label -> new label
        perm = [0] * len(entries)
        for rank, (_, old) in enumerate(entries):
            perm[old - 1] = rank
        exp += parity(perm)

    loops = [((pi[x.vertex], 0), x) for x in graph.small_loops] + [
        ((pi[x.vertex], 1), x) for x in graph.double_loops
    ]
    if loops:
        loops.sort(key=lambda item: item[0])
        perm = [0] * len(loops)
        kinds = [0] * len(loops)
        for rank, ((_, kind), lp) in enumerate(loops):
            perm[lp.label - 1] = rank
            kinds[lp.label - 1] = kind
            if lp.sign < 0:
                exp += 1
        exp += loop_permutation_exponent(perm, kinds)
    return exp


def _form_from_key(graph: DecoratedGraph, key: Key) -> DecoratedGraph:
    reg = graph.regime
    _, _, th, et, lp = key
    theta = []
    eta = []
    next_label = 1
    for kind, pairs, out in ((THETA, th, theta), (ETA, et, eta)):
        if reg.oriented(kind):
            out.extend(Edge(a, b) for a, b in pairs)
        else:
            start = next_label if reg.shared_labels else 1
            out.extend(Edge(a, b, start + i) for i, (a, b) in enumerate(pairs))
            next_label = start + len(pairs)
    small = [Loop(v, i + 1) for i, (v, kind) in enumerate(lp) if kind == 0]
    double = [Loop(v, i + 1) for i, (v, kind) in enumerate(lp) if kind == 1]
    return graph.replace(theta=theta, eta=eta, small_loops=small, double_loops=double)


def _duplicate_double_loops(graph: DecoratedGraph) -> bool:
    # swapping two double loops at one vertex is an odd automorphism
    verts = [lp.vertex for lp in graph.double_loops]
    return len(verts) != len(set(verts))


def canonical_key(graph: DecoratedGraph) -> Key:
    """Isomorphism-class key ignoring decorations and signs."""
    classes = _refine(graph)
    return min(_key(graph, pi) for pi in _relabelings(classes, graph.n_vertices))


def canonicalize(graph: DecoratedGraph, check: bool = True) -> Optional[Canonical]:
    """Canonical representative of ``graph``'s class, or ``None`` when it is zero.

    Returns a :class:`Canonical` ``c`` with ``graph == c.sign * c.form``.
    """
    if check and not is_admissible(graph):
        raise ValueError(f"canonicalize needs an admissible graph: {graph}")
    if is_relation_zero(graph) or _duplicate_double_loops(graph):
        return None
    classes = _refine(graph)
    best_key = None
    best_exp = 0
    for pi in _relabelings(classes, graph.n_vertices):
        key = _key(graph, pi)
        if best_key is None or key < best_key:
            best_key = key
            best_exp = _sign_exponent(graph, pi) & 1
        elif key == best_key:
            if (_sign_exponent(graph, pi) & 1) != best_exp:
                return None
    form = _form_from_key(graph, best_key)
    return Canonical(form, -1 if best_exp else 1, best_key)

"""Decorated graphs for the complexes of long j-knots.

A graph has i-vertices ``1..s`` (living on the knot) and e-vertices
``s+1..s+t`` (free in R^n).  Theta-edges join arbitrary vertices, eta-edges
join i-vertices only.  Small loops and double loops sit on i-vertices.

Which edges are oriented and which are labeled depends only on the parities
of ``n`` and ``j``; see :class:`ParityRegime`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

THETA = "theta"
ETA = "eta"
SMALL = "small"
DOUBLE = "double"


def parity(perm: Sequence[int]) -> int:
    """Return 0 for an even permutation of ``range(len(perm))``, 1 for odd."""
    seen = [False] * len(perm)
    transpositions = 0
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = perm[k]
            length += 1
        transpositions += length - 1
    return transpositions & 1


@dataclass(frozen=True)
class ParityRegime:
    n_odd: bool
    j_odd: bool

    @classmethod
    def from_dims(cls, n: int, j: int) -> "ParityRegime":
        return cls(bool(n % 2), bool(j % 2))

    @classmethod
    def from_string(cls, text: str) -> "ParityRegime":
        """Parse ``"n=even,j=odd"`` (commas, spaces or semicolons between)."""
        parts = text.replace(",", " ").replace(";", " ").split()
        values = {}
        for part in parts:
            key, _, val = part.partition("=")
            if key not in ("n", "j") or val not in ("even", "odd"):
                raise ValueError(f"bad regime component {part!r}")
            values[key] = val == "odd"
        if set(values) != {"n", "j"}:
            raise ValueError(f"regime needs both n and j: {text!r}")
        return cls(values["n"], values["j"])

    def __str__(self) -> str:
        return f"n={'odd' if self.n_odd else 'even'} j={'odd' if self.j_odd else 'even'}"

    @property
    def theta_oriented(self) -> bool:
        return self.n_odd

    @property
    def eta_oriented(self) -> bool:
        return self.j_odd

    @property
    def shared_labels(self) -> bool:
        # both kinds labeled: one label sequence over all non-loop edges
        return not self.n_odd and not self.j_odd

    @property
    def small_loops_allowed(self) -> bool:
        return self.n_odd == self.j_odd

    @property
    def double_loops_allowed(self) -> bool:
        return not self.n_odd

    @property
    def small_loop_signed(self) -> bool:
        return self.n_odd and self.j_odd

    @property
    def double_loop_signed(self) -> bool:
        return not self.n_odd and self.j_odd

    def oriented(self, kind: str) -> bool:
        return self.theta_oriented if kind == THETA else self.eta_oriented

    def loop_signed(self, kind: str) -> bool:
        return self.small_loop_signed if kind == SMALL else self.double_loop_signed

    def label_classes(self) -> list[tuple[str, ...]]:
        """Groups of edge kinds sharing one label sequence."""
        if self.shared_labels:
            return [(THETA, ETA)]
        return [(kind,) for kind in (THETA, ETA) if not self.oriented(kind)]


ALL_REGIMES = tuple(ParityRegime(n, j) for n in (False, True) for j in (False, True))


@dataclass(frozen=True, order=True)
class Edge:
    """A non-loop edge.  ``label is None`` means oriented ``p -> q``."""

    p: int
    q: int
    label: Optional[int] = None

    @property
    def pair(self) -> tuple[int, int]:
        return (self.p, self.q) if self.p < self.q else (self.q, self.p)


@dataclass(frozen=True, order=True)
class Loop:
    vertex: int
    label: int
    sign: int = 1


@dataclass(frozen=True)
class Grading:
    k: int
    l: int
    g: int

    def __str__(self) -> str:
        return f"k={self.k} l={self.l} g={self.g}"


@dataclass(frozen=True)
class DecoratedGraph:
    regime: ParityRegime
    s: int
    t: int
    theta: tuple[Edge, ...] = ()
    eta: tuple[Edge, ...] = ()
    small_loops: tuple[Loop, ...] = ()
    double_loops: tuple[Loop, ...] = ()

    def __post_init__(self):
        for name in ("theta", "eta", "small_loops", "double_loops"):
            object.__setattr__(self, name, tuple(getattr(self, name)))

    @property
    def n_vertices(self) -> int:
        return self.s + self.t

    @property
    def u(self) -> int:
        return len(self.small_loops) + len(self.double_loops)

    def is_internal(self, v: int) -> bool:
        return 1 <= v <= self.s

    def edges(self, kind: str) -> tuple[Edge, ...]:
        return self.theta if kind == THETA else self.eta

    def loops(self, kind: str) -> tuple[Loop, ...]:
        return self.small_loops if kind == SMALL else self.double_loops

    def replace(self, **changes) -> "DecoratedGraph":
        fields_ = dict(
            regime=self.regime, s=self.s, t=self.t, theta=self.theta, eta=self.eta,
            small_loops=self.small_loops, double_loops=self.double_loops,
        )
        fields_.update(changes)
        return DecoratedGraph(**fields_)

    def __str__(self) -> str:
        from .grammar import format_graph

        return format_graph(self)


@dataclass(frozen=True)
class SignedGraph:
    graph: DecoratedGraph
    sign: int


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def _is_bijection(labels: Iterable[int], count: int) -> bool:
    return sorted(labels) == list(range(1, count + 1))


def validate(graph: DecoratedGraph) -> ValidationReport:
    """Check every structural invariant and report all violations."""
    report = ValidationReport()
    bad = report.violations.append
    reg = graph.regime
    s, t = graph.s, graph.t
    if s < 0 or t < 0:
        bad("negative vertex count")
    nv = s + t

    for kind in (THETA, ETA):
        for e in graph.edges(kind):
            if not (1 <= e.p <= nv and 1 <= e.q <= nv):
                bad(f"{kind} endpoint out of range in {e.p},{e.q}")
                continue
            if e.p == e.q:
                bad(f"{kind} edge {e.p},{e.q} is a loop")
            if kind == ETA and (e.p > s or e.q > s):
                bad("η endpoint external")
            if reg.oriented(kind) and e.label is not None:
                bad(f"{kind} edge {e.p},{e.q} must be oriented, not labeled")
            if not reg.oriented(kind) and e.label is None:
                bad(f"{kind} edge {e.p},{e.q} must be labeled")

    for kinds in reg.label_classes():
        labels = [e.label for kind in kinds for e in graph.edges(kind) if e.label is not None]
        count = sum(len(graph.edges(kind)) for kind in kinds)
        if len(labels) == count and not _is_bijection(labels, count):
            bad("labels not a bijection")

    for kind in (SMALL, DOUBLE):
        for loop in graph.loops(kind):
            if not 1 <= loop.vertex <= s:
                bad(f"{kind} loop at non-internal vertex {loop.vertex}")
            if loop.sign not in (1, -1):
                bad(f"{kind} loop sign {loop.sign} not ±1")
            elif loop.sign == -1 and not reg.loop_signed(kind):
                bad(f"{kind} loop sign must be +1 in regime {reg}")
    loop_labels = [lp.label for lp in graph.small_loops + graph.double_loops]
    if not _is_bijection(loop_labels, len(loop_labels)):
        bad("loop labels not a bijection")
    return report


def theta_valence(graph: DecoratedGraph) -> list[int]:
    """Theta-valence per vertex (index 0 unused); loops count once."""
    val = [0] * (graph.n_vertices + 1)
    for e in graph.theta:
        val[e.p] += 1
        val[e.q] += 1
    for loop in graph.small_loops + graph.double_loops:
        val[loop.vertex] += 1
    return val


def is_admissible(graph: DecoratedGraph) -> bool:
    val = theta_valence(graph)
    for v in range(1, graph.s + 1):
        if val[v] < 1:
            return False
    for v in range(graph.s + 1, graph.n_vertices + 1):
        if val[v] < 3:
            return False
    return True


def vertex_degree(graph: DecoratedGraph) -> list[int]:
    """Theta-degree per vertex (index 0 unused) with each loop counted twice.

    The degrees sum to twice the number of theta-edges, so
    ``l = sum(deg - 1 over i-vertices) + sum(deg - 3 over e-vertices)``.
    """
    deg = theta_valence(graph)
    for loop in graph.small_loops + graph.double_loops:
        deg[loop.vertex] += 1
    return deg


def is_non_degenerate(graph: DecoratedGraph) -> bool:
    """Every i-vertex meets one theta-edge end, every e-vertex three."""
    val = vertex_degree(graph)
    return all(val[v] == 1 for v in range(1, graph.s + 1)) and all(
        val[v] == 3 for v in range(graph.s + 1, graph.n_vertices + 1)
    )


def components(graph: DecoratedGraph) -> int:
    """Connected components of the graph with loops removed (isolated vertices count)."""
    parent = list(range(graph.n_vertices + 1))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for e in graph.theta + graph.eta:
        ra, rb = find(e.p), find(e.q)
        if ra != rb:
            parent[ra] = rb
    return len({find(v) for v in range(1, graph.n_vertices + 1)})


def grading(graph: DecoratedGraph) -> Grading:
    n_theta = len(graph.theta) + len(graph.small_loops) + len(graph.double_loops)
    k = n_theta - graph.t
    l = 2 * n_theta - 3 * graph.t - graph.s
    g = (
        len(graph.theta) + len(graph.eta) - graph.n_vertices
        + components(graph) + len(graph.double_loops)
    )
    return Grading(k, l, g)


def has_multi_edge(graph: DecoratedGraph) -> bool:
    for kind in (THETA, ETA):
        pairs = [e.pair for e in graph.edges(kind)]
        if len(pairs) != len(set(pairs)):
            return True
    return False


def is_relation_zero(graph: DecoratedGraph) -> bool:
    reg = graph.regime
    if has_multi_edge(graph):
        return True
    if graph.small_loops and not reg.small_loops_allowed:
        return True
    if graph.double_loops and not reg.double_loops_allowed:
        return True
    return False


def multiple_pairs(graph: DecoratedGraph) -> set[tuple[int, int]]:
    """Vertex pairs joined by both a theta-edge and an eta-edge."""
    return {e.pair for e in graph.theta} & {e.pair for e in graph.eta}


# --- the symmetry group acting on decorations -------------------------------


@dataclass(frozen=True)
class Symmetry:
    """One element of the relabeling group.

    ``vertex_perm[v-1]`` is the new label of vertex ``v`` (i-vertices must map
    to i-vertices).  ``label_perms`` maps each labeled class (a tuple of edge
    kinds) to a permutation of its labels, again as ``new = perm[old-1]``.
    """

    vertex_perm: tuple[int, ...]
    reversed_edges: frozenset = frozenset()  # {(kind, index)}
    label_perms: tuple = ()  # ((kinds, perm), ...)
    loop_perm: tuple[int, ...] = ()
    loop_flips: frozenset = frozenset()  # loop labels (before relabeling)


def loop_permutation_exponent(perm: list[int], kinds: list[int]) -> int:
    """Sign exponent of relabeling loops by ``perm`` (0-based, ``new = perm[old]``).

    ``kinds[i]`` is 0 for a small loop and 1 for a double loop.  Only the
    relative order of the double loops carries a sign; small loops are
    unordered.
    """
    idx = [i for i, kind in enumerate(kinds) if kind == 1]
    rank = {v: r for r, v in enumerate(sorted(perm[i] for i in idx))}
    return parity([rank[perm[i]] for i in idx])


def loop_kinds(graph: DecoratedGraph) -> list[int]:
    """Kind (0 small, 1 double) of the loop with label ``i + 1``."""
    kinds = [0] * graph.u
    for loop in graph.double_loops:
        kinds[loop.label - 1] = 1
    return kinds


def apply_symmetry(graph: DecoratedGraph, sym: Symmetry) -> tuple[DecoratedGraph, int]:
    """Return ``(image, sign)`` with ``image = sign * graph`` in the quotient space."""
    reg = graph.regime
    s = graph.s
    vp = sym.vertex_perm
    if sorted(vp[:s]) != list(range(1, s + 1)):
        raise ValueError("vertex permutation must preserve i-vertices")
    sigma = [vp[v] - 1 for v in range(s)]
    tau = [vp[v] - 1 - s for v in range(s, graph.n_vertices)]
    sign_exp = int(reg.j_odd) * parity(sigma) + int(reg.n_odd) * parity(tau)

    lperms = dict(sym.label_perms)
    for kinds, perm in lperms.items():
        sign_exp += parity([x - 1 for x in perm])

    new_edges = {}
    for kind in (THETA, ETA):
        out = []
        perm = next((p for ks, p in lperms.items() if kind in ks), None)
        for idx, e in enumerate(graph.edges(kind)):
            p, q = vp[e.p - 1], vp[e.q - 1]
            label = e.label
            if label is None:
                if (kind, idx) in sym.reversed_edges:
                    p, q = q, p
                    sign_exp += 1
            elif perm is not None:
                label = perm[label - 1]
            out.append(Edge(p, q, label))
        new_edges[kind] = tuple(out)

    if sym.loop_perm:
        sign_exp += loop_permutation_exponent([x - 1 for x in sym.loop_perm], loop_kinds(graph))
    new_loops = {}
    for kind in (SMALL, DOUBLE):
        out = []
        for loop in graph.loops(kind):
            sgn = loop.sign
            if loop.label in sym.loop_flips:
                if not reg.loop_signed(kind):
                    raise ValueError(f"{kind} loop signs are fixed in regime {reg}")
                sgn = -sgn
                sign_exp += 1
            label = sym.loop_perm[loop.label - 1] if sym.loop_perm else loop.label
            out.append(Loop(vp[loop.vertex - 1], label, sgn))
        new_loops[kind] = tuple(out)

    image = graph.replace(
        theta=new_edges[THETA], eta=new_edges[ETA],
        small_loops=new_loops[SMALL], double_loops=new_loops[DOUBLE],
    )
    return image, -1 if sign_exp & 1 else 1


def random_symmetry(graph: DecoratedGraph, rng: random.Random) -> Symmetry:
    reg = graph.regime
    internal = list(range(1, graph.s + 1))
    external = list(range(graph.s + 1, graph.n_vertices + 1))
    rng.shuffle(internal)
    rng.shuffle(external)
    reversed_edges = frozenset(
        (kind, i)
        for kind in (THETA, ETA)
        for i, e in enumerate(graph.edges(kind))
        if e.label is None and rng.random() < 0.5
    )
    label_perms = []
    for kinds in reg.label_classes():
        count = sum(len(graph.edges(kind)) for kind in kinds)
        perm = list(range(1, count + 1))
        rng.shuffle(perm)
        label_perms.append((kinds, tuple(perm)))
    loop_perm = list(range(1, graph.u + 1))
    rng.shuffle(loop_perm)
    flips = frozenset(
        lp.label
        for kind in (SMALL, DOUBLE)
        for lp in graph.loops(kind)
        if reg.loop_signed(kind) and rng.random() < 0.5
    )
    return Symmetry(
        tuple(internal + external), reversed_edges, tuple(label_perms), tuple(loop_perm), flips
    )

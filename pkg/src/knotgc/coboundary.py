"""Edge contraction and the coboundary operator on graph vectors."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Union

from .canon import canonicalize
from .graph import (
    DOUBLE, ETA, SMALL, THETA, DecoratedGraph, Edge, Loop, SignedGraph, multiple_pairs,
)

EdgeRef = tuple  # (kind, index into graph.theta / graph.eta)
Number = Union[int, Fraction]


def form_key(form: DecoratedGraph) -> tuple:
    """Serialization key of a canonical form (the order used for bases)."""
    th = tuple(sorted(e.pair for e in form.theta))
    et = tuple(sorted(e.pair for e in form.eta))
    lp = tuple(sorted([(x.vertex, 0) for x in form.small_loops] + [(x.vertex, 1) for x in form.double_loops]))
    return (form.s, form.t, th, et, lp)


class GraphVector:
    """Finite rational combination of canonical graphs."""

    def __init__(self, terms: Optional[dict] = None):
        self._terms: dict[DecoratedGraph, Fraction] = {}
        if terms:
            for form, coef in terms.items():
                self._add_form(form, Fraction(coef))

    @classmethod
    def from_graph(cls, graph: DecoratedGraph, coef: Number = 1) -> "GraphVector":
        v = cls()
        v.add(graph, coef)
        return v

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[Number, DecoratedGraph]]) -> "GraphVector":
        v = cls()
        for coef, graph in terms:
            v.add(graph, coef)
        return v

    def _add_form(self, form: DecoratedGraph, coef: Fraction) -> None:
        total = self._terms.get(form, 0) + coef
        if total:
            self._terms[form] = total
        else:
            self._terms.pop(form, None)

    def add(self, graph: DecoratedGraph, coef: Number = 1) -> None:
        """Add ``coef * graph``, canonicalizing ``graph`` first."""
        c = canonicalize(graph)
        if c is not None and coef:
            self._add_form(c.form, Fraction(coef) * c.sign)

    def items(self) -> list[tuple[DecoratedGraph, Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: form_key(kv[0]))

    def __iter__(self) -> Iterator[DecoratedGraph]:
        return iter(form for form, _ in self.items())

    def __getitem__(self, form: DecoratedGraph) -> Fraction:
        return self._terms.get(form, Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        return isinstance(other, GraphVector) and self._terms == other._terms

    def __add__(self, other: "GraphVector") -> "GraphVector":
        out = GraphVector()
        out._terms = dict(self._terms)
        for form, coef in other._terms.items():
            out._add_form(form, coef)
        return out

    def __neg__(self) -> "GraphVector":
        return self * -1

    def __sub__(self, other: "GraphVector") -> "GraphVector":
        return self + (-other)

    def __mul__(self, scalar: Number) -> "GraphVector":
        out = GraphVector()
        if scalar:
            out._terms = {f: c * scalar for f, c in self._terms.items()}
        return out

    __rmul__ = __mul__

    def to_json_obj(self) -> list[dict]:
        return [
            {"coefficient": f"{c.numerator}/{c.denominator}", "graph": str(f)}
            for f, c in self.items()
        ]

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json(cls, data: Union[str, list]) -> "GraphVector":
        from .grammar import parse_graph

        if isinstance(data, str):
            data = json.loads(data)
        return cls.from_terms(
            (Fraction(item["coefficient"]), parse_graph(item["graph"])) for item in data
        )

    def __repr__(self) -> str:
        if not self._terms:
            return "GraphVector(0)"
        return "GraphVector(" + " + ".join(f"({c})[{f}]" for f, c in self.items()) + ")"


def contraction_type(graph: DecoratedGraph, edge: EdgeRef) -> int:
    """Type 1-4 of the contraction of a non-loop edge, or 0 when undefined."""
    kind, idx = edge
    e = graph.edges(kind)[idx]
    multi = e.pair in multiple_pairs(graph)
    if kind == ETA:
        return 4 if multi else 1
    if not (graph.is_internal(e.p) and graph.is_internal(e.q)):
        return 2
    return 0 if multi else 3


def _odd_rule(e: Edge) -> int:
    return e.q if e.p < e.q else e.p + 1


def _loop_rule(e: Edge) -> int:
    # the orientation of e survives as the sign of the new loop
    return e.q if e.p < e.q else e.p


def _partner(graph: DecoratedGraph, e: Edge) -> Edge:
    return next(f for f in graph.theta if f.pair == e.pair)


def tau(graph: DecoratedGraph, edge: EdgeRef) -> int:
    """Sign exponent of the term of ``edge`` in the coboundary."""
    kind, idx = edge
    e = graph.edges(kind)[idx]
    ctype = contraction_type(graph, edge)
    if ctype == 0:
        raise ValueError("contraction of the theta-edge of a multiple pair is undefined")
    reg = graph.regime
    if reg.n_odd and reg.j_odd:
        return _loop_rule(e) if ctype == 3 else _odd_rule(e)
    if reg.shared_labels:
        if ctype == 4:
            a, b = e.label, _partner(graph, e).label
            return a + b + (a < b) + len(graph.theta) + len(graph.eta)
        return e.label
    if not reg.n_odd:  # n even, j odd
        if ctype == 1:
            return _odd_rule(e)
        if ctype == 2:
            return e.label + graph.s + 1
        if ctype == 4:
            return _loop_rule(e) + _partner(graph, e).label + graph.t
    else:  # n odd, j even
        if ctype == 1:
            return e.label + graph.t + 1
        if ctype == 2:
            return _odd_rule(e) + graph.s + 1
    raise ValueError(f"no sign rule: type {ctype} contraction vanishes in regime {reg}")


def contract_edge(graph: DecoratedGraph, edge: EdgeRef) -> Optional[SignedGraph]:
    """Return ``(-1)^tau * graph/edge`` as a :class:`SignedGraph`, or ``None`` (zero)."""
    kind, idx = edge
    if kind not in (THETA, ETA):
        raise ValueError(f"loops cannot be contracted: {kind}")
    e = graph.edges(kind)[idx]
    reg = graph.regime
    ctype = contraction_type(graph, edge)
    if ctype == 0:
        raise ValueError("contraction of the theta-edge of a multiple pair is undefined")
    if ctype == 3 and not reg.small_loops_allowed:
        return None
    if ctype == 4 and not reg.double_loops_allowed:
        return None
    exponent = tau(graph, edge)

    lo, hi = e.pair

    def vmap(v: int) -> int:
        if v == hi:
            return lo
        return v - 1 if v > hi else v

    removed = {(kind, idx)}
    if ctype == 4:
        partner = next(i for i, f in enumerate(graph.theta) if f.pair == e.pair)
        removed.add((THETA, partner))

    kept: dict[str, list[Edge]] = {}
    for k in (THETA, ETA):
        kept[k] = [
            Edge(vmap(f.p), vmap(f.q), f.label)
            for i, f in enumerate(graph.edges(k))
            if (k, i) not in removed
        ]
    for kinds in reg.label_classes():
        labels = sorted(f.label for k in kinds for f in kept[k])
        renumber = {old: new for new, old in enumerate(labels, start=1)}
        for k in kinds:
            kept[k] = [Edge(f.p, f.q, renumber[f.label]) for f in kept[k]]

    loops = {
        k: [Loop(vmap(lp.vertex), lp.label, lp.sign) for lp in graph.loops(k)]
        for k in (SMALL, DOUBLE)
    }
    if ctype in (3, 4):
        loop_kind = SMALL if ctype == 3 else DOUBLE
        sign = 1
        if reg.loop_signed(loop_kind) and e.label is None and e.p > e.q:
            sign = -1
        loops[loop_kind].append(Loop(lo, graph.u + 1, sign))

    s, t = graph.s, graph.t
    if ctype == 2:
        t -= 1
    else:
        s -= 1
    result = DecoratedGraph(
        reg, s, t, kept[THETA], kept[ETA], loops[SMALL], loops[DOUBLE]
    )
    return SignedGraph(result, -1 if exponent & 1 else 1)


def contractible_edges(graph: DecoratedGraph) -> list[EdgeRef]:
    """Non-loop edges whose contraction is defined (theta of a multiple pair excluded)."""
    return [
        (kind, i)
        for kind in (THETA, ETA)
        for i in range(len(graph.edges(kind)))
        if contraction_type(graph, (kind, i)) != 0
    ]


def delta(graph: DecoratedGraph) -> GraphVector:
    out = GraphVector()
    for edge in contractible_edges(graph):
        sg = contract_edge(graph, edge)
        if sg is None:
            continue
        c = canonicalize(sg.graph, check=False)
        if c is not None:
            out._add_form(c.form, Fraction(sg.sign * c.sign))
    return out


def delta_vec(v: GraphVector) -> GraphVector:
    out = GraphVector()
    for form, coef in v.items():
        out = out + delta(form) * coef
    return out

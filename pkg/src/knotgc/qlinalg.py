"""Exact sparse linear algebra over the rationals and graph cohomology.

Elimination is fraction-free: every row is scaled to a primitive integer
vector, a row update ``r <- p*r - a*pivot`` stays integral, and the row content
is divided out after each update so entries stay small.  The pivot in each
column is the candidate row whose entry has the smallest absolute value, ties
broken by row position, so results are identical from run to run.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Optional, Sequence

from .coboundary import GraphVector, delta
from .enumeration import enumerate_graphs
from .grammar import format_graph, parse_graph
from .graph import DecoratedGraph, ParityRegime

Vector = tuple  # dense tuple of Fraction


class RationalMatrix:
    """Sparse matrix with exact rational entries and optional graph bases."""

    def __init__(
        self,
        n_rows: int,
        n_cols: int,
        entries: Optional[dict] = None,
        row_basis: Sequence[DecoratedGraph] = (),
        col_basis: Sequence[DecoratedGraph] = (),
    ):
        if row_basis and len(row_basis) != n_rows:
            raise ValueError("row basis length does not match the row count")
        if col_basis and len(col_basis) != n_cols:
            raise ValueError("column basis length does not match the column count")
        self.n_rows = n_rows
        self.n_cols = n_cols
        self.row_basis = tuple(row_basis)
        self.col_basis = tuple(col_basis)
        self.entries: dict[tuple[int, int], Fraction] = {}
        for (r, c), value in (entries or {}).items():
            if not (0 <= r < n_rows and 0 <= c < n_cols):
                raise ValueError(f"entry ({r}, {c}) outside a {n_rows}x{n_cols} matrix")
            value = Fraction(value)
            if value:
                self.entries[(r, c)] = value

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RationalMatrix":
        n_rows = len(rows)
        n_cols = len(rows[0]) if rows else 0
        if any(len(row) != n_cols for row in rows):
            raise ValueError("ragged rows")
        entries = {(r, c): v for r, row in enumerate(rows) for c, v in enumerate(row) if v}
        return cls(n_rows, n_cols, entries)

    @property
    def shape(self) -> tuple[int, int]:
        return self.n_rows, self.n_cols

    def to_rows(self) -> list[list[Fraction]]:
        rows = [[Fraction(0)] * self.n_cols for _ in range(self.n_rows)]
        for (r, c), v in self.entries.items():
            rows[r][c] = v
        return rows

    def row_dicts(self) -> list[dict[int, Fraction]]:
        rows: list[dict[int, Fraction]] = [{} for _ in range(self.n_rows)]
        for (r, c), v in self.entries.items():
            rows[r][c] = v
        return rows

    def is_zero(self) -> bool:
        return not self.entries

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.n_cols != other.n_rows:
            raise ValueError(f"dimension mismatch: {self.shape} @ {other.shape}")
        by_row: dict[int, list[tuple[int, Fraction]]] = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        out: dict[tuple[int, int], Fraction] = {}
        for (r, k), a in self.entries.items():
            for c, b in by_row.get(k, ()):
                out[(r, c)] = out.get((r, c), 0) + a * b
        return RationalMatrix(
            self.n_rows, other.n_cols, out, self.row_basis, other.col_basis
        )

    def apply(self, vector: Sequence) -> Vector:
        if len(vector) != self.n_cols:
            raise ValueError(f"dimension mismatch: {self.shape} applied to length {len(vector)}")
        out = [Fraction(0)] * self.n_rows
        for (r, c), v in self.entries.items():
            if vector[c]:
                out[r] += v * vector[c]
        return tuple(out)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RationalMatrix)
            and self.shape == other.shape
            and self.entries == other.entries
        )

    def __repr__(self) -> str:
        return f"RationalMatrix({self.n_rows}x{self.n_cols}, nnz={len(self.entries)})"

    def to_json_obj(self) -> dict:
        return {
            "rows": self.n_rows,
            "cols": self.n_cols,
            "row_basis": [format_graph(g) for g in self.row_basis],
            "col_basis": [format_graph(g) for g in self.col_basis],
            "entries": [
                [r, c, f"{v.numerator}/{v.denominator}"]
                for (r, c), v in sorted(self.entries.items())
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json(cls, data) -> "RationalMatrix":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(
            data["rows"],
            data["cols"],
            {(r, c): Fraction(v) for r, c, v in data["entries"]},
            [parse_graph(s) for s in data["row_basis"]],
            [parse_graph(s) for s in data["col_basis"]],
        )


# --- elimination ----------------------------------------------------------------


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = reduce(math.gcd, row.values(), 0)
    if g > 1:
        row = {c: v // g for c, v in row.items()}
    return row


def _integer_rows(m: RationalMatrix) -> list[dict[int, int]]:
    rows = []
    for row in m.row_dicts():
        if not row:
            continue
        scale = reduce(lambda a, b: a * b // math.gcd(a, b), (v.denominator for v in row.values()), 1)
        rows.append(_primitive({c: int(v * scale) for c, v in row.items()}))
    return rows


def _echelon(rows: list[dict[int, int]]) -> list[tuple[int, dict[int, int]]]:
    """Row echelon form as ``[(pivot column, row)]`` with increasing pivot columns."""
    active = [r for r in rows if r]
    columns = sorted({c for r in active for c in r})
    echelon = []
    for col in columns:
        candidates = [i for i, r in enumerate(active) if col in r]
        if not candidates:
            continue
        best = min(candidates, key=lambda i: (abs(active[i][col]), i))
        pivot = active[best]
        p = pivot[col]
        rest = []
        for i, r in enumerate(active):
            if i == best:
                continue
            a = r.get(col)
            if a is None:
                rest.append(r)
                continue
            updated = {c: p * v for c, v in r.items()}
            for c, v in pivot.items():
                w = updated.get(c, 0) - a * v
                if w:
                    updated[c] = w
                else:
                    updated.pop(c, None)
            if updated:
                rest.append(_primitive(updated))
        echelon.append((col, pivot))
        active = rest
    return echelon


def rank(m: RationalMatrix) -> int:
    return len(_echelon(_integer_rows(m)))


def kernel_basis(m: RationalMatrix) -> list[Vector]:
    """Basis of the right kernel; one vector per non-pivot column, in column order."""
    echelon = _echelon(_integer_rows(m))
    pivots = [col for col, _ in echelon]
    pivot_set = set(pivots)
    # back substitution to reduced form, exact
    reduced: list[tuple[int, dict[int, Fraction]]] = []
    for col, row in reversed(echelon):
        p = row[col]
        r = {c: Fraction(v, p) for c, v in row.items()}
        for pcol, prow in reduced:
            a = r.pop(pcol, None)
            if a:
                for c, v in prow.items():
                    if c == pcol:
                        continue
                    w = r.get(c, 0) - a * v
                    if w:
                        r[c] = w
                    else:
                        r.pop(c, None)
        reduced.append((col, r))
    basis = []
    for free in range(m.n_cols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * m.n_cols
        vec[free] = Fraction(1)
        for pcol, r in reduced:
            a = r.get(free)
            if a:
                vec[pcol] = -a
        basis.append(tuple(vec))
    return basis


def in_image(m: RationalMatrix, vector: Sequence) -> bool:
    if len(vector) != m.n_rows:
        raise ValueError(f"dimension mismatch: vector of length {len(vector)} for {m.shape}")
    entries = dict(m.entries)
    for r, v in enumerate(vector):
        if v:
            entries[(r, m.n_cols)] = Fraction(v)
    augmented = RationalMatrix(m.n_rows, m.n_cols + 1, entries)
    return rank(augmented) == rank(m)


# --- graph complexes --------------------------------------------------------------


def basis(regime: ParityRegime, k: int, l: int, g: int) -> list[DecoratedGraph]:
    if l < 0 or k < 1 or 2 * k - l < 1:
        return []
    return enumerate_graphs(regime, k, l, g)


def delta_matrix(regime: ParityRegime, k: int, l: int, g: int) -> RationalMatrix:
    """Matrix of the coboundary from degree ``l`` to ``l + 1`` at order ``k``, genus ``g``."""
    cols = basis(regime, k, l, g)
    rows = basis(regime, k, l + 1, g)
    index = {form: i for i, form in enumerate(rows)}
    entries = {}
    for c, form in enumerate(cols):
        for image, coef in delta(form).items():
            try:
                entries[(index[image], c)] = coef
            except KeyError:
                raise RuntimeError(f"coboundary left the target basis: {image}") from None
    return RationalMatrix(len(rows), len(cols), entries, rows, cols)


def coordinates(vector: GraphVector, basis_forms: Sequence[DecoratedGraph]) -> Vector:
    index = {form: i for i, form in enumerate(basis_forms)}
    out = [Fraction(0)] * len(basis_forms)
    for form, coef in vector.items():
        if form not in index:
            raise ValueError(f"graph outside the basis: {form}")
        out[index[form]] = coef
    return tuple(out)


def to_graph_vector(coords: Iterable, basis_forms: Sequence[DecoratedGraph]) -> GraphVector:
    v = GraphVector()
    for coef, form in zip(coords, basis_forms):
        if coef:
            v._add_form(form, Fraction(coef))
    return v


def cocycle_basis(regime: ParityRegime, k: int, l: int, g: int) -> list[GraphVector]:
    m = delta_matrix(regime, k, l, g)
    return [to_graph_vector(vec, m.col_basis) for vec in kernel_basis(m)]


def cohomology_dim(regime: ParityRegime, k: int, l: int, g: int) -> int:
    m = delta_matrix(regime, k, l, g)
    cocycles = m.n_cols - rank(m)
    if l == 0:
        return cocycles
    return cocycles - rank(delta_matrix(regime, k, l - 1, g))


def in_cocycle_span(vector: GraphVector, regime: ParityRegime, k: int, l: int, g: int) -> bool:
    """True when ``vector`` is a combination of :func:`cocycle_basis` vectors."""
    cols = basis(regime, k, l, g)
    target = coordinates(vector, cols)
    spanning = cocycle_basis(regime, k, l, g)
    m = RationalMatrix(
        len(cols),
        len(spanning),
        {
            (r, c): coef
            for c, v in enumerate(spanning)
            for r, coef in enumerate(coordinates(v, cols))
            if coef
        },
    )
    return in_image(m, target)

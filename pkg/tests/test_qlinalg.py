from fractions import Fraction

import pytest

from knotgc import GraphVector, delta, parse_graph
from knotgc.graph import ALL_REGIMES, ParityRegime
from knotgc.named import EVEN_ODD, H_REGIMES, h_terms
from knotgc.qlinalg import (
    RationalMatrix, basis, cocycle_basis, cohomology_dim, coordinates, delta_matrix,
    in_cocycle_span, in_image, kernel_basis, rank, to_graph_vector,
)


def test_rank_and_kernel_small():
    m = RationalMatrix.from_rows([[1, 2], [2, 4]])
    assert rank(m) == 1
    assert kernel_basis(m) == [(Fraction(-2), Fraction(1))]


def test_identity():
    m = RationalMatrix.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert rank(m) == 3 and kernel_basis(m) == []


def test_rational_entries():
    m = RationalMatrix.from_rows([[Fraction(1, 2), Fraction(1, 3)], [Fraction(3, 2), 1]])
    assert rank(m) == 1
    (k,) = kernel_basis(m)
    assert not any(m.apply(k))


def test_kernel_vectors_are_annihilated():
    rows = [[3, 1, 4, 1, 5], [9, 2, 6, 5, 3], [12, 3, 10, 6, 8], [0, 0, 0, 0, 0]]
    m = RationalMatrix.from_rows(rows)
    assert rank(m) == 2
    ker = kernel_basis(m)
    assert len(ker) == 3
    assert all(not any(m.apply(v)) for v in ker)


def test_in_image():
    m = RationalMatrix.from_rows([[1, 0], [0, 1], [1, 1]])
    assert in_image(m, [1, 2, 3])
    assert not in_image(m, [1, 2, 4])


def test_matmul_and_shape_checks():
    a = RationalMatrix.from_rows([[1, 2], [3, 4]])
    b = RationalMatrix.from_rows([[0, 1], [1, 0]])
    assert (a @ b).to_rows() == [[2, 1], [4, 3]]
    with pytest.raises(ValueError):
        a @ RationalMatrix.from_rows([[1, 2, 3]])
    with pytest.raises(ValueError):
        RationalMatrix(1, 1, {(2, 0): 1})


def test_json_round_trip():
    m = delta_matrix(EVEN_ODD, 2, 0, 0)
    again = RationalMatrix.from_json(m.to_json())
    assert again == m
    assert again.row_basis == m.row_basis and again.col_basis == m.col_basis


def test_empty_grading_gives_empty_matrix():
    m = delta_matrix(EVEN_ODD, 1, 5, 0)
    assert m.shape == (0, 0) and rank(m) == 0


@pytest.mark.parametrize("regime", ALL_REGIMES, ids=str)
def test_consecutive_delta_matrices_compose_to_zero(regime):
    for l in range(0, 3):
        a = delta_matrix(regime, 3, l, 0)
        b = delta_matrix(regime, 3, l + 1, 0)
        assert (b @ a).is_zero()


def test_matrix_agrees_with_delta():
    m = delta_matrix(EVEN_ODD, 2, 0, 0)
    for c, form in enumerate(m.col_basis):
        col = [Fraction(0)] * m.n_cols
        col[c] = Fraction(1)
        image = to_graph_vector(m.apply(col), m.row_basis)
        assert image == delta(form)


@pytest.mark.parametrize("regime", H_REGIMES, ids=str)
def test_h_generates_degree_zero_cohomology(regime):
    assert cohomology_dim(regime, 2, 0, 0) == 1
    (z,) = cocycle_basis(regime, 2, 0, 0)
    h = GraphVector.from_terms(h_terms(regime))
    assert in_cocycle_span(h, regime, 2, 0, 0)
    forms = basis(regime, 2, 0, 0)
    hz, zz = coordinates(h, forms), coordinates(z, forms)
    ratio = {a / b for a, b in zip(hz, zz) if b}
    assert len(ratio) == 1


def test_non_cocycle_not_in_span():
    g = parse_graph("n=odd j=odd; iv=2; ev=0; theta: 1>2")
    regime = ParityRegime(True, True)
    assert cocycle_basis(regime, 1, 0, 0) == []
    assert not in_cocycle_span(GraphVector.from_graph(g), regime, 1, 0, 0)

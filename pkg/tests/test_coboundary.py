from fractions import Fraction

import pytest

from knotgc import GraphVector, canonicalize, contract_edge, delta, delta_vec, grading, parse_graph, tau
from knotgc.coboundary import contractible_edges
from knotgc.enumeration import enumerate_graphs
from knotgc.graph import ALL_REGIMES, ETA, THETA
from knotgc.named import EVEN_ODD, H_REGIMES, h1, h2, h_terms


def test_tau_odd_oriented():
    g = parse_graph("n=odd j=odd; iv=5; ev=0; theta: 2>5, 1>3, 4>3")
    assert tau(g, (THETA, 0)) == 5


def test_tau_labeled_to_external_vertex():
    assert tau(h2(EVEN_ODD), (THETA, 0)) == 5


def test_tau_even_even_type_one():
    g = parse_graph("n=even j=even; iv=3; ev=0; theta: 1-2#1, 2-3#2")
    assert tau(g, (THETA, 1)) == 2


def test_contract_eta_in_h1():
    g = h1(EVEN_ODD)
    assert tau(g, (ETA, 0)) == 3
    out = contract_edge(g, (ETA, 0))
    assert out.sign == -1
    assert out.graph == parse_graph("n=even j=odd; iv=3; ev=0; theta: 1-2#1, 2-3#2")


def test_contract_to_forbidden_small_loop_is_zero():
    assert contract_edge(h1(EVEN_ODD), (THETA, 0)) is None


def test_contract_theta_to_small_loop_sign():
    g = parse_graph("n=odd j=odd; iv=3; ev=0; theta: 3>1, 2>3")
    out = contract_edge(g, (THETA, 0))
    assert out.graph.small_loops[0].sign == -1
    assert tau(g, (THETA, 0)) == 3


def test_small_loop_graph_is_closed():
    g = parse_graph("n=odd j=odd; iv=1; ev=0; sloop: @1#1+")
    assert contractible_edges(g) == []
    assert not delta(g)


def test_delta_of_edge_hits_small_loop():
    g = parse_graph("n=odd j=odd; iv=2; ev=0; theta: 1>2")
    d = delta(g)
    assert len(d) == 1
    form, coef = d.items()[0]
    assert form == parse_graph("n=odd j=odd; iv=1; ev=0; sloop: @1#1+")
    assert abs(coef) == 1
    assert not delta_vec(d)


@pytest.mark.parametrize("regime", H_REGIMES, ids=str)
def test_h_is_cocycle(regime):
    assert not delta_vec(GraphVector.from_terms(h_terms(regime)))


def test_h_pieces_are_not_cocycles_alone():
    assert delta(h1(EVEN_ODD))
    assert delta(h2(EVEN_ODD))


@pytest.mark.parametrize("regime", ALL_REGIMES, ids=str)
def test_delta_squared_small(regime):
    for l in range(0, 2):
        for g in enumerate_graphs(regime, 2, l):
            assert not delta_vec(delta(g))


@pytest.mark.parametrize("regime", ALL_REGIMES, ids=str)
def test_delta_raises_degree(regime):
    for g in enumerate_graphs(regime, 2, 0):
        before = grading(g)
        for form in delta(g):
            after = grading(form)
            assert (after.k, after.l, after.g) == (before.k, before.l + 1, before.g)


def test_vector_arithmetic_and_json():
    a = GraphVector.from_graph(h1(EVEN_ODD), Fraction(1, 2))
    b = GraphVector.from_graph(h2(EVEN_ODD), 3)
    v = a + b - a
    assert v == b
    assert (v * 0).is_zero()
    assert GraphVector.from_json(v.to_json()) == v
    assert -(-v) == v


def test_vector_canonicalizes_terms():
    g = parse_graph("n=even j=odd; iv=3; ev=1; theta: 1-4#2, 2-4#1, 3-4#3")
    v = GraphVector.from_graph(g) + GraphVector.from_graph(h2(EVEN_ODD))
    assert v.is_zero()
    assert canonicalize(g).sign == -1

import pytest

from knotgc import canonicalize, format_graph, grading, parse_graph
from knotgc.enumeration import enumerate_graphs, enumerate_oracle
from knotgc.graph import ALL_REGIMES, ParityRegime
from knotgc.named import EVEN_ODD, h1, h2

ODD_ODD = ParityRegime(True, True)


def test_first_order_odd_odd():
    forms = enumerate_graphs(ODD_ODD, 1, 0)
    assert [format_graph(f) for f in forms] == ["n=odd j=odd; iv=2; ev=0; theta: 1>2"]


@pytest.mark.parametrize("regime", ALL_REGIMES, ids=str)
def test_first_order_has_no_external_vertices(regime):
    assert all(f.t == 0 for f in enumerate_graphs(regime, 1, 0))


def test_single_small_loop_class():
    forms = enumerate_graphs(ODD_ODD, 1, 1)
    assert forms == [parse_graph("n=odd j=odd; iv=1; ev=0; sloop: @1#1+")]
    assert enumerate_oracle(ODD_ODD, 1, 1) == 1


def test_h_pieces_listed():
    forms = set(enumerate_graphs(EVEN_ODD, 2, 0, 0))
    assert canonicalize(h1(EVEN_ODD)).form in forms
    assert canonicalize(h2(EVEN_ODD)).form in forms


def test_empty_grading():
    assert enumerate_graphs(EVEN_ODD, 1, 2) == []
    assert enumerate_oracle(EVEN_ODD, 1, 2) == 0


@pytest.mark.parametrize("regime", ALL_REGIMES, ids=str)
def test_outputs_are_canonical_and_graded(regime):
    for k, l in [(1, 0), (2, 0), (2, 1), (2, 2)]:
        for form in enumerate_graphs(regime, k, l):
            c = canonicalize(form)
            assert c is not None and c.form == form and c.sign == 1
            gr = grading(form)
            assert (gr.k, gr.l) == (k, l)


@pytest.mark.parametrize("regime", ALL_REGIMES, ids=str)
def test_genus_filter_partitions(regime):
    everything = enumerate_graphs(regime, 2, 1)
    by_genus = [f for g in range(0, 4) for f in enumerate_graphs(regime, 2, 1, g)]
    assert sorted(map(format_graph, everything)) == sorted(map(format_graph, by_genus))


@pytest.mark.parametrize("regime", ALL_REGIMES, ids=str)
@pytest.mark.parametrize("k, l", [(1, 0), (1, 1), (2, 0), (2, 1), (2, 2), (2, 3), (3, 2)])
def test_both_oracles_agree(regime, k, l):
    n = len(enumerate_graphs(regime, k, l))
    assert enumerate_oracle(regime, k, l, "burnside") == n
    assert enumerate_oracle(regime, k, l, "orbits") == n


def test_oracle_guard():
    with pytest.raises(ValueError):
        enumerate_oracle(EVEN_ODD, 3, 0)
    with pytest.raises(ValueError):
        enumerate_oracle(EVEN_ODD, 1, 0, "nope")

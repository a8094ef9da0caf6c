import random

import pytest
from hypothesis import given, settings, strategies as st

from knotgc import GraphSyntaxError, format_graph, parse_graph
from knotgc.named import EVEN_ODD, h2

from helpers import random_graph


def test_parse_h2():
    assert parse_graph("n=even j=odd; iv=3; ev=1; theta: 1-4#1, 2-4#2, 3-4#3") == h2(EVEN_ODD)


def test_compact_spacing_accepted():
    assert parse_graph("n=even j=odd; iv=3; ev=1; theta: 1-4#1,2-4#2,3-4#3") == h2(EVEN_ODD)


def test_small_loop_graph():
    g = parse_graph("n=odd j=odd; iv=1; ev=0; sloop: @1#1+")
    assert g.s == 1 and len(g.small_loops) == 1 and g.small_loops[0].sign == 1


def test_theta_eta_double_edge_round_trip():
    text = "n=even j=odd; iv=2; ev=0; theta: 1-2#1; eta: 1>2"
    assert format_graph(parse_graph(text)) == text


@pytest.mark.parametrize(
    "text",
    [
        "",
        "garbage",
        "n=even j=odd; iv=3; ev=1; theta: 1-4",
        "n=even j=odd; iv=x; ev=1",
        "n=even j=odd; iv=2; ev=0; theta: 1-2#1; wibble: 1-2",
    ],
)
def test_malformed_input_raises(text):
    with pytest.raises(GraphSyntaxError):
        parse_graph(text)


def test_wrong_decoration_parses_but_fails_validation():
    from knotgc import validate

    g = parse_graph("n=even j=odd; iv=2; ev=0; theta: 1>2")
    assert not validate(g).ok


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_round_trip_property(seed):
    g = random_graph(random.Random(seed))
    text = format_graph(g)
    assert parse_graph(text) == g
    assert format_graph(parse_graph(text)) == text

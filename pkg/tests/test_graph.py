import random

import pytest

from knotgc import ParityRegime, apply_symmetry, grading, parse_graph, validate
from knotgc.graph import (
    ALL_REGIMES, DecoratedGraph, Edge, Loop, components, is_admissible,
    is_non_degenerate, is_relation_zero, multiple_pairs, random_symmetry,
)
from knotgc.named import EVEN_ODD, h1, h2

H2_TEXT = "n=even j=odd; iv=3; ev=1; theta: 1-4#1, 2-4#2, 3-4#3"


def test_regime_parsing():
    assert ParityRegime.from_string("n=even,j=odd") == EVEN_ODD
    assert ParityRegime.from_string("j=odd n=even") == EVEN_ODD
    assert ParityRegime.from_dims(6, 3) == EVEN_ODD
    assert str(EVEN_ODD) == "n=even j=odd"
    with pytest.raises(ValueError):
        ParityRegime.from_string("n=even")
    with pytest.raises(ValueError):
        ParityRegime.from_string("n=2,j=odd")


def test_validate_h2():
    assert validate(h2(EVEN_ODD)).ok


def test_validate_eta_to_external_vertex():
    g = parse_graph("n=even j=odd; iv=2; ev=1; theta: 1-3#1, 2-3#2; eta: 1>3")
    assert "η endpoint external" in validate(g).violations


def test_validate_labels_not_bijection():
    g = parse_graph("n=even j=odd; iv=3; ev=1; theta: 1-4#1, 2-4#1, 3-4#3")
    assert "labels not a bijection" in validate(g).violations


@pytest.mark.parametrize(
    "text, expected",
    [
        ("n=even j=odd; iv=4; ev=0; theta: 1-2#1, 3-4#2; eta: 2>3", True),
        ("n=odd j=odd; iv=1; ev=0; sloop: @1#1+", True),
        ("n=even j=odd; iv=2; ev=1; theta: 1-3#1, 2-3#2", False),
        ("n=even j=odd; iv=2; ev=0; eta: 1>2", False),
    ],
)
def test_admissibility(text, expected):
    assert is_admissible(parse_graph(text)) is expected


def test_h1_is_admissible():
    assert is_admissible(h1(EVEN_ODD))


def test_grading_examples():
    fig1 = parse_graph(
        "n=even j=odd; iv=8; ev=1; theta: 1-9#1, 2-9#2, 3-9#3, 4-5#4, 6-7#5, 8-1#6, "
        "2-3#7, 5-6#8; eta: 4>7, 1>8"
    )
    g = grading(fig1)
    assert (g.k, g.l) == (7, 5)
    g = grading(h2(EVEN_ODD))
    assert (g.k, g.l, g.g) == (2, 0, 0)
    g = grading(parse_graph("n=even j=odd; iv=2; ev=0; theta: 1-2#1; eta: 1>2"))
    assert (g.k, g.l, g.g) == (1, 0, 1)


def test_double_loop_raises_genus():
    g = parse_graph("n=even j=even; iv=1; ev=0; dloop: @1#1+")
    assert grading(g).g == 1


def test_relation_zero():
    assert is_relation_zero(parse_graph("n=even j=odd; iv=2; ev=0; theta: 1-2#1, 1-2#2"))
    mixed = parse_graph("n=even j=odd; iv=2; ev=0; theta: 1-2#1; eta: 1>2")
    assert not is_relation_zero(mixed)
    assert multiple_pairs(mixed) == {(1, 2)}
    assert is_relation_zero(parse_graph("n=even j=odd; iv=1; ev=0; sloop: @1#1+"))


def test_non_degenerate_counts_loops_twice():
    assert not is_non_degenerate(parse_graph("n=odd j=odd; iv=1; ev=0; sloop: @1#1+"))
    assert is_non_degenerate(h2(EVEN_ODD))


def test_components():
    g = parse_graph("n=even j=odd; iv=4; ev=0; theta: 1-2#1, 3-4#2")
    assert components(g) == 2


def test_symmetry_preserves_validity_and_grading():
    rng = random.Random(5)
    g = h1(EVEN_ODD)
    for _ in range(50):
        image, sign = apply_symmetry(g, random_symmetry(g, rng))
        assert validate(image).ok
        assert grading(image) == grading(g)
        assert sign in (1, -1)


def test_dataclass_is_hashable_and_ordered():
    g = DecoratedGraph(EVEN_ODD, 2, 0, (Edge(1, 2, 1),), (), (), ())
    assert hash(g) == hash(parse_graph("n=even j=odd; iv=2; ev=0; theta: 1-2#1"))
    assert Loop(1, 1) == Loop(1, 1, 1)


def test_all_regimes():
    assert len(set(ALL_REGIMES)) == 4

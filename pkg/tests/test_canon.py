import random

from knotgc import apply_symmetry, canonicalize, parse_graph
from knotgc.enumeration import brute_force_is_zero
from knotgc.graph import random_symmetry
from knotgc.named import EVEN_ODD, h2

from helpers import random_graph, random_structure


def test_least_form_is_fixed():
    c = canonicalize(h2(EVEN_ODD))
    assert c.form == h2(EVEN_ODD) and c.sign == 1


def test_odd_self_symmetry_is_zero():
    path = parse_graph("n=odd j=odd; iv=4; ev=0; theta: 1>2, 3>4; eta: 2>3")
    assert canonicalize(path) is None
    assert brute_force_is_zero(path)


def test_label_swap_flips_sign():
    g = parse_graph("n=even j=odd; iv=3; ev=1; theta: 1-4#2, 2-4#1, 3-4#3")
    c = canonicalize(g)
    assert c.form == h2(EVEN_ODD) and c.sign == -1


def test_compensated_swap_is_even():
    g = h2(EVEN_ODD)
    # vertex swap (1 2) composed with label swap (1 2) fixes H2
    from knotgc.graph import Symmetry, THETA

    sym = Symmetry((2, 1, 3, 4), label_perms=(((THETA,), (2, 1, 3)),))
    image, sign = apply_symmetry(g, sym)
    assert sorted(image.theta) == sorted(g.theta) and sign == 1


def test_duplicate_small_loops_survive_duplicate_double_loops_vanish():
    assert canonicalize(parse_graph("n=odd j=odd; iv=1; ev=0; sloop: @1#1+, @1#2+")) is not None
    assert canonicalize(parse_graph("n=even j=even; iv=1; ev=0; dloop: @1#1+, @1#2+")) is None


def test_idempotent():
    rng = random.Random(11)
    for _ in range(200):
        c = canonicalize(random_graph(rng))
        if c is None:
            continue
        again = canonicalize(c.form)
        assert again.form == c.form and again.sign == 1


def test_signs_consistent_under_relabeling():
    rng = random.Random(3)
    for _ in range(300):
        g = random_structure(rng)
        image, sign = apply_symmetry(g, random_symmetry(g, rng))
        a, b = canonicalize(g), canonicalize(image)
        assert (a is None) == (b is None) == brute_force_is_zero(g)
        if a is not None:
            assert a.form == b.form
            assert b.sign == sign * a.sign

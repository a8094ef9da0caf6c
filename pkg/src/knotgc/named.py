"""Built-in graphs: the two graphs of the order-two cocycle H = H1/2 + H2/6.

H1 is the path 1 -theta- 2 -eta- 3 -theta- 4 on four i-vertices; H2 is the
tripod with three i-vertices joined by theta-edges to one e-vertex.  The
decorations are the standard ones in the regimes (n even, j odd) and
(n odd, j even); in the other two regimes a default decoration is used.
"""

from __future__ import annotations

from fractions import Fraction

from .graph import DecoratedGraph, Edge, ParityRegime

EVEN_ODD = ParityRegime(n_odd=False, j_odd=True)
ODD_EVEN = ParityRegime(n_odd=True, j_odd=False)
H_REGIMES = (EVEN_ODD, ODD_EVEN)


def h1(regime: ParityRegime) -> DecoratedGraph:
    if regime.shared_labels:
        theta = (Edge(1, 2, 1), Edge(3, 4, 3))
        eta = (Edge(2, 3, 2),)
    else:
        theta = (
            (Edge(1, 2), Edge(3, 4)) if regime.theta_oriented
            else (Edge(1, 2, 1), Edge(3, 4, 2))
        )
        eta = (Edge(2, 3),) if regime.eta_oriented else (Edge(2, 3, 1),)
    return DecoratedGraph(regime, 4, 0, theta, eta)


def h2(regime: ParityRegime) -> DecoratedGraph:
    if regime.theta_oriented:
        theta = (Edge(1, 4), Edge(2, 4), Edge(3, 4))
    else:
        theta = (Edge(1, 4, 1), Edge(2, 4, 2), Edge(3, 4, 3))
    return DecoratedGraph(regime, 3, 1, theta)


def h_terms(regime: ParityRegime) -> list[tuple[Fraction, DecoratedGraph]]:
    return [(Fraction(1, 2), h1(regime)), (Fraction(1, 6), h2(regime))]


NAMED = {"H1": h1, "H2": h2}

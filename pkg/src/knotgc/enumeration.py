"""Enumeration of canonical admissible graphs of a given grading.

``enumerate_graphs`` builds the theta/loop skeletons first, deduplicates them
up to isomorphism, then adds eta-edges one at a time, deduplicating at every
level.  A vertex may carry several small loops but at most one double loop,
because two double loops at one vertex are exchanged by an odd relabeling.
The two oracles below count classes without canonical forms:

* ``enumerate_oracle(..., method="burnside")`` averages the signed trace of
  every vertex relabeling over the fixed labeled graphs (Burnside's lemma
  for the sign character), so odd-automorphism classes drop out exactly.
* ``method="orbits"`` lists every labeled graph, groups them into orbits by
  applying all vertex relabelings, and discards orbits carrying an odd
  automorphism.  Only feasible for four vertices or fewer.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from collections import Counter
from itertools import combinations, combinations_with_replacement, permutations
from typing import Optional

from .canon import canonical_key, canonicalize
from .coboundary import form_key
from .graph import (
    DOUBLE, ETA, SMALL, THETA, DecoratedGraph, Edge, Loop, ParityRegime, Symmetry,
    apply_symmetry, grading, has_multi_edge, is_admissible, parity,
)

ORACLE_MAX_VERTICES = 5
ORBIT_ORACLE_MAX_VERTICES = 4


def decorate(
    regime: ParityRegime, s: int, t: int, theta_pairs, eta_pairs=(), small=(), double=()
) -> DecoratedGraph:
    """Attach a default decoration to an undecorated structure."""
    theta = []
    eta = []
    label = 1
    for kind, pairs, out in ((THETA, theta_pairs, theta), (ETA, eta_pairs, eta)):
        if not regime.shared_labels:
            label = 1
        for a, b in pairs:
            if regime.oriented(kind):
                out.append(Edge(a, b))
            else:
                out.append(Edge(a, b, label))
                label += 1
    loops = sorted([(v, 0) for v in small] + [(v, 1) for v in double])
    small_loops = [Loop(v, i + 1) for i, (v, kind) in enumerate(loops) if kind == 0]
    double_loops = [Loop(v, i + 1) for i, (v, kind) in enumerate(loops) if kind == 1]
    return DecoratedGraph(regime, s, t, theta, eta, small_loops, double_loops)


def _loop_structures(regime: ParityRegime, s: int, t: int, n_theta: int):
    """(theta pairs, small-loop multiset, double-loop set) with ``n_theta`` theta-type items."""
    pairs = list(combinations(range(1, s + t + 1), 2))
    slots = [("pair", p) for p in pairs]
    if regime.double_loops_allowed:
        slots += [(DOUBLE, v) for v in range(1, s + 1)]
    max_small = n_theta if regime.small_loops_allowed and s else 0
    for n_small in range(max_small + 1):
        rest = n_theta - n_small
        if rest > len(slots):
            continue
        for small in combinations_with_replacement(range(1, s + 1), n_small):
            for chosen in combinations(slots, rest):
                theta_pairs = [x for kind, x in chosen if kind == "pair"]
                double = [x for kind, x in chosen if kind == DOUBLE]
                yield theta_pairs, list(small), double


def _skeletons(regime: ParityRegime, k: int, l: int):
    """Admissible theta/loop structures (no eta-edges) with grading (k, l)."""
    n_vertices = 2 * k - l
    for t in range(n_vertices + 1):
        s = n_vertices - t
        n_theta = k + t
        if n_theta < 0 or 3 * t > 2 * n_theta:
            continue
        seen = set()
        for theta_pairs, small, double in _loop_structures(regime, s, t, n_theta):
            graph = decorate(regime, s, t, theta_pairs, (), small, double)
            if not is_admissible(graph):
                continue
            key = canonical_key(graph)
            if key in seen:
                continue
            seen.add(key)
            yield graph


def _structure(graph: DecoratedGraph):
    return (
        [e.pair for e in graph.theta],
        [e.pair for e in graph.eta],
        [lp.vertex for lp in graph.small_loops],
        [lp.vertex for lp in graph.double_loops],
    )


@lru_cache(maxsize=None)
def _enumerate_all(regime: ParityRegime, k: int, l: int) -> tuple[DecoratedGraph, ...]:
    if k < 1 or l < 0 or 2 * k - l < 1:
        return ()
    forms = []
    for skeleton in _skeletons(regime, k, l):
        s, t = skeleton.s, skeleton.t
        theta_pairs, _, small, double = _structure(skeleton)
        i_pairs = list(combinations(range(1, s + 1), 2))
        level = {canonical_key(skeleton): skeleton}
        while level:
            for graph in level.values():
                c = canonicalize(graph, check=False)
                if c is not None:
                    forms.append(c.form)
            nxt = {}
            for graph in level.values():
                present = {e.pair for e in graph.eta}
                th, _, sm, db = _structure(graph)
                for pair in i_pairs:
                    if pair in present:
                        continue
                    cand = decorate(regime, s, t, th, sorted(present | {pair}), sm, db)
                    key = canonical_key(cand)
                    if key not in nxt:
                        nxt[key] = cand
            level = nxt
    forms.sort(key=form_key)
    return tuple(forms)


def enumerate_graphs(
    regime: ParityRegime, k: int, l: int, g: Optional[int] = None
) -> list[DecoratedGraph]:
    """Canonical representatives of all nonzero classes of grading (k, l[, g])."""
    forms = _enumerate_all(regime, k, l)
    if g is None:
        return list(forms)
    return [f for f in forms if grading(f).g == g]


# --- independent oracles -----------------------------------------------------


def _cycle_types(m: int):
    """Partitions of m as lists of part sizes, with the class size in S_m."""

    def parts(rest, largest):
        if rest == 0:
            yield []
            return
        for p in range(min(rest, largest), 0, -1):
            for tail in parts(rest - p, p):
                yield [p] + tail

    for lam in parts(m, m):
        z = 1
        for size in set(lam):
            mult = lam.count(size)
            z *= size ** mult * math.factorial(mult)
        yield lam, math.factorial(m) // z


def _perm_from_type(lam: list[int], offset: int) -> list[int]:
    """A permutation of offset+1..offset+m with the given cycle type (0-based list of images)."""
    images = []
    start = offset + 1
    for size in lam:
        cyc = list(range(start, start + size))
        images.extend(cyc[1:] + cyc[:1])
        start += size
    return images


def _orbits(items: list, act) -> list[list]:
    index = {x: i for i, x in enumerate(items)}
    seen = [False] * len(items)
    out = []
    for i, x in enumerate(items):
        if seen[i]:
            continue
        orbit = []
        y = x
        while not seen[index[y]]:
            seen[index[y]] = True
            orbit.append(y)
            y = act(y)
        out.append(orbit)
    return out


def _signed_trace(regime: ParityRegime, s: int, t: int, n_theta: int, g: list[int]) -> int:
    """Sum of sign(g, x) over the labeled structures x fixed by g (g is 1-based, g[0] unused)."""
    n_vertices = s + t

    def act_pair(pr):
        a, b = g[pr[0]], g[pr[1]]
        return (a, b) if a < b else (b, a)

    def pair_orbit_sign(orbit, oriented):
        if oriented:
            return (-1) ** sum(1 for a, b in orbit if g[a] > g[b])
        return (-1) ** (len(orbit) - 1)

    vertex_exp = 0
    if regime.j_odd:
        vertex_exp += parity([g[v] - 1 for v in range(1, s + 1)])
    if regime.n_odd:
        vertex_exp += parity([g[v] - 1 - s for v in range(s + 1, n_vertices + 1)])
    vertex_sign = -1 if vertex_exp & 1 else 1

    pairs = list(combinations(range(1, n_vertices + 1), 2))
    # (size, sign when included, vertices touched, may repeat)
    slot_orbits = []
    for orbit in _orbits(pairs, act_pair):
        sign = pair_orbit_sign(orbit, regime.theta_oriented)
        slot_orbits.append((len(orbit), sign, [v for pr in orbit for v in pr], False))
    vertex_orbits = _orbits(list(range(1, s + 1)), lambda v: g[v])
    if regime.double_loops_allowed:
        for orbit in vertex_orbits:
            slot_orbits.append((len(orbit), (-1) ** (len(orbit) - 1), list(orbit), False))
    if regime.small_loops_allowed:
        # small loops are unordered, so a fixed multiset carries no sign
        for orbit in vertex_orbits:
            slot_orbits.append((len(orbit), 1, list(orbit), True))

    eta_factor = 1
    i_pairs = list(combinations(range(1, s + 1), 2))
    for orbit in _orbits(i_pairs, act_pair):
        eta_factor *= 1 + pair_orbit_sign(orbit, regime.eta_oriented)
    if eta_factor == 0:
        return 0

    total = 0
    valence = [0] * (n_vertices + 1)
    def admissible():
        return all(valence[v] >= 1 for v in range(1, s + 1)) and all(
            valence[v] >= 3 for v in range(s + 1, n_vertices + 1)
        )

    def rec(i, remaining, sign):
        nonlocal total
        if remaining == 0:
            if admissible():
                total += sign
            return
        if i == len(slot_orbits):
            return
        size, osign, verts, repeat = slot_orbits[i]
        rec(i + 1, remaining, sign)
        copies = 0
        while (copies + 1) * size <= remaining and (repeat or copies == 0):
            copies += 1
            for v in verts:
                valence[v] += 1
            rec(i + 1, remaining - copies * size, sign * osign ** copies)
        for v in verts:
            valence[v] -= copies

    rec(0, n_theta, 1)
    return vertex_sign * eta_factor * total


def _burnside_count(regime: ParityRegime, k: int, l: int) -> int:
    n_vertices = 2 * k - l
    total = Fraction(0)
    for t in range(n_vertices + 1):
        s = n_vertices - t
        n_theta = k + t
        if n_theta < 0:
            continue
        order = math.factorial(s) * math.factorial(t)
        for lam, size_s in _cycle_types(s):
            sigma = _perm_from_type(lam, 0)
            for mu, size_t in _cycle_types(t):
                tau_ = _perm_from_type(mu, s)
                g = [0] + sigma + tau_
                trace = _signed_trace(regime, s, t, n_theta, g)
                total += Fraction(size_s * size_t * trace, order)
    assert total.denominator == 1, total
    return int(total)


def _vertex_perms(s: int, t: int):
    for sig in permutations(range(1, s + 1)):
        for ta in permutations(range(s + 1, s + t + 1)):
            yield sig + ta


def _automorphism_sign(graph: DecoratedGraph, vp: tuple[int, ...]) -> Optional[int]:
    """Sign of the relabeling ``vp`` if it maps the structure of ``graph`` to itself."""
    image, sign = apply_symmetry(graph, Symmetry(tuple(vp)))
    exp = 0
    reg = graph.regime
    label_maps: dict[tuple, list] = {}
    for kind in (THETA, ETA):
        original = {e.pair: e for e in graph.edges(kind)}
        moved = {e.pair: e for e in image.edges(kind)}
        if set(original) != set(moved):
            return None
        for pr, e in moved.items():
            f = original[pr]
            if e.label is None:
                if (e.p, e.q) != (f.p, f.q):
                    exp += 1
            else:
                cls = (THETA, ETA) if reg.shared_labels else (kind,)
                label_maps.setdefault(cls, []).append((e.label, f.label))
    for pairs in label_maps.values():
        perm = [0] * len(pairs)
        for moved_label, orig_label in pairs:
            perm[moved_label - 1] = orig_label - 1
        exp += parity(perm)
    # small loops: unordered, so only the number of negative signs per vertex matters
    if Counter(lp.vertex for lp in graph.small_loops) != Counter(
        lp.vertex for lp in image.small_loops
    ):
        return None
    exp += sum(1 for lp in graph.small_loops + image.small_loops if lp.sign < 0)
    original = {lp.vertex: lp for lp in graph.double_loops}
    moved = {lp.vertex: lp for lp in image.double_loops}
    if set(original) != set(moved):
        return None
    order = sorted(moved, key=lambda v: original[v].label)
    exp += parity(sorted(range(len(order)), key=lambda i: moved[order[i]].label))
    exp += sum(1 for v in moved if moved[v].sign != original[v].sign)
    return sign * (-1 if exp & 1 else 1)


def has_odd_automorphism(graph: DecoratedGraph) -> bool:
    """Brute force over every vertex relabeling (no pruning)."""
    for vp in _vertex_perms(graph.s, graph.t):
        if _automorphism_sign(graph, vp) == -1:
            return True
    return False


def brute_force_is_zero(graph: DecoratedGraph) -> bool:
    """Zero test independent of :func:`canonicalize`."""
    reg = graph.regime
    if has_multi_edge(graph):
        return True
    if graph.small_loops and not reg.small_loops_allowed:
        return True
    if graph.double_loops and not reg.double_loops_allowed:
        return True
    verts = [lp.vertex for lp in graph.double_loops]
    if len(verts) != len(set(verts)):
        return True
    return has_odd_automorphism(graph)


def _orbit_count(regime: ParityRegime, k: int, l: int) -> int:
    n_vertices = 2 * k - l
    count = 0
    for t in range(n_vertices + 1):
        s = n_vertices - t
        n_theta = k + t
        if n_theta < 0:
            continue
        i_pairs = list(combinations(range(1, s + 1), 2))
        perms = list(_vertex_perms(s, t))
        seen: set = set()
        for th, sm, db in _loop_structures(regime, s, t, n_theta):
            base = decorate(regime, s, t, th, (), sm, db)
            if not is_admissible(base):
                continue
            for r in range(len(i_pairs) + 1):
                for eta in combinations(i_pairs, r):
                    key = (frozenset(th), frozenset(eta), tuple(sm), frozenset(db))
                    if key in seen:
                        continue
                    graph = decorate(regime, s, t, th, eta, sm, db)
                    odd = False
                    for vp in perms:
                        m = (0,) + vp
                        seen.add((
                            frozenset(tuple(sorted((m[a], m[b]))) for a, b in th),
                            frozenset(tuple(sorted((m[a], m[b]))) for a, b in eta),
                            tuple(sorted(m[v] for v in sm)),
                            frozenset(m[v] for v in db),
                        ))
                        if not odd and _automorphism_sign(graph, vp) == -1:
                            odd = True
                    if not odd:
                        count += 1
    return count


def enumerate_oracle(regime: ParityRegime, k: int, l: int, method: str = "burnside") -> int:
    """Number of nonzero classes of grading (k, l), computed without canonical forms."""
    n_vertices = 2 * k - l
    if n_vertices <= 0 or k < 1 or l < 0:
        return 0
    if method == "burnside":
        if n_vertices > ORACLE_MAX_VERTICES:
            raise ValueError(f"oracle size guard: {n_vertices} > {ORACLE_MAX_VERTICES} vertices")
        return _burnside_count(regime, k, l)
    if method == "orbits":
        if n_vertices > ORBIT_ORACLE_MAX_VERTICES:
            raise ValueError(
                f"oracle size guard: {n_vertices} > {ORBIT_ORACLE_MAX_VERTICES} vertices"
            )
        return _orbit_count(regime, k, l)
    raise ValueError(f"unknown oracle method {method!r}")

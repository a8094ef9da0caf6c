"""Configuration-space integrands of graphs and their Monte Carlo integrals.

The fiber over a knot ``f`` has coordinates ``x_1..x_s`` in R^j (i-vertices),
``y_{s+1}..y_{s+t}`` in R^n (e-vertices) and one unit vector ``v_a`` in
S^{j-1} per loop.  Each edge form pulls back the normalized round volume form
of its sphere along a direction map.  When the form degree equals the fiber
dimension, the integrand is a single density: the determinant of the stacked
tangent-space Jacobians of the direction maps, times the product of
``1 / Vol(S^m)`` over the spheres.

Tangent frames on S^{N-1} at ``w``: Gram-Schmidt of ``(w, e_1, ..., e_N)`` with
the basis vector of largest ``|w_i|`` left out, last vector flipped if needed so
that ``det[w | frame] > 0``.  The overall sign of an integral depends on this
choice and on the order of the edge forms (labeled edges by label, then
oriented edges in stored order, then loops by label); magnitudes and zeros do
not.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .graph import DOUBLE, ETA, SMALL, THETA, DecoratedGraph, components, grading
from .knots import LongKnot

PROPOSAL_SCALE = 2.0
PROPOSALS = ("cauchy", "mixture")
# half-width of the cube sampled by the mixture proposal; long knots are standard outside [-1, 1]^j
MIXTURE_BOX = 1.0
DEGENERATE_DISTANCE = 1e-9
CHUNK = 4096
# determinants below this fraction of the Hadamard bound are rounding noise
DET_RTOL_PER_DIM = 64 * np.finfo(float).eps


def sphere_volume(m: int) -> float:
    """Volume of the unit sphere S^m."""
    return 2 * math.pi ** ((m + 1) / 2) / math.gamma((m + 1) / 2)


@dataclass(frozen=True)
class Configuration:
    x: np.ndarray  # (s, j)
    y: np.ndarray  # (t, n)
    v: np.ndarray  # (u, j)

    @classmethod
    def make(cls, x=(), y=(), v=(), n: Optional[int] = None, j: Optional[int] = None):
        def arr(a, width):
            a = np.asarray(a, dtype=float)
            if a.size == 0:
                return np.zeros((0, width or 0))
            return np.atleast_2d(a)

        return cls(arr(x, j), arr(y, n), arr(v, j))

    def check(self, knot: LongKnot) -> None:
        if self.v.size and not np.allclose(np.linalg.norm(self.v, axis=1), 1.0):
            raise ValueError("loop vectors must be unit vectors")
        z = np.concatenate([knot.eval(self.x).reshape(-1, knot.n), self.y.reshape(-1, knot.n)])
        if _min_distance(self.x[None]) <= DEGENERATE_DISTANCE or _min_distance(z[None]) <= DEGENERATE_DISTANCE:
            raise ValueError("coincident points in configuration")


@dataclass(frozen=True)
class McEstimate:
    value: float
    std_error: float
    n_samples: int
    seed: int
    rejected_samples: int = 0
    threads: int = 1
    proposal: str = "cauchy"
    nonzero_samples: int = 0


# --- frames and layout -----------------------------------------------------------


def tangent_frame(w: np.ndarray) -> np.ndarray:
    """Oriented orthonormal tangent frames ``(..., N, N-1)`` at unit vectors ``w``."""
    w = np.asarray(w, dtype=float)
    size = w.shape[-1]
    drop = np.argmax(np.abs(w), axis=-1)
    eye = np.eye(size)
    keep = np.ones(w.shape[:-1] + (size,), dtype=bool)
    np.put_along_axis(keep, drop[..., None], False, axis=-1)
    others = np.broadcast_to(eye, w.shape[:-1] + (size, size))[keep].reshape(
        w.shape[:-1] + (size - 1, size)
    )
    a = np.concatenate([w[..., None, :], others], axis=-2)  # rows = vectors
    q, r = np.linalg.qr(np.swapaxes(a, -1, -2))
    signs = np.sign(np.diagonal(r, axis1=-2, axis2=-1))
    signs[signs == 0] = 1
    q = q * signs[..., None, :]
    frame = q[..., 1:]
    if size == 1:
        return frame
    orient = np.linalg.det(np.concatenate([w[..., :, None], frame], axis=-1))
    frame[..., -1] *= np.where(orient < 0, -1.0, 1.0)[..., None]
    return frame


def _ordered_edges(graph: DecoratedGraph) -> list[tuple[str, int]]:
    def order(kind):
        edges = graph.edges(kind)
        idx = range(len(edges))
        if edges and edges[0].label is not None:
            return sorted(idx, key=lambda i: edges[i].label)
        return list(idx)

    refs = []
    if graph.regime.shared_labels:
        refs = sorted(
            [(THETA, i) for i in range(len(graph.theta))] + [(ETA, i) for i in range(len(graph.eta))],
            key=lambda ref: graph.edges(ref[0])[ref[1]].label,
        )
    else:
        labeled = [kind for kind in (THETA, ETA) if not graph.regime.oriented(kind)]
        oriented = [kind for kind in (THETA, ETA) if graph.regime.oriented(kind)]
        for kind in labeled + oriented:
            refs += [(kind, i) for i in order(kind)]
    loops = sorted(
        [(lp.label, SMALL, i) for i, lp in enumerate(graph.small_loops)]
        + [(lp.label, DOUBLE, i) for i, lp in enumerate(graph.double_loops)]
    )
    return refs + [(kind, i) for _, kind, i in loops]


def fiber_dims(graph: DecoratedGraph, n: int, j: int) -> tuple[int, int, int]:
    """``(fiber_dim, target_dim, deg_I)`` where ``deg_I = target_dim - fiber_dim``."""
    s, t, u = graph.s, graph.t, graph.u
    fiber = j * s + n * t + (j - 1) * u
    target = (
        (n - 1) * (len(graph.theta) + len(graph.small_loops) + len(graph.double_loops))
        + (j - 1) * (len(graph.eta) + len(graph.double_loops))
    )
    deg = target - fiber
    gr = grading(graph)
    # the closed formula assumes a connected graph; each extra component lowers the degree by j-1
    expected = (n - j - 2) * gr.k + (gr.g - 1) * (j - 1) + gr.l - (j - 1) * (components(graph) - 1)
    if deg != expected:
        raise AssertionError(f"degree bookkeeping mismatch: {deg} != {expected}")
    return fiber, target, deg


# --- direction maps ---------------------------------------------------------------


def _vertex_points(graph, knot, x, y):
    fx = knot.eval(x)  # (B, s, n)
    return np.concatenate([fx, y], axis=1)


def edge_direction(graph: DecoratedGraph, edge, knot: LongKnot, config: Configuration):
    """Unit vector(s) of the direction map of ``edge = (kind, index)`` at ``config``."""
    kind, idx = edge
    x = config.x[None]
    y = config.y[None]
    if kind in (THETA, ETA):
        e = graph.edges(kind)[idx]
        if kind == ETA:
            d = x[:, e.q - 1] - x[:, e.p - 1]
        else:
            z = _vertex_points(graph, knot, x, y)
            d = z[:, e.q - 1] - z[:, e.p - 1]
        norm = np.linalg.norm(d, axis=-1)
        if np.any(norm <= DEGENERATE_DISTANCE):
            raise ValueError("coincident endpoints")
        return (d / norm[..., None])[0]
    loop = graph.loops(kind)[idx]
    va = config.v[loop.label - 1]
    du = knot.derivative(config.x[loop.vertex - 1]) @ va
    image = du / np.linalg.norm(du)
    if kind == SMALL:
        return loop.sign * image
    return loop.sign * va, image


# --- the density ------------------------------------------------------------------


def _jacobian(graph: DecoratedGraph, knot: LongKnot, x, y, v) -> tuple[np.ndarray, float]:
    """Stacked tangent Jacobians ``(B, D, D)`` and the volume normalization."""
    n, j = knot.n, knot.j
    s, t, u = graph.s, graph.t, graph.u
    batch = x.shape[0]
    fiber, target, _ = fiber_dims(graph, n, j)
    if fiber != target:
        raise ValueError(
            f"integrand is not a top form: form degree {target}, fiber dimension {fiber}"
        )
    jac = np.zeros((batch, fiber, fiber))
    xoff = lambda p: (p - 1) * j
    yoff = lambda q: s * j + (q - s - 1) * n
    voff = lambda a: s * j + t * n + (a - 1) * (j - 1)

    fx = knot.eval(x) if s else np.zeros((batch, 0, n))
    df = knot.derivative(x) if s else np.zeros((batch, 0, n, j))
    z = np.concatenate([fx, y], axis=1)
    vframes = tangent_frame(v) if u else None
    need_hessian = bool(graph.small_loops or graph.double_loops)
    hess = knot.second_derivative(x) if need_hessian else None
    scale = 1.0
    row = 0

    def sphere_rows(w, width):
        nonlocal row
        frame = tangent_frame(w)  # (B, N, N-1)
        rows = slice(row, row + width)
        row += width
        return frame, rows

    for kind, idx in _ordered_edges(graph):
        if kind == ETA:
            e = graph.eta[idx]
            d = x[:, e.q - 1] - x[:, e.p - 1]
            r = np.linalg.norm(d, axis=-1)[:, None, None]
            frame, rows = sphere_rows(d / r[..., 0], j - 1)
            block = np.swapaxes(frame, -1, -2) / r
            jac[:, rows, xoff(e.q):xoff(e.q) + j] += block
            jac[:, rows, xoff(e.p):xoff(e.p) + j] -= block
            scale /= sphere_volume(j - 1)
        elif kind == THETA:
            e = graph.theta[idx]
            d = z[:, e.q - 1] - z[:, e.p - 1]
            r = np.linalg.norm(d, axis=-1)[:, None, None]
            frame, rows = sphere_rows(d / r[..., 0], n - 1)
            ft = np.swapaxes(frame, -1, -2) / r
            for vert, sign in ((e.q, 1.0), (e.p, -1.0)):
                if vert <= s:
                    jac[:, rows, xoff(vert):xoff(vert) + j] += sign * ft @ df[:, vert - 1]
                else:
                    jac[:, rows, yoff(vert):yoff(vert) + n] += sign * ft
            scale /= sphere_volume(n - 1)
        else:
            loop = graph.loops(kind)[idx]
            p, a = loop.vertex, loop.label
            va = v[:, a - 1]
            vf = vframes[:, a - 1]  # (B, j, j-1)
            if kind == DOUBLE:
                frame, rows = sphere_rows(loop.sign * va, j - 1)
                jac[:, rows, voff(a):voff(a) + j - 1] += loop.sign * np.swapaxes(frame, -1, -2) @ vf
                scale /= sphere_volume(j - 1)
                eps = 1.0
            else:
                eps = float(loop.sign)
            du = np.einsum("bnj,bj->bn", df[:, p - 1], va)
            r = np.linalg.norm(du, axis=-1)[:, None, None]
            frame, rows = sphere_rows(eps * du / r[..., 0], n - 1)
            ft = eps * np.swapaxes(frame, -1, -2) / r
            dx = np.einsum("znac,za->znc", hess[:, p - 1], va)
            jac[:, rows, xoff(p):xoff(p) + j] += ft @ dx
            jac[:, rows, voff(a):voff(a) + j - 1] += ft @ df[:, p - 1] @ vf
            scale /= sphere_volume(n - 1)
    return jac, scale


def _floored_det(jac: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):  # exactly singular matrices
        det = np.linalg.det(jac)
    bound = np.prod(np.linalg.norm(jac, axis=-1), axis=-1)
    det[np.abs(det) <= DET_RTOL_PER_DIM * jac.shape[-1] * bound] = 0.0
    return det


def integrand_density_batch(graph, knot, x, y, v) -> np.ndarray:
    """Densities for a batch: ``x (B, s, j)``, ``y (B, t, n)``, ``v (B, u, j)``."""
    jac, scale = _jacobian(graph, knot, x, y, v)
    if jac.shape[-1] == 0:
        return np.full(x.shape[0], scale)
    return _floored_det(jac) * scale


def integrand_density(graph: DecoratedGraph, knot: LongKnot, config: Configuration) -> float:
    config.check(knot)
    x = config.x.reshape(1, graph.s, knot.j)
    y = config.y.reshape(1, graph.t, knot.n)
    v = config.v.reshape(1, graph.u, knot.j)
    return float(integrand_density_batch(graph, knot, x, y, v)[0])


# --- sampling ---------------------------------------------------------------------


def _min_distance(points: np.ndarray) -> np.ndarray:
    """Smallest pairwise distance per batch row of ``(B, m, d)``; inf when m < 2."""
    m = points.shape[1]
    if m < 2:
        return np.full(points.shape[0], np.inf)
    diff = points[:, :, None, :] - points[:, None, :, :]
    dist = np.linalg.norm(diff, axis=-1)
    dist[:, np.arange(m), np.arange(m)] = np.inf
    return dist.min(axis=(1, 2))


def _uniform_sphere(rng: np.random.Generator, shape: tuple, dim: int) -> np.ndarray:
    g = rng.standard_normal(shape + (dim,))
    return g / np.linalg.norm(g, axis=-1, keepdims=True)


def _cauchy_log_pdf(z: np.ndarray) -> np.ndarray:
    c = PROPOSAL_SCALE
    return -np.log(math.pi * c) - np.log1p((z / c) ** 2)


def _point_log_pdf(points: np.ndarray, proposal: str) -> np.ndarray:
    """Log density of each point ``(B, m, d) -> (B, m)`` under the proposal."""
    cauchy = _cauchy_log_pdf(points).sum(axis=-1)
    if proposal == "cauchy":
        return cauchy
    d = points.shape[-1]
    in_box = np.all(np.abs(points) <= MIXTURE_BOX, axis=-1)
    box = np.where(in_box, -d * math.log(2 * MIXTURE_BOX), -np.inf)
    return np.logaddexp(box, cauchy) + math.log(0.5)


def _draw_points(rng: np.random.Generator, shape: tuple, proposal: str) -> np.ndarray:
    z = PROPOSAL_SCALE * rng.standard_cauchy(shape)
    if proposal == "mixture":
        pick = rng.random(shape[:-1]) < 0.5
        box = rng.uniform(-MIXTURE_BOX, MIXTURE_BOX, shape)
        z = np.where(pick[..., None], box, z)
    return z


def sample_configurations(graph, knot, rng: np.random.Generator, size: int, proposal: str = "cauchy"):
    """Draw ``size`` valid configurations from the proposal.

    ``"cauchy"`` draws every coordinate from Cauchy(0, 2).  ``"mixture"`` draws
    each point with probability 1/2 uniformly from the cube where knots may be
    non-standard and otherwise as ``"cauchy"``; its density is positive
    everywhere, so the estimator stays unbiased.  Loop vectors are uniform.
    Returns ``(x, y, v, log_proposal, rejected)``.
    """
    if proposal not in PROPOSALS:
        raise ValueError(f"unknown proposal {proposal!r}; choose from {', '.join(PROPOSALS)}")
    s, t, u, n, j = graph.s, graph.t, graph.u, knot.n, knot.j
    xs, ys, vs = [], [], []
    have = 0
    rejected = 0
    while have < size:
        want = size - have
        x = _draw_points(rng, (want, s, j), proposal)
        y = _draw_points(rng, (want, t, n), proposal)
        v = _uniform_sphere(rng, (want, u), j) if u else np.zeros((want, 0, j))
        z = np.concatenate([knot.eval(x), y], axis=1)
        ok = (_min_distance(x) > DEGENERATE_DISTANCE) & (_min_distance(z) > DEGENERATE_DISTANCE)
        rejected += int(want - ok.sum())
        xs.append(x[ok])
        ys.append(y[ok])
        vs.append(v[ok])
        have += int(ok.sum())
    x, y, v = (np.concatenate(a) for a in (xs, ys, vs))
    log_q = _point_log_pdf(x, proposal).sum(axis=1) + _point_log_pdf(y, proposal).sum(axis=1)
    log_q -= u * math.log(sphere_volume(j - 1))
    return x, y, v, log_q, rejected


def _worker_sizes(n_samples: int, threads: int) -> list[int]:
    base, extra = divmod(n_samples, threads)
    return [base + (1 if i < extra else 0) for i in range(threads)]


def _weights(graph, knot, seed_seq: np.random.SeedSequence, size: int, proposal: str):
    rng = np.random.default_rng(seed_seq)
    out = []
    rejected = 0
    for start in range(0, size, CHUNK):
        m = min(CHUNK, size - start)
        x, y, v, log_q, rej = sample_configurations(graph, knot, rng, m, proposal)
        dens = integrand_density_batch(graph, knot, x, y, v)
        out.append(np.where(dens == 0, 0.0, dens * np.exp(-log_q)))
        rejected += rej
    return (np.concatenate(out) if out else np.zeros(0)), rejected


def mc_estimate(
    graph: DecoratedGraph,
    knot: LongKnot,
    n_samples: int,
    seed: int,
    threads: int = 1,
    proposal: str = "cauchy",
) -> McEstimate:
    """Importance-sampled integral of the density over the fiber.

    Worker ``i`` draws from ``SeedSequence(seed).spawn(threads)[i]``, so the result
    is reproducible for a fixed ``(seed, n_samples, threads, proposal)``.
    """
    if n_samples < 2:
        raise ValueError("need at least two samples")
    if threads < 1:
        raise ValueError("threads must be positive")
    if proposal not in PROPOSALS:
        raise ValueError(f"unknown proposal {proposal!r}; choose from {', '.join(PROPOSALS)}")
    fiber_dims(graph, knot.n, knot.j)
    streams = np.random.SeedSequence(seed).spawn(threads)
    sizes = _worker_sizes(n_samples, threads)
    jobs = [(graph, knot, stream, size, proposal) for stream, size in zip(streams, sizes)]
    if threads == 1:
        parts = [_weights(*jobs[0])]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda a: _weights(*a), jobs))
    weights = np.concatenate([w for w, _ in parts])
    rejected = sum(r for _, r in parts)
    value = float(np.mean(weights))
    std_error = float(np.std(weights, ddof=1) / math.sqrt(n_samples))
    return McEstimate(
        value, std_error, n_samples, seed, rejected, threads, proposal, int(np.count_nonzero(weights))
    )


# --- degree of sphere maps --------------------------------------------------------


def map_degree(
    func: Callable[[np.ndarray], np.ndarray],
    m: int,
    n_samples: int,
    seed: int,
    step: float = 1e-5,
) -> float:
    """Monte Carlo degree of ``func: S^m -> S^m`` (given on R^{m+1}, batched).

    Averages the Jacobian determinant in oriented tangent frames over uniform
    samples, which is the integral of the pulled-back normalized volume form.
    """
    rng = np.random.default_rng(seed)

    def unit(a):
        return a / np.linalg.norm(a, axis=-1, keepdims=True)

    total = []
    for start in range(0, n_samples, CHUNK * 4):
        size = min(CHUNK * 4, n_samples - start)
        w = _uniform_sphere(rng, (size,), m + 1)
        image = unit(func(w))
        frame_in = tangent_frame(w)
        frame_out = tangent_frame(image)
        cols = []
        for i in range(m):
            h = step * frame_in[..., i]
            cols.append((unit(func(w + h)) - unit(func(w - h))) / (2 * step))
        d = np.stack(cols, axis=-1)  # (B, m+1, m)
        total.append(np.linalg.det(np.swapaxes(frame_out, -1, -2) @ d))
    return float(np.mean(np.concatenate(total)))


def identity_map(w: np.ndarray) -> np.ndarray:
    return w


def antipodal_map(w: np.ndarray) -> np.ndarray:
    return -w


def angle_doubling(w: np.ndarray) -> np.ndarray:
    a, b = w[..., 0], w[..., 1]
    return np.stack([a * a - b * b, 2 * a * b], axis=-1)

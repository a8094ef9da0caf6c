"""Long knots R^j -> R^n that are standard outside the cube [-1, 1]^j.

All maps are vectorized over leading axes: ``eval`` takes ``(..., j)`` and
returns ``(..., n)``; ``derivative`` returns ``(..., n, j)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

FD_STEP = 1e-5


def _central_difference(func: Callable, x: np.ndarray, h: float) -> np.ndarray:
    """Stack of central differences along each input coordinate on the last axis."""
    x = np.asarray(x, dtype=float)
    j = x.shape[-1]
    cols = []
    for i in range(j):
        step = np.zeros(j)
        step[i] = h
        cols.append((func(x + step) - func(x - step)) / (2 * h))
    return np.stack(cols, axis=-1)


@dataclass(frozen=True)
class LongKnot:
    n: int
    j: int
    name: str
    eval: Callable[[np.ndarray], np.ndarray]
    analytic_derivative: Optional[Callable[[np.ndarray], np.ndarray]] = None
    params: dict = field(default_factory=dict)
    fd_step: float = FD_STEP

    def __post_init__(self):
        if not self.n > self.j >= 1:
            raise ValueError(f"need n > j >= 1, got n={self.n}, j={self.j}")

    def derivative(self, x: np.ndarray) -> np.ndarray:
        if self.analytic_derivative is not None:
            return self.analytic_derivative(np.asarray(x, dtype=float))
        return self.fd_derivative(x)

    def fd_derivative(self, x: np.ndarray, h: Optional[float] = None) -> np.ndarray:
        return _central_difference(self.eval, x, h or self.fd_step)

    def second_derivative(self, x: np.ndarray, h: Optional[float] = None) -> np.ndarray:
        """``(..., n, j, j)`` with ``[..., :, a, b] = d/dx_b (df/dx_a)``, by central differences."""
        return _central_difference(self.derivative, x, h or self.fd_step)


def _inclusion(n: int, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    pad = [(0, 0)] * (x.ndim - 1) + [(0, n - x.shape[-1])]
    return np.pad(x, pad)


def trivial(n: int, j: int) -> LongKnot:
    eye = np.eye(n, j)

    def derivative(x):
        return np.broadcast_to(eye, np.shape(x)[:-1] + (n, j)).copy()

    return LongKnot(n, j, "trivial", lambda x: _inclusion(n, x), derivative)


def bump_profile(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Smooth bump supported in [-1, 1]^j with value 1 at the origin, and its gradient."""
    x = np.asarray(x, dtype=float)
    inside = np.abs(x) < 1
    d = np.where(inside, 1 - x * x, 1.0)
    factors = np.where(inside, np.exp(1 - 1 / d), 0.0)
    beta = np.prod(factors, axis=-1)
    log_grad = np.where(inside, -2 * x / (d * d), 0.0)
    return beta, beta[..., None] * log_grad


def bump(
    n: int,
    j: int,
    direction=None,
    amplitude: float = 0.5,
    twist=None,
) -> LongKnot:
    """``x -> (x, amplitude * beta(x) * (w + B x))`` with ``B = twist`` (zero by default).

    With no twist the image lies in ``R^j x R w``, so every direction between
    knot points stays in a (j+1)-dimensional subspace.  A nonzero twist turns
    the normal direction and gives a knot in general position.
    """
    if amplitude <= 0:
        raise ValueError("amplitude must be positive")
    w = np.zeros(n - j) if direction is None else np.asarray(direction, dtype=float)
    if direction is None:
        w[0] = 1.0
    if w.shape != (n - j,) or not np.isclose(np.linalg.norm(w), 1.0):
        raise ValueError(f"direction must be a unit vector in R^{n - j}")
    b = np.zeros((n - j, j)) if twist is None else np.asarray(twist, dtype=float)
    if b.shape != (n - j, j):
        raise ValueError(f"twist must have shape {(n - j, j)}")

    def normal(x):
        return w + x @ b.T

    def evaluate(x):
        x = np.asarray(x, dtype=float)
        beta, _ = bump_profile(x)
        return np.concatenate([x, amplitude * beta[..., None] * normal(x)], axis=-1)

    def derivative(x):
        beta, grad = bump_profile(x)
        lower = amplitude * (normal(x)[..., :, None] * grad[..., None, :] + beta[..., None, None] * b)
        upper = np.broadcast_to(np.eye(j), lower.shape[:-2] + (j, j))
        return np.concatenate([upper, lower], axis=-2)

    name = "bump" if twist is None else "twisted-bump"
    params = {"direction": w.tolist(), "amplitude": amplitude, "twist": b.tolist()}
    return LongKnot(n, j, name, evaluate, derivative, params)


def default_twist(n: int, j: int) -> np.ndarray:
    """A fixed full-rank twist used by the ``twisted`` knot preset."""
    b = np.zeros((n - j, j))
    for r in range(n - j):
        for c in range(j):
            b[r, c] = 0.6 * np.cos(1.0 + 2.0 * r + 0.7 * c * (r + 1))
    return b


def twisted_bump(n: int, j: int, amplitude: float = 0.5) -> LongKnot:
    return bump(n, j, amplitude=amplitude, twist=default_twist(n, j))


KNOTS = {
    "trivial": trivial,
    "bump": bump,
    "twisted": twisted_bump,
}


def knot_by_name(name: str, n: int, j: int) -> LongKnot:
    try:
        builder = KNOTS[name]
    except KeyError:
        raise ValueError(f"unknown knot {name!r}; choose from {', '.join(KNOTS)}") from None
    return builder(n, j)

"""Majorization, weak majorization and constructive T-transform chains.

``x ≺ y`` ("x is majorized by y") means the descending prefix sums of x never
exceed those of y while the totals agree. Comparisons allow an absolute
slack of :data:`MAJ_TOL` so that classification is stable on the simplex
boundaries; borderline equalities count as satisfied.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput, LengthMismatch, NotMajorized

MAJ_TOL = 1e-10
# Coordinates closer than this are considered pinned while building a chain.
_PIN_TOL = 1e-15


@dataclass(frozen=True)
class TTransformStep:
    """Mix components ``i < j`` with the 2x2 block ``[[t, 1-t], [1-t, t]]``."""

    i: int
    j: int
    t: float

    def __post_init__(self):
        if not (0 <= self.i < self.j):
            raise InvalidInput(f"T-transform needs 0 <= i < j, got ({self.i}, {self.j})")
        if not (0.0 <= self.t <= 1.0):
            raise InvalidInput(f"T-transform weight {self.t} outside [0, 1]")

    def matrix(self, n: int) -> np.ndarray:
        if self.j >= n:
            raise InvalidInput(f"index {self.j} out of range for size {n}")
        m = np.eye(n)
        m[self.i, self.i] = m[self.j, self.j] = self.t
        m[self.i, self.j] = m[self.j, self.i] = 1.0 - self.t
        return m

    def apply(self, v) -> np.ndarray:
        v = np.array(v, dtype=float)
        a, b = v[self.i], v[self.j]
        v[self.i] = self.t * a + (1.0 - self.t) * b
        v[self.j] = (1.0 - self.t) * a + self.t * b
        return v


def _pair(x, y):
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if x.shape != y.shape:
        raise LengthMismatch(f"vectors of length {x.size} and {y.size}")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise InvalidInput("non-finite component")
    return np.sort(x)[::-1], np.sort(y)[::-1]


def _prefix_form(xs, ys, tol):
    return bool(np.all(np.cumsum(xs)[:-1] <= np.cumsum(ys)[:-1] + tol))


def _tail_form(xs, ys, tol):
    tx = np.cumsum(xs[::-1])[::-1][1:]
    ty = np.cumsum(ys[::-1])[::-1][1:]
    return bool(np.all(tx >= ty - tol))


def majorizes(x, y, tol: float = MAJ_TOL) -> bool:
    """Return True iff ``x ≺ y``.

    Both vectors must have the same length and the same total (within
    ``tol``). Order of the input components is irrelevant.
    """
    xs, ys = _pair(x, y)
    if abs(xs.sum() - ys.sum()) > tol:
        raise InvalidInput(f"totals differ: {xs.sum()!r} vs {ys.sum()!r}")
    result = _prefix_form(xs, ys, tol)
    if __debug__:
        assert result == _tail_form(xs, ys, tol), "prefix and tail majorization forms disagree"
    return result


def weakly_submajorized(x, y, tol: float = MAJ_TOL) -> bool:
    """``x ≺_w y``: every descending prefix sum of x, including the full sum,
    is at most that of y. No normalization is assumed."""
    xs, ys = _pair(x, y)
    return bool(np.all(np.cumsum(xs) <= np.cumsum(ys) + tol))


def weakly_supermajorized(x, y, tol: float = MAJ_TOL) -> bool:
    """``x ≺^w y``: every tail sum of the descending vectors (the sum of the
    ``N-k+1`` smallest components, k = 1..N) of x is at least that of y."""
    xs, ys = _pair(x, y)
    tx = np.cumsum(xs[::-1])
    ty = np.cumsum(ys[::-1])
    return bool(np.all(tx >= ty - tol))


def t_transform_chain(x, y, tol: float = MAJ_TOL) -> list[TTransformStep]:
    """T-transforms taking sorted ``y`` to sorted ``x`` when ``x ≺ y``.

    Applying the returned steps to ``sorted(y, reverse=True)`` in order gives
    ``sorted(x, reverse=True)``. Each step pins at least one coordinate to
    its final value, so at most ``N - 1`` steps are produced.

    At every step j is the last index where y still exceeds x and k the
    first index after it where y falls short; moving ``min(y_j - x_j,
    x_k - y_k)`` from j to k is a T-transform on (j, k) that keeps ``x ≺ y``.
    """
    if not majorizes(x, y, tol):
        raise NotMajorized("x is not majorized by y")
    xs, ys = _pair(x, y)
    cur = ys.copy()
    steps: list[TTransformStep] = []
    n = xs.size
    for _ in range(n):
        diff = cur - xs
        above = np.nonzero(diff > _PIN_TOL)[0]
        if above.size == 0:
            break
        j = int(above[-1])
        below = np.nonzero(diff[j + 1:] < -_PIN_TOL)[0]
        if below.size == 0:
            # only possible when x exceeds y by less than the slack
            break
        k = j + 1 + int(below[0])
        give, take = cur[j] - xs[j], xs[k] - cur[k]
        gap = cur[j] - cur[k]
        delta = min(give, take)
        t = min(max(1.0 - delta / gap, 0.0), 1.0)
        step = TTransformStep(j, k, t)
        cur = step.apply(cur)
        if give <= take:
            cur[j] = xs[j]
        if take <= give:
            cur[k] = xs[k]
        steps.append(step)
    return steps


def apply_chain(chain, y) -> np.ndarray:
    """Apply T-transform steps, in order, to ``y`` sorted descending."""
    v = np.sort(np.asarray(y, dtype=float).ravel())[::-1]
    for step in chain:
        v = step.apply(v)
    return v


def chain_matrix(chain, n: int) -> np.ndarray:
    """Bistochastic product ``T_m ... T_1`` of a chain."""
    b = np.eye(n)
    for step in chain:
        b = step.matrix(n) @ b
    return b


def horn_unistochastic(chain, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Orthogonal ``U`` and unistochastic ``B = |U|^2`` realizing a chain.

    Each step (i, j, t) becomes a planar rotation with ``cos^2 = t``. For
    chains from :func:`t_transform_chain` every rotation couples two
    coordinates that no earlier rotation has connected, so the diagonal of
    ``U diag(y) U^T`` equals the chain output and ``B @ y_sorted`` is the
    sorted target.
    """
    u = np.eye(n)
    for step in chain:
        c = np.sqrt(step.t)
        s = np.sqrt(1.0 - step.t)
        r = np.eye(n)
        r[step.i, step.i] = r[step.j, step.j] = c
        r[step.i, step.j] = s
        r[step.j, step.i] = -s
        u = r @ u
    return u.astype(complex), np.abs(u) ** 2


def is_bistochastic(b, tol: float = 1e-10) -> bool:
    b = np.asarray(b, dtype=float)
    return bool(
        b.ndim == 2
        and b.shape[0] == b.shape[1]
        and np.all(b >= -tol)
        and np.allclose(b.sum(axis=0), 1.0, atol=tol, rtol=0)
        and np.allclose(b.sum(axis=1), 1.0, atol=tol, rtol=0)
    )

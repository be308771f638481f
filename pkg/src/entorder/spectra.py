"""Renyi entropies and symmetric-function monotones of probability vectors.

All entropies are in nats. A probability vector here is any nonnegative
real vector summing to one; it may be the spectrum of a density matrix or
the Schmidt vector of a pure bipartite state.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import BadOrder, InvalidInput

SUM_TOL = 1e-12
# Components below this count as zero for rank (alpha = 0) purposes.
ZERO_THRESHOLD = 1e-12
_SHANNON_WINDOW = 1e-6
_LARGE_ALPHA = 1e3


def probability_vector(x, tol: float = SUM_TOL) -> np.ndarray:
    """Validate ``x`` as a probability vector and return it as a float array.

    Entries in ``(-tol, 0)`` are clamped to zero; anything more negative,
    non-finite, or a total off by more than ``tol`` raises InvalidInput.
    """
    x = np.array(x, dtype=float).ravel()
    if x.size == 0 or not np.all(np.isfinite(x)):
        raise InvalidInput("probability vector must be non-empty and finite")
    if np.any(x < -tol):
        raise InvalidInput(f"negative component {x.min():.3e}")
    x[x < 0] = 0.0
    total = x.sum()
    if abs(total - 1.0) > tol:
        raise InvalidInput(f"components sum to {total!r}, not 1")
    return x


def _alpha(alpha) -> float:
    if isinstance(alpha, str):
        if alpha.strip().lower() in ("inf", "infinity", "+inf"):
            return math.inf
        alpha = float(alpha)
    alpha = float(alpha)
    if math.isnan(alpha) or alpha < 0:
        raise InvalidInput(f"entropy order must be >= 0, got {alpha}")
    return alpha


def shannon_entropy(x) -> float:
    """``-sum x ln x`` with ``0 ln 0 = 0``."""
    x = probability_vector(x)
    nz = x[x > 0]
    return float(max(-(nz * np.log(nz)).sum(), 0.0))


def renyi_entropy(x, alpha) -> float:
    """Renyi entropy ``ln(sum x_i^alpha) / (1 - alpha)`` of order ``alpha``.

    ``alpha`` may be any nonnegative float, ``math.inf`` or the string
    ``"inf"``. Orders within 1e-6 of one use the Shannon formula, order zero
    counts components above :data:`ZERO_THRESHOLD`, and order infinity is
    ``-ln max x``.
    """
    x = probability_vector(x)
    a = _alpha(alpha)
    if a == 0.0:
        return math.log(int(np.count_nonzero(x > ZERO_THRESHOLD)))
    if abs(a - 1.0) <= _SHANNON_WINDOW:
        return shannon_entropy(x)
    xmax = float(x.max())
    if math.isinf(a):
        return max(-math.log(xmax), 0.0)
    nz = x[x > 0]
    if abs(a - 1.0) < 0.5:
        # sum x^a = 1 + sum x (x^(a-1) - 1); avoids cancellation near a = 1
        val = math.log1p(float(np.sum(nz * np.expm1((a - 1.0) * np.log(nz))))) / (1.0 - a)
    elif a > 1.0:
        # factor out the largest component: stable for large alpha
        s = float(np.sum((nz / xmax) ** a))
        val = (a * math.log(xmax) + math.log(s)) / (1.0 - a)
        if a > _LARGE_ALPHA:
            val = max(val, -math.log(xmax))
    else:
        val = math.log(float(np.sum(nz**a))) / (1.0 - a)
    return max(val, 0.0)


def participation_ratio(x) -> float:
    """Inverse participation ratio ``1 / sum x_i^2``, between 1 and N."""
    x = probability_vector(x)
    return float(1.0 / np.dot(x, x))


def elementary_symmetric(x, k: int) -> float:
    """Elementary symmetric polynomial ``e_k``: sum over k-subsets of products."""
    x = probability_vector(x)
    n = x.size
    if not 2 <= k <= n:
        raise BadOrder(f"order k must lie in [2, {n}], got {k}")
    # e[j] holds e_j of the prefix processed so far
    e = np.zeros(k + 1)
    e[0] = 1.0
    for xi in x:
        e[1:] = e[1:] + xi * e[:-1]
    return float(max(e[k], 0.0))


def product_distribution(x, y) -> np.ndarray:
    """Flattened outer product of two probability vectors."""
    return np.outer(probability_vector(x), probability_vector(y)).ravel()

"""Deterministic and probabilistic LOCC conversion between pure states.

Pure states enter only through their Schmidt vectors. ``psi -> phi`` is
possible with certainty iff ``lambda(psi) ≺ lambda(phi)``; otherwise the
optimal success probability is ``min_k E_k(psi) / E_k(phi)`` over the tail
sums ``E_k``.
"""
from __future__ import annotations

import enum

import numpy as np

from .errors import InvalidInput, LengthMismatch
from .majorize import MAJ_TOL, majorizes, weakly_supermajorized
from .schmidt import haar_random_state, schmidt_coefficients, schmidt_vector

# Tail sums below this are zero when forming E_k ratios.
_TAIL_ZERO = 1e-14
INTERCONVERTIBLE_TOL = 1e-10


class CausalClass(enum.Enum):
    INTERCONVERTIBLE = "Interconvertible"
    FUTURE = "Future"
    PAST = "Past"
    INCOMPARABLE = "Incomparable"

    def __str__(self):
        return self.value


def _pair(a, b):
    a = schmidt_vector(a)
    b = schmidt_vector(b)
    if a.size != b.size:
        raise LengthMismatch(f"Schmidt vectors of length {a.size} and {b.size}")
    return a, b


def can_convert(lam_psi, lam_phi) -> bool:
    """True iff psi can be turned into phi by LOCC with certainty."""
    a, b = _pair(lam_psi, lam_phi)
    return majorizes(a, b)


def conversion_probability(lam_psi, lam_phi) -> float:
    """Optimal probability of converting psi into phi by LOCC.

    Tail-sum ratios where both sums vanish impose no constraint, as do
    those with a vanishing denominator only. A vanishing numerator (phi has
    larger Schmidt rank than psi) gives probability zero.
    """
    a, b = _pair(lam_psi, lam_phi)
    if majorizes(a, b):
        return 1.0
    ea = np.cumsum(a[::-1])[::-1]
    eb = np.cumsum(b[::-1])[::-1]
    p = 1.0
    for num, den in zip(ea[1:], eb[1:]):
        if den < _TAIL_ZERO:
            continue
        if num < _TAIL_ZERO:
            return 0.0
        p = min(p, num / den)
    return float(p)


def max_weak_probability(lam_psi, lam_phi, iterations: int = 200) -> float:
    """Largest ``p`` in [0, 1] with ``lambda(psi) ≺^w p lambda(phi)``, by bisection.

    Independent route to :func:`conversion_probability`; comparisons are
    exact (no slack) so the bracket closes on the true boundary.
    """
    a, b = _pair(lam_psi, lam_phi)
    if weakly_supermajorized(a, b, tol=0.0):
        return 1.0
    lo, hi = 0.0, 1.0
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if weakly_supermajorized(a, mid * b, tol=0.0):
            lo = mid
        else:
            hi = mid
    return lo


def classify(lam_ref, lam_q) -> CausalClass:
    """Position of ``lam_q`` in the light cone of ``lam_ref``.

    FUTURE: reachable from ref by deterministic LOCC; PAST: ref is reachable
    from q; INTERCONVERTIBLE: equal up to permutation (sup-norm 1e-10 after
    sorting).
    """
    a, b = _pair(lam_ref, lam_q)
    if np.max(np.abs(a - b)) <= INTERCONVERTIBLE_TOL:
        return CausalClass.INTERCONVERTIBLE
    if majorizes(a, b, MAJ_TOL):
        return CausalClass.FUTURE
    if majorizes(b, a, MAJ_TOL):
        return CausalClass.PAST
    return CausalClass.INCOMPARABLE


def incomparability_fraction(n: int, samples: int, seed: int) -> float:
    """Monte Carlo fraction of Haar random ``n x n`` pairs that are incomparable.

    Pair ``i`` draws from ``default_rng((seed, i))`` so any partition of the
    index range gives the same result.
    """
    if n < 2 or samples < 1:
        raise InvalidInput("need n >= 2 and samples >= 1")
    hits = 0
    for i in range(samples):
        rng = np.random.default_rng((seed, i))
        a = schmidt_coefficients(haar_random_state(n, n, rng))
        b = schmidt_coefficients(haar_random_state(n, n, rng))
        if classify(a / a.sum(), b / b.sum()) is CausalClass.INCOMPARABLE:
            hits += 1
    return hits / samples

"""Entanglement measures of pure states expressed through the Schmidt vector.

Every measure in :class:`MeasureRecord` is a monotone function of one Renyi
entropy of the Schmidt vector:

* Schmidt rank                      -> order 0
* maximal fidelity, negativity,
  robustness                        -> order 1/2
* entropy of entanglement           -> order 1
* Bures distance to closest
  separable mixed state             -> order 2
* distances to the closest separable
  pure state (FS, trace, HS, Bures) -> order infinity, through
  ``kappa = lambda_max``

Distances are reported as distances, never squared.

The closest separable mixed state ``sum_k lambda_k |kk><kk|`` is optimal for
two qubits; for larger N it is the conjectured optimum, used as such here.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .schmidt import SchmidtDecomposition, schmidt_vector
from .spectra import ZERO_THRESHOLD, renyi_entropy


@dataclass(frozen=True)
class MeasureRecord:
    schmidt_rank: int
    entropy_of_entanglement: float
    negativity: float
    robustness: float
    max_fidelity: float
    bures_to_separable_mixed: float
    fs_to_separable_pure: float
    trace_to_separable_pure: float
    hs_to_separable_pure: float
    bures_to_separable_pure: float

    def to_json(self) -> dict:
        return asdict(self)


def measure_suite(lam) -> MeasureRecord:
    """Evaluate every pure-state measure on a Schmidt vector."""
    lam = schmidt_vector(lam)
    n = lam.size
    root_sum = float(np.sqrt(lam).sum())
    neg = max(root_sum**2 - 1.0, 0.0)
    purity = float(np.dot(lam, lam))
    kappa = float(lam[0])
    return MeasureRecord(
        schmidt_rank=int(np.count_nonzero(lam > ZERO_THRESHOLD)),
        entropy_of_entanglement=renyi_entropy(lam, 1),
        negativity=neg,
        robustness=neg,
        max_fidelity=min(root_sum**2 / n, 1.0),
        bures_to_separable_mixed=math.sqrt(max(2.0 - 2.0 * math.sqrt(purity), 0.0)),
        fs_to_separable_pure=math.acos(min(math.sqrt(kappa), 1.0)),
        trace_to_separable_pure=2.0 * math.sqrt(max(1.0 - kappa, 0.0)),
        hs_to_separable_pure=math.sqrt(max(2.0 - 2.0 * kappa, 0.0)),
        bures_to_separable_pure=math.sqrt(max(2.0 - 2.0 * math.sqrt(kappa), 0.0)),
    )


def closest_separable_mixed(decomp: SchmidtDecomposition) -> np.ndarray:
    """``sum_k lambda_k |k'k''><k'k''|`` in the decomposition's product basis."""
    lam = decomp.lambdas
    dim = decomp.basis_a.shape[0] * decomp.basis_b.shape[0]
    rho = np.zeros((dim, dim), dtype=np.complex128)
    for k in range(lam.size):
        if lam[k] > 0:
            v = decomp.product_vector(k)
            rho += lam[k] * np.outer(v, v.conj())
    return rho


def closest_separable_pure(decomp: SchmidtDecomposition) -> np.ndarray:
    """Product state vector built from the largest Schmidt coefficient."""
    return decomp.product_vector(0)


def vidal_monotones(lam) -> np.ndarray:
    """Tail sums ``E_k = sum_{i>=k} lambda_i`` for ``k = 2..N``."""
    lam = schmidt_vector(lam)
    tails = np.cumsum(lam[::-1])[::-1]
    return tails[1:].copy()

"""Dense complex linear algebra used by the rest of the package.

The eigensolver is a cyclic Jacobi method on complex Hermitian matrices.
Each rotation first removes the phase of the pivot with a diagonal unitary
and then annihilates the (now real) pivot with a planar rotation, so the
iteration never leaves the Hermitian manifold. Matrices here are small
(N <= ~64) and the method converges unconditionally.
"""
from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np
from numba import njit

from .errors import DimensionMismatch, InvalidInput, NoConvergence, NotHermitian

HERMITIAN_TOL = 1e-12
OFFDIAG_TOL = 1e-13
MAX_SWEEPS = 100
PSD_CLAMP = 1e-12


class EigenSystem(NamedTuple):
    """Eigenvalues (descending) and eigenvectors (columns) of a Hermitian matrix."""

    values: np.ndarray
    vectors: np.ndarray


@njit(cache=True)
def _jacobi_sweeps(a, tol, max_sweeps):
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for p in range(n):
            for q in range(p + 1, n):
                off += a[p, q].real ** 2 + a[p, q].imag ** 2
        off = math.sqrt(2.0 * off)
        if off <= tol:
            return v, sweep, off
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= 1e-300:
                    continue
                conj_phase = np.conj(apq) / mag
                app = a[p, p].real
                aqq = a[q, q].real
                theta = (aqq - app) / (2.0 * mag)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                # J = diag(1, e^{-i phi}) @ [[c, s], [-s, c]]
                j00 = c + 0j
                j01 = s + 0j
                j10 = -s * conj_phase
                j11 = c * conj_phase
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = akp * j00 + akq * j10
                    a[k, q] = akp * j01 + akq * j11
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = np.conj(j00) * apk + np.conj(j10) * aqk
                    a[q, k] = np.conj(j01) * apk + np.conj(j11) * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = app - t * mag
                a[q, q] = aqq + t * mag
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = vkp * j00 + vkq * j10
                    v[k, q] = vkp * j01 + vkq * j11
    return v, -1, off


def _as_square(h, name="matrix"):
    h = np.asarray(h, dtype=np.complex128)
    if h.ndim != 2 or h.shape[0] != h.shape[1] or h.shape[0] < 1:
        raise DimensionMismatch(f"{name} must be a non-empty square matrix, got shape {h.shape}")
    if not np.all(np.isfinite(h)):
        raise InvalidInput(f"{name} has non-finite entries")
    return h


def hermitian_eigensystem(h, *, psd: bool = False) -> EigenSystem:
    """Diagonalize a complex Hermitian matrix with cyclic Jacobi rotations.

    Parameters
    ----------
    h : array_like, shape (n, n)
        Hermitian matrix. Asymmetry above ``1e-12 * ||h||_F`` raises
        :class:`NotHermitian`.
    psd : bool
        Set for matrices known to be positive semidefinite; eigenvalues in
        ``(-1e-12, 0)`` are then clamped to exactly zero.

    Returns
    -------
    EigenSystem
        ``values`` sorted descending (stable for ties) and a unitary matrix
        whose columns are the matching eigenvectors.
    """
    h = _as_square(h)
    norm = float(np.linalg.norm(h))
    if np.linalg.norm(h - h.conj().T) > HERMITIAN_TOL * max(norm, 1e-300):
        raise NotHermitian("matrix is not Hermitian within 1e-12 relative")
    n = h.shape[0]
    if norm == 0.0:
        return EigenSystem(np.zeros(n), np.eye(n, dtype=np.complex128))
    a = 0.5 * (h + h.conj().T)
    v, sweeps, off = _jacobi_sweeps(a, OFFDIAG_TOL * norm, MAX_SWEEPS)
    if sweeps < 0:
        raise NoConvergence(f"Jacobi iteration stalled at off-diagonal norm {off:.3e}")
    w = a.diagonal().real.copy()
    order = np.argsort(-w, kind="stable")
    w = w[order]
    v = v[:, order]
    if psd:
        w[(w < 0) & (w > -PSD_CLAMP)] = 0.0
    return EigenSystem(w, v)


def eigvalsh(h, *, psd: bool = False) -> np.ndarray:
    """Descending eigenvalues of a Hermitian matrix."""
    return hermitian_eigensystem(h, psd=psd).values


def _check_dims(rho, dims):
    rho = _as_square(rho, "rho")
    try:
        na, nb = (int(d) for d in dims)
    except (TypeError, ValueError):
        raise DimensionMismatch(f"dims must be a pair of integers, got {dims!r}") from None
    if na < 1 or nb < 1 or rho.shape[0] != na * nb:
        raise DimensionMismatch(f"matrix of size {rho.shape[0]} does not match dims {na}x{nb}")
    return rho, na, nb


def partial_trace(rho, which_side: str, dims) -> np.ndarray:
    """Trace out one subsystem of a bipartite operator.

    The composite basis is ordered as ``kron(A, B)``. ``which_side`` names the
    subsystem that is removed: ``"B"`` returns the reduced operator on A and
    ``"A"`` the one on B.
    """
    rho, na, nb = _check_dims(rho, dims)
    t = rho.reshape(na, nb, na, nb)
    side = which_side.upper()
    if side == "B":
        return np.einsum("ajbj->ab", t)
    if side == "A":
        return np.einsum("iaib->ab", t)
    raise DimensionMismatch(f"which_side must be 'A' or 'B', got {which_side!r}")


def partial_transpose(rho, dims, side: str = "B") -> np.ndarray:
    """Transpose the indices of one subsystem. An exact involution."""
    rho, na, nb = _check_dims(rho, dims)
    t = rho.reshape(na, nb, na, nb)
    side = side.upper()
    if side == "B":
        t = t.transpose(0, 3, 2, 1)
    elif side == "A":
        t = t.transpose(2, 1, 0, 3)
    else:
        raise DimensionMismatch(f"side must be 'A' or 'B', got {side!r}")
    return np.ascontiguousarray(t).reshape(na * nb, na * nb)


def trace_norm(h) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.abs(eigvalsh(h)).sum())


def psd_sqrt(rho) -> np.ndarray:
    """Principal square root of a positive semidefinite Hermitian matrix."""
    w, v = hermitian_eigensystem(rho, psd=True)
    return (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T


def fidelity_root(rho, sigma) -> float:
    """``tr sqrt(sqrt(rho) sigma sqrt(rho))`` for two density matrices.

    Eigenvalues of the inner product below ``1e-13`` of its largest one are
    numerical noise from rank deficiency and are dropped before the square
    root (their roots would otherwise contribute ~1e-8 each).
    """
    r = psd_sqrt(rho)
    m = r @ np.asarray(sigma, dtype=np.complex128) @ r
    w = eigvalsh(0.5 * (m + m.conj().T))
    floor = 1e-13 * max(float(w[0]), 0.0)
    w = np.where(w > floor, w, 0.0)
    return float(np.sqrt(w).sum())


def bures_distance(rho, sigma) -> float:
    """Bures distance ``sqrt(2 - 2 tr|sqrt(rho) sigma sqrt(rho)|^(1/2))``."""
    f = min(fidelity_root(rho, sigma), 1.0)
    return math.sqrt(max(2.0 - 2.0 * f, 0.0))


def hs_distance(rho, sigma) -> float:
    """Hilbert-Schmidt distance ``sqrt(tr (rho - sigma)^2)``."""
    d = np.asarray(rho) - np.asarray(sigma)
    return float(np.sqrt(np.abs(np.vdot(d, d))))

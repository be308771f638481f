"""Pure bipartite states, their Schmidt decomposition and Haar sampling.

Conventions
-----------
A state on ``H_A ⊗ H_B`` is stored as its coefficient matrix ``C`` of shape
``(dim_a, dim_b)``: row index = basis state of A, column index = basis state
of B, so the state vector is ``C.ravel()`` in ``kron(A, B)`` order.

The Schmidt vector is always sorted descending, with ties kept in the order
produced by the eigensolver (stable sort). In the decomposition
``C = sum_k sqrt(lambda_k) u_k v_k^T`` each column ``u_k`` of ``basis_a`` has
its first nonzero component real and positive; ``v_k`` is then fixed by the
state. Columns of ``basis_b`` that span the kernel follow the same
first-component convention.

Random numbers come from :class:`numpy.random.Generator` (PCG64). Every
sampler takes either an integer seed or a Generator owned by the caller.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import AngleOutOfRange, DimensionMismatch, InvalidInput, NotNormalized, WrongDimension
from .numkernel import hermitian_eigensystem
from .spectra import SUM_TOL, ZERO_THRESHOLD, probability_vector

NORM_TOL = 1e-12


def _readonly(a):
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class PureBipartiteState:
    """Normalized pure state given by its ``dim_a x dim_b`` coefficient matrix."""

    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.complex128)
        if c.ndim != 2 or min(c.shape) < 1:
            raise DimensionMismatch(f"coefficient matrix must be 2-D, got shape {c.shape}")
        if not np.all(np.isfinite(c)):
            raise InvalidInput("coefficients must be finite")
        norm2 = float(np.vdot(c, c).real)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise NotNormalized(f"<psi|psi> = {norm2!r}")
        object.__setattr__(self, "coeffs", _readonly(c))

    @classmethod
    def from_vector(cls, vec, dim_a: int, dim_b: int) -> "PureBipartiteState":
        vec = np.asarray(vec, dtype=np.complex128).ravel()
        if vec.size != dim_a * dim_b:
            raise DimensionMismatch(f"{vec.size} amplitudes for a {dim_a}x{dim_b} system")
        return cls(vec.reshape(dim_a, dim_b))

    @property
    def dim_a(self) -> int:
        return self.coeffs.shape[0]

    @property
    def dim_b(self) -> int:
        return self.coeffs.shape[1]

    @property
    def vector(self) -> np.ndarray:
        return self.coeffs.ravel()

    def density_matrix(self) -> np.ndarray:
        v = self.vector
        return np.outer(v, v.conj())

    def local_unitary(self, ua, ub) -> "PureBipartiteState":
        """The state ``(ua ⊗ ub)|psi>``."""
        return PureBipartiteState(np.asarray(ua) @ self.coeffs @ np.asarray(ub).T)

    def to_json(self) -> dict:
        c = self.coeffs.ravel()
        return {"dim_a": self.dim_a, "dim_b": self.dim_b, "re": c.real.tolist(), "im": c.imag.tolist()}

    @classmethod
    def from_json(cls, obj) -> "PureBipartiteState":
        if isinstance(obj, (str, bytes)):
            obj = json.loads(obj)
        try:
            na, nb = int(obj["dim_a"]), int(obj["dim_b"])
            re = np.asarray(obj["re"], dtype=float)
            im = np.asarray(obj.get("im", np.zeros_like(re)), dtype=float)
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed state JSON: {exc}") from None
        if re.shape != im.shape:
            raise InvalidInput("'re' and 'im' lengths differ")
        return cls.from_vector(re + 1j * im, na, nb)


@dataclass(frozen=True, eq=False)
class SchmidtDecomposition:
    lambdas: np.ndarray
    basis_a: np.ndarray
    basis_b: np.ndarray

    @property
    def rank(self) -> int:
        return int(np.count_nonzero(self.lambdas > ZERO_THRESHOLD))

    def reconstruct(self) -> np.ndarray:
        k = self.lambdas.size
        return (self.basis_a[:, :k] * np.sqrt(self.lambdas)) @ self.basis_b[:, :k].T

    def product_vector(self, k: int) -> np.ndarray:
        """The product basis vector ``|k'> ⊗ |k''>`` as a flat array."""
        return np.kron(self.basis_a[:, k], self.basis_b[:, k])


def schmidt_vector(values, tol: float = SUM_TOL) -> np.ndarray:
    """Validate a Schmidt vector and return it sorted descending."""
    x = probability_vector(values, tol)
    return np.sort(x, kind="stable")[::-1].copy()


def _fix_phases(m):
    """Rotate each column so its first component above 1e-12 is real positive."""
    m = m.copy()
    for k in range(m.shape[1]):
        col = m[:, k]
        idx = np.nonzero(np.abs(col) > 1e-12)[0]
        if idx.size:
            z = col[idx[0]]
            m[:, k] = col * (abs(z) / z)
    return m


def _complete_basis(cols, n):
    """Extend orthonormal columns to an ``n x n`` unitary (Gram-Schmidt on e_i)."""
    basis = [c for c in cols.T]
    for i in range(n):
        if len(basis) == n:
            break
        e = np.zeros(n, dtype=np.complex128)
        e[i] = 1.0
        for b in basis:
            e -= np.vdot(b, e) * b
        nrm = np.linalg.norm(e)
        if nrm > 1e-8:
            basis.append(e / nrm)
    return np.column_stack(basis) if basis else np.zeros((n, 0), dtype=np.complex128)


def schmidt_decompose(psi: PureBipartiteState) -> SchmidtDecomposition:
    """Schmidt coefficients and local bases of a pure bipartite state.

    The coefficients are the eigenvalues of ``C C^dagger`` (the reduced
    density matrix of A); the vector has ``min(dim_a, dim_b)`` entries.
    """
    c = psi.coeffs
    na, nb = c.shape
    n = min(na, nb)
    w, u = hermitian_eigensystem(c @ c.conj().T, psd=True)
    u = _fix_phases(u)
    lam = np.clip(w[:n], 0.0, None)
    vcols = []
    for k in range(n):
        if lam[k] > ZERO_THRESHOLD:
            vcols.append(c.T @ u[:, k].conj() / math.sqrt(lam[k]))
    v = np.column_stack(vcols) if vcols else np.zeros((nb, 0), dtype=np.complex128)
    r = v.shape[1]
    rest = _complete_basis(v, nb)[:, r:]
    v = np.column_stack([v, _fix_phases(rest)]) if rest.size else v
    return SchmidtDecomposition(_readonly(lam), _readonly(u), _readonly(v))


def schmidt_coefficients(psi: PureBipartiteState) -> np.ndarray:
    """Descending Schmidt vector only (skips basis construction)."""
    c = psi.coeffs
    if c.shape[0] > c.shape[1]:
        c = c.T
    w = hermitian_eigensystem(c @ c.conj().T, psd=True).values
    return np.clip(w, 0.0, None)


def schmidt_angle(lam) -> float:
    """Schmidt angle ``beta`` in ``[0, pi/4]`` with ``lambda_1 = cos^2 beta``."""
    lam = schmidt_vector(lam)
    if lam.size != 2:
        raise WrongDimension(f"Schmidt angle needs N = 2, got N = {lam.size}")
    return math.acos(min(math.sqrt(lam[0]), 1.0))


def state_from_hyperspherical(angles) -> PureBipartiteState:
    """2x2 state from polar angles ``(t1, t2, t3)`` and phases ``(p1, p2, p3)``.

    ``angles = (t1, t2, t3, p1, p2, p3)`` gives the amplitudes
    ``(cos t3, sin t3 cos t2 e^{i p3}, sin t3 sin t2 cos t1 e^{i p2},
    sin t3 sin t2 sin t1 e^{i p1})`` on the corners ``(--, -+, +-, ++)``,
    i.e. row = first qubit, column = second qubit with ``-`` before ``+``.
    """
    a = np.asarray(angles, dtype=float).ravel()
    if a.size != 6:
        raise WrongDimension(f"expected 3 polar + 3 azimuthal angles, got {a.size} values")
    t1, t2, t3, p1, p2, p3 = a
    for t in (t1, t2, t3):
        if not 0.0 <= t <= math.pi / 2:
            raise AngleOutOfRange(f"polar angle {t} outside [0, pi/2]")
    for p in (p1, p2, p3):
        if not 0.0 <= p < 2 * math.pi:
            raise AngleOutOfRange(f"azimuthal angle {p} outside [0, 2pi)")
    s3, s2 = math.sin(t3), math.sin(t2)
    amp = np.array(
        [
            math.cos(t3),
            s3 * math.cos(t2) * np.exp(1j * p3),
            s3 * s2 * math.cos(t1) * np.exp(1j * p2),
            s3 * s2 * math.sin(t1) * np.exp(1j * p1),
        ],
        dtype=np.complex128,
    )
    amp /= np.linalg.norm(amp)
    return PureBipartiteState(amp.reshape(2, 2))


def as_generator(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def haar_random_state(dim_a: int, dim_b: int, seed) -> PureBipartiteState:
    """Unitarily invariant random pure state (normalized complex Gaussian)."""
    if dim_a < 1 or dim_b < 1:
        raise DimensionMismatch("dimensions must be positive")
    rng = as_generator(seed)
    z = rng.standard_normal((dim_a, dim_b)) + 1j * rng.standard_normal((dim_a, dim_b))
    return PureBipartiteState(z / np.linalg.norm(z))


def haar_random_unitary(n: int, seed) -> np.ndarray:
    """Haar unitary from the QR decomposition of a complex Ginibre matrix."""
    rng = as_generator(seed)
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def schmidt_angle_cdf(beta):
    """CDF of the Schmidt angle of Haar random 2x2 states.

    Integrates the density ``3 cos(2b) sin(4b)`` on ``[0, pi/4]``.
    """
    b = np.clip(np.asarray(beta, dtype=float), 0.0, math.pi / 4)
    return 1.0 - np.cos(2 * b) ** 3

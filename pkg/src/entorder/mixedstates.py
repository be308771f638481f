"""Density matrices, random external fields and the majorization arrow of time.

A random external field is the unital channel ``rho -> sum_i p_i U_i rho U_i^dagger``.
Its output spectrum is always majorized by the input spectrum, and every
spectrum majorized by the input is reachable by such a channel:
:func:`channel_from_target` builds one from a T-transform chain.

A T-step with weight t on components (i, j) is realized as the mixture of
the identity (weight t) and the real rotation by pi/2 in the (i, j) plane
(weight 1 - t). On a state diagonal in the working basis this maps the
diagonal exactly by the T-transform and keeps the state diagonal.
"""
from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, InvalidInput, NotMajorized
from .majorize import MAJ_TOL, majorizes, t_transform_chain
from .numkernel import eigvalsh, partial_trace
from .schmidt import as_generator, haar_random_unitary
from .spectra import ZERO_THRESHOLD, renyi_entropy

DM_TOL = 1e-12
UNITARY_TOL = 1e-10
NK_ALPHAS = (0.0, 0.5, 1.0, 2.0, math.inf)


def density_matrix(mat, tol: float = DM_TOL) -> np.ndarray:
    """Validate a density matrix: Hermitian, unit trace, no eigenvalue below ``-tol``."""
    rho = np.array(mat, dtype=np.complex128)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise DimensionMismatch(f"density matrix must be square, got {rho.shape}")
    if not np.all(np.isfinite(rho)):
        raise InvalidInput("density matrix has non-finite entries")
    if np.max(np.abs(rho - rho.conj().T)) > tol:
        raise InvalidInput("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > tol:
        raise InvalidInput(f"trace is {np.trace(rho).real!r}, not 1")
    if eigvalsh(rho)[-1] < -tol:
        raise InvalidInput("density matrix has a negative eigenvalue")
    return 0.5 * (rho + rho.conj().T)


def spectrum(rho) -> np.ndarray:
    """Descending eigenvalues of a density matrix.

    Values below the rank threshold (1e-12) are set to zero: roundoff of
    order 1e-16 would otherwise leak into ``S_alpha`` for ``alpha < 1``
    through ``lambda^alpha``.
    """
    w = eigvalsh(rho, psd=True)
    w[w < ZERO_THRESHOLD] = 0.0
    return w


def renyi_entropy_of(rho, alpha) -> float:
    """Quantum Renyi entropy ``ln tr rho^alpha / (1 - alpha)``."""
    return renyi_entropy(spectrum(rho), alpha)


def dm_to_json(rho) -> dict:
    rho = np.asarray(rho, dtype=np.complex128)
    return {"dim": rho.shape[0], "re": rho.real.ravel().tolist(), "im": rho.imag.ravel().tolist()}


def dm_from_json(obj) -> np.ndarray:
    if isinstance(obj, (str, bytes)):
        obj = json.loads(obj)
    try:
        n = int(obj["dim"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", np.zeros_like(re)), dtype=float)
        mat = (re + 1j * im).reshape(n, n)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"malformed density-matrix JSON: {exc}") from None
    return density_matrix(mat)


@dataclass(frozen=True, eq=False)
class RandomFieldChannel:
    """Unital channel ``sum_i weights[i] U_i rho U_i^dagger``."""

    weights: np.ndarray
    unitaries: tuple = field(repr=False)

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float).ravel()
        us = tuple(np.asarray(u, dtype=np.complex128) for u in self.unitaries)
        if w.size != len(us) or w.size == 0:
            raise InvalidInput("need one weight per unitary")
        if np.any(w < 0) or abs(w.sum() - 1.0) > 1e-12:
            raise InvalidInput("weights must form a probability vector")
        n = us[0].shape[0]
        for u in us:
            if u.shape != (n, n):
                raise DimensionMismatch("unitaries of different sizes")
            if np.max(np.abs(u.conj().T @ u - np.eye(n))) > UNITARY_TOL:
                raise InvalidInput("channel factor is not unitary")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "unitaries", us)

    @property
    def dim(self) -> int:
        return self.unitaries[0].shape[0]

    def then(self, other: "RandomFieldChannel") -> "RandomFieldChannel":
        """Channel applying ``self`` first and ``other`` second."""
        ws, us = [], []
        for w2, u2 in zip(other.weights, other.unitaries):
            for w1, u1 in zip(self.weights, self.unitaries):
                if w1 * w2 > 0:
                    ws.append(w1 * w2)
                    us.append(u2 @ u1)
        w = np.array(ws)
        return RandomFieldChannel(w / w.sum(), tuple(us))

    def conjugated(self, basis) -> "RandomFieldChannel":
        """The same channel expressed in another basis: ``U_i -> W U_i W^dagger``."""
        w = np.asarray(basis, dtype=np.complex128)
        return RandomFieldChannel(self.weights, tuple(w @ u @ w.conj().T for u in self.unitaries))


def identity_channel(n: int) -> RandomFieldChannel:
    return RandomFieldChannel(np.ones(1), (np.eye(n),))


def apply_channel(rho, ch: RandomFieldChannel) -> np.ndarray:
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.shape != (ch.dim, ch.dim):
        raise DimensionMismatch(f"state of size {rho.shape[0]} and channel of size {ch.dim}")
    out = np.zeros_like(rho)
    for w, u in zip(ch.weights, ch.unitaries):
        out += w * (u @ rho @ u.conj().T)
    return 0.5 * (out + out.conj().T)


def quarter_turn(n: int, i: int, j: int) -> np.ndarray:
    """Real rotation by pi/2 in the (i, j) plane: swaps |i> and |j> up to a sign."""
    u = np.eye(n, dtype=np.complex128)
    u[i, i] = u[j, j] = 0.0
    u[i, j] = 1.0
    u[j, i] = -1.0
    return u


def t_step_channel(n: int, i: int, j: int, t: float) -> RandomFieldChannel:
    """Mixture realizing the T-transform with weight ``t`` on components (i, j)."""
    if not 0.0 <= t <= 1.0:
        raise InvalidInput(f"weight {t} outside [0, 1]")
    terms = [(t, np.eye(n, dtype=np.complex128)), (1.0 - t, quarter_turn(n, i, j))]
    terms = [(w, u) for w, u in terms if w > 0]
    return RandomFieldChannel(np.array([w for w, _ in terms]), tuple(u for _, u in terms))


def pair_mixing_channel(n: int, i: int, j: int, w: float) -> RandomFieldChannel:
    """``M_ij``: moves a diagonal state along the segment from ``d`` (w = 0) to the
    point where components i and j are both replaced by their mean (w = 1)."""
    if not 0.0 <= w <= 1.0:
        raise InvalidInput(f"segment weight {w} outside [0, 1]")
    return t_step_channel(n, i, j, 1.0 - 0.5 * w)


def channel_from_target(d, d_target, basis=None) -> RandomFieldChannel:
    """Random-field channel taking ``diag(d)`` to a state with spectrum ``d_target``.

    ``basis`` (a unitary whose columns are the eigenvectors of the input
    state) expresses the channel for ``basis @ diag(d) @ basis^dagger``.
    """
    d = np.asarray(d, dtype=float).ravel()
    d_target = np.asarray(d_target, dtype=float).ravel()
    if d.size != d_target.size:
        raise DimensionMismatch("spectra of different length")
    if not majorizes(d_target, d, MAJ_TOL):
        raise NotMajorized("target spectrum is not majorized by the input spectrum")
    n = d.size
    chain = t_transform_chain(d_target, d)
    # chain indices refer to descending positions; map them back to the basis
    pos = np.argsort(-d, kind="stable")
    ch = identity_channel(n)
    for step in chain:
        a, b = int(pos[step.i]), int(pos[step.j])
        ch = ch.then(t_step_channel(n, a, b, step.t))
    if basis is not None:
        ch = ch.conjugated(basis)
    return ch


def random_channel(n: int, terms: int, rng) -> RandomFieldChannel:
    """Random external field with Haar unitaries and Dirichlet weights."""
    rng = as_generator(rng)
    w = rng.dirichlet(np.ones(terms))
    return RandomFieldChannel(w, tuple(haar_random_unitary(n, rng) for _ in range(terms)))


def random_density_matrix(n: int, rng, rank: int | None = None) -> np.ndarray:
    """Random state ``G G^dagger / tr`` from an ``n x rank`` complex Ginibre matrix."""
    rng = as_generator(rng)
    k = n if rank is None else rank
    g = rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


class SpectralClass(enum.Enum):
    """Position of a spectrum relative to a reference under random external fields."""

    EQUIVALENT = "Equivalent"
    FUTURE = "Future"
    PAST = "Past"
    INCOMPARABLE = "Incomparable"


def spectral_class(d_ref, d, tol: float = 1e-10) -> SpectralClass:
    """FUTURE when ``d`` can be reached from ``d_ref`` by a random field (``d ≺ d_ref``)."""
    a = np.sort(np.asarray(d_ref, dtype=float))[::-1]
    b = np.sort(np.asarray(d, dtype=float))[::-1]
    if a.size != b.size:
        raise DimensionMismatch("spectra of different length")
    if np.max(np.abs(a - b)) <= tol:
        return SpectralClass.EQUIVALENT
    if majorizes(b, a):
        return SpectralClass.FUTURE
    if majorizes(a, b):
        return SpectralClass.PAST
    return SpectralClass.INCOMPARABLE


class Separability(enum.Enum):
    CONSISTENT_WITH_SEPARABLE = "ConsistentWithSeparable"
    ENTANGLED = "Entangled"


@dataclass(frozen=True)
class NKResult:
    verdict: Separability
    majorized_by_a: bool
    majorized_by_b: bool
    # alpha -> (S_alpha(rho_A) <= S_alpha(rho), S_alpha(rho_B) <= S_alpha(rho))
    entropy_checks: dict


def nk00_test(rho, dims, tol: float = MAJ_TOL) -> NKResult:
    """Necessary separability test: a separable state has a global spectrum
    majorized by both reduced spectra.

    ENTANGLED is conclusive; CONSISTENT_WITH_SEPARABLE is not.
    """
    rho = density_matrix(rho)
    na, nb = (int(x) for x in dims)
    if rho.shape[0] != na * nb:
        raise DimensionMismatch(f"state of size {rho.shape[0]} does not match {na}x{nb}")
    d = spectrum(rho)
    da = spectrum(partial_trace(rho, "B", dims))
    db = spectrum(partial_trace(rho, "A", dims))
    pad = lambda v: np.concatenate([v, np.zeros(d.size - v.size)])  # noqa: E731
    by_a = majorizes(d, pad(da), tol)
    by_b = majorizes(d, pad(db), tol)
    checks = {}
    for alpha in NK_ALPHAS:
        s = renyi_entropy(d, alpha)
        checks[alpha] = (renyi_entropy(da, alpha) <= s + tol, renyi_entropy(db, alpha) <= s + tol)
    verdict = Separability.CONSISTENT_WITH_SEPARABLE if (by_a and by_b) else Separability.ENTANGLED
    return NKResult(verdict, by_a, by_b, checks)

import json
import math

import numpy as np
import pytest
from scipy import integrate

from entorder.errors import AngleOutOfRange, DimensionMismatch, NotNormalized, WrongDimension
from entorder.numkernel import eigvalsh, partial_trace
from entorder.schmidt import (
    PureBipartiteState,
    haar_random_state,
    haar_random_unitary,
    schmidt_angle,
    schmidt_angle_cdf,
    schmidt_coefficients,
    schmidt_decompose,
    state_from_hyperspherical,
)

from conftest import random_unitary


def test_product_state():
    c = np.zeros((3, 3))
    c[0, 0] = 1.0
    dec = schmidt_decompose(PureBipartiteState(c))
    assert np.allclose(dec.lambdas, [1, 0, 0])
    assert dec.rank == 1


def test_maximally_entangled():
    dec = schmidt_decompose(PureBipartiteState(np.eye(3) / np.sqrt(3)))
    assert np.allclose(dec.lambdas, 1 / 3, atol=1e-14)
    assert dec.rank == 3


@pytest.mark.parametrize("shape", [(3, 3), (2, 4), (4, 2), (1, 3), (5, 5)])
def test_decomposition_properties(rng, shape):
    for _ in range(40):
        psi = haar_random_state(*shape, rng)
        dec = schmidt_decompose(psi)
        na, nb = shape
        assert np.all(np.diff(dec.lambdas) <= 0)
        assert dec.lambdas.sum() == pytest.approx(1.0, abs=1e-12)
        assert np.abs(dec.reconstruct() - psi.coeffs).max() <= 1e-10
        assert np.allclose(dec.basis_a.conj().T @ dec.basis_a, np.eye(na), atol=1e-10)
        assert np.allclose(dec.basis_b.conj().T @ dec.basis_b, np.eye(nb), atol=1e-10)
        red = eigvalsh(partial_trace(psi.density_matrix(), "B", shape), psd=True)
        assert np.allclose(dec.lambdas, red[: dec.lambdas.size], atol=1e-10)
        assert np.allclose(schmidt_coefficients(psi), dec.lambdas, atol=1e-12)


def test_phase_convention(rng):
    # fixed on the A side; B columns in the range follow from the state,
    # the kernel completion of B is fixed as well
    dec = schmidt_decompose(haar_random_state(2, 4, rng))
    for m in (dec.basis_a, dec.basis_b[:, 2:]):
        for col in m.T:
            first = col[np.nonzero(np.abs(col) > 1e-12)[0][0]]
            assert abs(first.imag) <= 1e-12 and first.real > 0


def test_rank_deficient_reconstruction(rng):
    # rank 2 in a 3x4 system
    u, v = random_unitary(rng, 3), random_unitary(rng, 4)
    c = np.sqrt(0.7) * np.outer(u[:, 0], v[:, 0]) + np.sqrt(0.3) * np.outer(u[:, 1], v[:, 1])
    dec = schmidt_decompose(PureBipartiteState(c))
    assert np.allclose(dec.lambdas, [0.7, 0.3, 0.0], atol=1e-12)
    assert dec.rank == 2
    assert np.abs(dec.reconstruct() - c).max() <= 1e-10
    assert np.allclose(dec.basis_b.conj().T @ dec.basis_b, np.eye(4), atol=1e-10)


def test_global_phase_and_local_unitary_invariance(rng):
    for _ in range(100):
        psi = haar_random_state(3, 4, rng)
        lam = schmidt_coefficients(psi)
        rotated = psi.local_unitary(random_unitary(rng, 3), random_unitary(rng, 4))
        assert np.allclose(schmidt_coefficients(rotated), lam, atol=1e-10)
        phased = PureBipartiteState(psi.coeffs * np.exp(0.7j))
        assert np.allclose(schmidt_decompose(phased).lambdas, lam, atol=1e-12)


def test_local_unitary_matches_kron(rng):
    psi = haar_random_state(2, 3, rng)
    ua, ub = random_unitary(rng, 2), random_unitary(rng, 3)
    assert np.allclose(psi.local_unitary(ua, ub).vector, np.kron(ua, ub) @ psi.vector)


def test_not_normalized():
    with pytest.raises(NotNormalized):
        PureBipartiteState(np.eye(2))
    with pytest.raises(DimensionMismatch):
        PureBipartiteState.from_vector([1, 0, 0], 2, 2)


def test_json_round_trip(rng):
    psi = haar_random_state(2, 3, rng)
    text = json.dumps(psi.to_json())
    back = PureBipartiteState.from_json(text)
    assert np.array_equal(back.coeffs, psi.coeffs)
    with pytest.raises(NotNormalized):
        PureBipartiteState.from_json({"dim_a": 1, "dim_b": 2, "re": [1, 1], "im": [0, 0]})


def test_schmidt_angle():
    assert schmidt_angle([1.0, 0.0]) == 0.0
    assert schmidt_angle([0.5, 0.5]) == pytest.approx(math.pi / 4, abs=1e-15)
    b = schmidt_angle([0.9, 0.1])
    assert b == pytest.approx(math.acos(math.sqrt(0.9)), abs=1e-15)
    assert math.cos(b) ** 2 == pytest.approx(0.9, abs=1e-12)
    with pytest.raises(WrongDimension):
        schmidt_angle([0.5, 0.3, 0.2])


def test_hyperspherical_examples(rng):
    psi = state_from_hyperspherical([0.3, 1.0, 0.0, 0.0, 0.0, 0.0])
    assert np.allclose(psi.vector, [1, 0, 0, 0])
    h = math.pi / 2
    psi = state_from_hyperspherical([h, h, math.pi / 4, 0, 0, 0])
    assert np.allclose(psi.vector, np.array([1, 0, 0, 1]) / math.sqrt(2))
    assert np.allclose(schmidt_coefficients(psi), [0.5, 0.5])
    for _ in range(200):
        ang = np.concatenate([rng.uniform(0, h, 3), rng.uniform(0, 2 * math.pi, 3)])
        psi = state_from_hyperspherical(ang)
        assert np.linalg.norm(psi.vector) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(AngleOutOfRange):
        state_from_hyperspherical([2.0, 0, 0, 0, 0, 0])
    with pytest.raises(AngleOutOfRange):
        state_from_hyperspherical([0, 0, 0, 7.0, 0, 0])


def test_haar_determinism_and_trivial_case():
    a = haar_random_state(3, 3, 5).coeffs
    b = haar_random_state(3, 3, 5).coeffs
    assert np.array_equal(a, b)
    one = haar_random_state(1, 1, 9)
    assert abs(one.coeffs[0, 0]) == pytest.approx(1.0, abs=1e-15)


def test_haar_unitary(rng):
    u = haar_random_unitary(6, rng)
    assert np.allclose(u.conj().T @ u, np.eye(6), atol=1e-12)


def test_angle_cdf_integrates_density():
    dens = lambda b: 3 * math.cos(2 * b) * math.sin(4 * b)  # noqa: E731
    for b in (0.1, 0.4, 0.7, math.pi / 4):
        val, _ = integrate.quad(dens, 0, b)
        assert schmidt_angle_cdf(b) == pytest.approx(val, abs=1e-12)


def test_unitary_invariance_of_sampling():
    # rotating the Gaussian vector by a fixed unitary leaves the lambda law unchanged
    from scipy.stats import ks_2samp

    rng = np.random.default_rng(11)
    w = random_unitary(np.random.default_rng(3), 4)
    plain, rotated = [], []
    for _ in range(10_000):
        z = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        plain.append(schmidt_coefficients(PureBipartiteState.from_vector(z / np.linalg.norm(z), 2, 2))[0])
        z = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        zr = w @ z
        rotated.append(schmidt_coefficients(PureBipartiteState.from_vector(zr / np.linalg.norm(zr), 2, 2))[0])
    assert ks_2samp(plain, rotated).pvalue > 1e-3

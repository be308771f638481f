import numpy as np
import pytest

from entorder.errors import InvalidInput, LengthMismatch
from entorder.locc import (
    CausalClass,
    can_convert,
    classify,
    conversion_probability,
    incomparability_fraction,
    max_weak_probability,
)
from entorder.mixedstates import SpectralClass, spectral_class

from conftest import desc, majorized_pair, random_simplex


def bisect_probability(a, b, iters=200):
    """Largest p with every tail sum of a at least p times that of b (plain loops)."""
    a, b = desc(a), desc(b)

    def ok(p):
        ta = tb = 0.0
        for u, v in zip(a[::-1], b[::-1]):
            ta += u
            tb += v
            if ta < p * tb:
                return False
        return True

    lo, hi = 0.0, 1.0
    if ok(1.0):
        return 1.0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        lo, hi = (mid, hi) if ok(mid) else (lo, mid)
    return lo


def test_can_convert_examples(rng):
    for n in (2, 3, 5):
        phi = random_simplex(rng, n)
        assert can_convert(np.full(n, 1 / n), phi)
        assert can_convert(phi, np.eye(n)[0])
    assert can_convert([0.5, 0.3, 0.2], [0.6, 0.3, 0.1])
    assert not can_convert([0.6, 0.3, 0.1], [0.5, 0.3, 0.2])
    with pytest.raises(LengthMismatch):
        can_convert([0.5, 0.5], [1, 0, 0])


def test_probability_examples():
    assert conversion_probability([0.5, 0.3, 0.2], [0.6, 0.3, 0.1]) == 1.0
    assert conversion_probability([0.5, 0.3, 0.2], np.full(3, 1 / 3)) == pytest.approx(0.6, abs=1e-15)
    assert conversion_probability([1.0, 0.0], [0.5, 0.5]) == 0.0
    # larger target rank is impossible
    assert conversion_probability([0.7, 0.3, 0.0], [0.5, 0.3, 0.2]) == 0.0
    # smaller target rank is fine
    assert conversion_probability([0.5, 0.3, 0.2], [0.5, 0.5, 0.0]) == 1.0


def test_probability_matches_bisection(rng):
    for _ in range(2000):
        n = int(rng.integers(2, 7))
        a = random_simplex(rng, n, sparsity=0.2)
        b = random_simplex(rng, n, sparsity=0.2)
        p = conversion_probability(a, b)
        assert 0.0 <= p <= 1.0
        assert abs(p - bisect_probability(a, b)) <= 1e-9
        assert abs(p - max_weak_probability(a, b)) <= 1e-9
        assert (p == 1.0) == can_convert(a, b)


def test_probability_monotone_in_target(rng):
    # phi ≺ phi2: phi2 is less entangled, hence the easier target
    for _ in range(1000):
        n = int(rng.integers(2, 7))
        psi = random_simplex(rng, n)
        phi, phi2 = majorized_pair(rng, n)
        assert conversion_probability(psi, phi2) >= conversion_probability(psi, phi) - 1e-10


def test_classify_examples(rng):
    ref = np.array([0.5, 0.3, 0.2])
    assert classify(ref, ref[[2, 0, 1]]) is CausalClass.INTERCONVERTIBLE
    u = np.full(3, 1 / 3)
    for _ in range(20):
        q = random_simplex(rng, 3)
        assert classify(u, q) is CausalClass.FUTURE
    assert classify([0.7, 0.25, 0.05], [0.6, 0.38, 0.02]) is CausalClass.INCOMPARABLE
    assert classify([0.5, 0.3, 0.2], [0.6, 0.3, 0.1]) is CausalClass.FUTURE
    assert classify([0.6, 0.3, 0.1], [0.5, 0.3, 0.2]) is CausalClass.PAST
    assert str(CausalClass.PAST) == "Past"


def test_classify_antisymmetry(rng):
    flip = {
        CausalClass.FUTURE: CausalClass.PAST,
        CausalClass.PAST: CausalClass.FUTURE,
        CausalClass.INCOMPARABLE: CausalClass.INCOMPARABLE,
        CausalClass.INTERCONVERTIBLE: CausalClass.INTERCONVERTIBLE,
    }
    for _ in range(2000):
        n = int(rng.integers(2, 7))
        a, b = random_simplex(rng, n), random_simplex(rng, n)
        assert classify(b, a) is flip[classify(a, b)]


def test_arrow_of_time_reversal(rng):
    # LOCC future of lambda = spectral past of lambda under random fields
    for _ in range(2000):
        n = int(rng.integers(2, 6))
        a, b = random_simplex(rng, n), random_simplex(rng, n)
        c, s = classify(a, b), spectral_class(a, b)
        assert (c is CausalClass.FUTURE) == (s is SpectralClass.PAST)
        assert (c is CausalClass.PAST) == (s is SpectralClass.FUTURE)


def test_incomparability_fraction():
    assert incomparability_fraction(2, 500, seed=1) == 0.0
    f = incomparability_fraction(3, 500, seed=1)
    assert 0.0 < f < 1.0
    assert incomparability_fraction(3, 200, seed=4) == incomparability_fraction(3, 200, seed=4)
    with pytest.raises(InvalidInput):
        incomparability_fraction(1, 10, seed=0)

import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entorder.errors import BadOrder, InvalidInput
from entorder.spectra import (
    elementary_symmetric,
    participation_ratio,
    product_distribution,
    renyi_entropy,
    shannon_entropy,
)

from conftest import majorized_pair, random_simplex

ALPHAS = [0.0, 0.3, 0.5, 1.0, 1.5, 2.0, 3.0, 5.0, 20.0, math.inf]


def prob_vectors(min_size=1, max_size=8):
    # entries are zero or well above the rank threshold, away from the H_0 jump
    entry = st.one_of(st.just(0.0), st.floats(1e-4, 1.0))
    return st.lists(entry, min_size=min_size, max_size=max_size).filter(
        lambda v: sum(v) > 1e-3
    ).map(lambda v: np.array(v) / sum(v))


@pytest.mark.parametrize("n", [1, 2, 3, 7])
@pytest.mark.parametrize("alpha", ALPHAS)
def test_uniform_gives_log_n(n, alpha):
    assert renyi_entropy(np.full(n, 1 / n), alpha) == pytest.approx(math.log(n), abs=1e-12)


@pytest.mark.parametrize("alpha", ALPHAS)
def test_pure_gives_zero(alpha):
    assert renyi_entropy([1.0, 0.0, 0.0], alpha) == 0.0


def test_special_orders():
    x = np.array([0.5, 0.3, 0.2])
    assert renyi_entropy(x, 2) == pytest.approx(-math.log(0.38), abs=1e-12)
    assert renyi_entropy(x, 2) == pytest.approx(0.96758, abs=1e-5)
    assert renyi_entropy(x, 1) == pytest.approx(-(x * np.log(x)).sum(), abs=1e-14)
    assert renyi_entropy(x, math.inf) == pytest.approx(math.log(2))
    assert renyi_entropy(x, "inf") == renyi_entropy(x, math.inf)
    assert renyi_entropy([0.6, 0.4, 0.0], 0) == pytest.approx(math.log(2))
    # below the zero threshold counts as absent
    assert renyi_entropy([1 - 1e-13, 1e-13], 0) == 0.0


def test_large_order_matches_min_entropy():
    x = np.array([0.4, 0.4, 0.2])
    assert renyi_entropy(x, 1e6) == pytest.approx(-math.log(0.4), abs=1e-5)
    assert renyi_entropy(x, 5000) >= -math.log(0.4) - 1e-12


def test_invalid_inputs():
    with pytest.raises(InvalidInput):
        renyi_entropy([0.5, 0.6], 1)
    with pytest.raises(InvalidInput):
        renyi_entropy([1.2, -0.2], 1)
    with pytest.raises(InvalidInput):
        renyi_entropy([0.5, 0.5], -1)
    with pytest.raises(BadOrder):
        elementary_symmetric([0.5, 0.5], 3)
    with pytest.raises(BadOrder):
        elementary_symmetric([0.5, 0.5], 1)


def test_participation_ratio():
    assert participation_ratio([1.0, 0.0, 0.0]) == 1.0
    assert participation_ratio(np.full(5, 0.2)) == pytest.approx(5.0)
    assert participation_ratio([0.5, 0.5, 0.0]) == pytest.approx(2.0)


def _e_k_bruteforce(x, k):
    return sum(np.prod(c) for c in itertools.combinations(x, k))


def test_elementary_symmetric_examples(rng):
    assert elementary_symmetric(np.full(3, 1 / 3), 2) == pytest.approx(1 / 3)
    for k in (2, 3):
        assert elementary_symmetric([1.0, 0.0, 0.0], k) == 0.0
    assert elementary_symmetric([0.5, 0.3, 0.2], 3) == pytest.approx(0.03, abs=1e-15)
    for _ in range(100):
        n = int(rng.integers(2, 8))
        x = random_simplex(rng, n)
        for k in range(2, n + 1):
            assert elementary_symmetric(x, k) == pytest.approx(_e_k_bruteforce(x, k), rel=1e-12, abs=1e-16)


@settings(max_examples=200, deadline=None)
@given(prob_vectors(), st.floats(0.0, 50.0), st.floats(0.0, 50.0))
def test_monotone_in_order(x, a1, a2):
    lo, hi = sorted((a1, a2))
    assert renyi_entropy(x, hi) <= renyi_entropy(x, lo) + 1e-12


@settings(max_examples=200, deadline=None)
@given(prob_vectors(), st.sampled_from(ALPHAS))
def test_range(x, alpha):
    h = renyi_entropy(x, alpha)
    assert 0.0 <= h <= math.log(x.size) + 1e-12


def test_continuity_at_one(rng):
    for _ in range(200):
        x = random_simplex(rng, int(rng.integers(2, 9))) * 0.98 + 0.0
        x = x + 0.02 / x.size
        s = shannon_entropy(x)
        for a in (1 - 1e-4, 1 + 1e-4):
            assert abs(renyi_entropy(x, a) - s) <= 1e-3


@settings(max_examples=200, deadline=None)
@given(prob_vectors(max_size=5), prob_vectors(max_size=5), st.sampled_from(ALPHAS))
def test_additivity(x, y, alpha):
    xy = product_distribution(x, y)
    assert renyi_entropy(xy, alpha) == pytest.approx(
        renyi_entropy(x, alpha) + renyi_entropy(y, alpha), abs=1e-10
    )


def test_participation_ratio_is_exp_h2(rng):
    for _ in range(100):
        x = random_simplex(rng, 6)
        assert participation_ratio(x) == pytest.approx(math.exp(renyi_entropy(x, 2)), rel=1e-12)


def test_schur_concavity(rng):
    for _ in range(500):
        n = int(rng.integers(2, 8))
        x, y = majorized_pair(rng, n)
        for a in ALPHAS:
            assert renyi_entropy(x, a) >= renyi_entropy(y, a) - 1e-12
        for k in range(2, n + 1):
            assert elementary_symmetric(x, k) >= elementary_symmetric(y, k) - 1e-12

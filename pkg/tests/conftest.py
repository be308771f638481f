import numpy as np
import pytest


def random_simplex(rng, n, sparsity=0.0):
    """Uniform point of the probability simplex, optionally with zeroed entries."""
    x = rng.exponential(size=n)
    if sparsity:
        mask = rng.random(n) < sparsity
        mask[rng.integers(n)] = False
        x[mask] = 0.0
    return x / x.sum()


def desc(x):
    return np.sort(np.asarray(x, dtype=float))[::-1]


def majorized_pair(rng, n, terms=4):
    """(x, y) with x ≺ y: x is a random convex mix of permutations of y (Birkhoff)."""
    y = desc(random_simplex(rng, n))
    w = rng.dirichlet(np.ones(terms))
    x = sum(wk * y[rng.permutation(n)] for wk in w)
    return desc(x), y


def random_unitary(rng, n):
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_hermitian(rng, n):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (a + a.conj().T) / 2


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# acceptance summary: one line per criterion, printed at the end of the run
ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py::test_criterion_" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        ACCEPTANCE[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE, key=lambda s: int(s.split("_")[2])):
        mark = "PASS" if ACCEPTANCE[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"{mark}  {name}")

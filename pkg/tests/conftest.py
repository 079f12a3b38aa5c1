import pytest

from consensuslab import (
    eigendecompose_symmetric,
    make_ring,
    random_symmetric_stochastic,
)


def build_corpus(count, base_seed=0, sizes=range(3, 9)):
    """Deterministic list of (network, spectrum) pairs for property tests."""
    sizes = list(sizes)
    out = []
    for i in range(count):
        A = random_symmetric_stochastic(sizes[i % len(sizes)], base_seed + i)
        out.append((A, eigendecompose_symmetric(A)))
    return out


@pytest.fixture(scope="session")
def ring4():
    return make_ring(4, 0.0)


@pytest.fixture(scope="session")
def ring4_loops():
    return make_ring(4, 0.1)


@pytest.fixture(scope="session")
def ring4_loops_spectrum(ring4_loops):
    return eigendecompose_symmetric(ring4_loops)


@pytest.fixture(scope="session")
def corpus100():
    return build_corpus(100)


@pytest.fixture(scope="session")
def corpus20():
    return build_corpus(20, base_seed=500)

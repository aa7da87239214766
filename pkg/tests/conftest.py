import numpy as np
import pytest

from cos2phi import CircuitParams, converge_truncation


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20260811)


def converged(p: CircuitParams) -> CircuitParams:
    """Replace n_trunc with the converged basis halfwidth."""
    return p.replace(n_trunc=converge_truncation(p))

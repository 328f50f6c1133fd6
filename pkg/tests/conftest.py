import numpy as np
import pytest

from rwlouvain import checks


@pytest.fixture(autouse=True)
def _invariant_checks():
    # monotonicity is asserted from scratch inside every detector during tests
    with checks.invariant_checks(True):
        yield


@pytest.fixture
def rng():
    return np.random.default_rng(12345)

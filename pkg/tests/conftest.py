import numpy as np
import pytest

from basingen import default_params, generate


@pytest.fixture(scope="session")
def params2():
    return default_params(2)


@pytest.fixture(scope="session")
def func9(params2):
    """Function 9 of the default 2-D class, shared across tests."""
    return generate(params2, 9)


@pytest.fixture(scope="session")
def default_class(params2):
    """All 100 functions of the default 2-D class."""
    return [generate(params2, nf) for nf in range(1, 101)]


def random_unit_vectors(dim, count, seed):
    rng = np.random.default_rng(seed)
    vecs = rng.normal(size=(count, dim))
    return vecs / np.linalg.norm(vecs, axis=1, keepdims=True)

import numpy as np
import pytest

from fveuler.state import GasModel


@pytest.fixture(scope="session")
def gas():
    return GasModel(gamma=1.4)


def random_primitives(n, seed, rho_range=(0.1, 10.0), vel_range=(-3.0, 3.0),
                      p_range=(0.1, 10.0)):
    """Batch of valid primitive states, reproducible."""
    rng = np.random.default_rng(seed)
    q = np.empty((n, 4))
    q[:, 0] = rng.uniform(*rho_range, n)
    q[:, 1] = rng.uniform(*vel_range, n)
    q[:, 2] = rng.uniform(*vel_range, n)
    q[:, 3] = rng.uniform(*p_range, n)
    return q


def random_unit_normals(n, seed):
    rng = np.random.default_rng(seed)
    theta = rng.uniform(0.0, 2.0 * np.pi, n)
    return np.stack([np.cos(theta), np.sin(theta)], axis=-1)

import warnings
from functools import lru_cache

import pytest

from frwshock.phase_plane import integrate_orbit


@lru_cache(maxsize=None)
def cached_orbit(sigma, points_per_decade=20, S_min=1e-9, rel_tol=1e-10):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return integrate_orbit(sigma, S_min=S_min, rel_tol=rel_tol,
                               points_per_decade=points_per_decade)


@pytest.fixture(scope="session")
def orbit_of():
    return cached_orbit

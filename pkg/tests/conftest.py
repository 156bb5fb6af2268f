import math

import pytest

from zetamult.geodesic_spectrum import bolza_generators, enumerate_classes

SYSTOLE = 2.0 * math.acosh(1.0 + math.sqrt(2.0))


@pytest.fixture(scope="session")
def bolza():
    return bolza_generators()


@pytest.fixture(scope="session")
def shallow_spectrum(bolza):
    """Fast fixture: word length 4, used by unit tests."""
    return enumerate_classes(bolza, 4)


@pytest.fixture(scope="session")
def deep_spectrum(bolza):
    """Word length 10, geodesic horizon 11.5: the acceptance fixture."""
    import time
    start = time.perf_counter()
    spectrum = enumerate_classes(bolza, 10, max_geodesic_length=11.5)
    spectrum.build_seconds = time.perf_counter() - start
    return spectrum

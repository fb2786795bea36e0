import pytest

from f2spectral.algebra import normalize
from f2spectral.catalog import G2_SO4, G2_T2, G2_U2, S6, Catalog


@pytest.fixture(scope="session")
def catalog():
    return Catalog.default()


@pytest.fixture(scope="session")
def so4():
    return normalize(G2_SO4, 20)


@pytest.fixture(scope="session")
def u2():
    return normalize(G2_U2, 24)


@pytest.fixture(scope="session")
def t2():
    return normalize(G2_T2, 24)


@pytest.fixture(scope="session")
def s6():
    return normalize(S6, 24)

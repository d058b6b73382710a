import pytest

from hkcone import fixtures


@pytest.fixture(scope="session")
def quartic():
    return fixtures.quartic_lattice()


@pytest.fixture(scope="session")
def table():
    return fixtures.orbit_table()


@pytest.fixture(scope="session")
def named():
    return fixtures.named_classes()


NAMED_ORDER = ["delta", "alpha", "eps", "beta", "eta", "zeta", "gamma"]

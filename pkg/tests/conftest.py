import pytest

from equivl.catalogue import default_catalogue


@pytest.fixture(scope="session")
def cat():
    return default_catalogue()


@pytest.fixture(scope="session")
def s1(cat):
    return cat.tower("S1")

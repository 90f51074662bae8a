import pytest

from fitzprops.corpus import builtin, shipped_monoid


@pytest.fixture(scope="session")
def S():
    return shipped_monoid()


@pytest.fixture(scope="session")
def A():
    return builtin("fitzgerald")


@pytest.fixture(scope="session")
def el(S):
    """Element name -> index in the shipped table."""
    return {S.name(i): i for i in range(S.order)}

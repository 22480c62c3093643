import pytest

from qbounce.eigenstates import EigenstateTable


@pytest.fixture(scope="session")
def table():
    """Shared spectrum cache; immutable, so session scope is safe."""
    return EigenstateTable(n_max=100)

import pytest

from regpet import qseries
from regpet.cmtraces import g1_vector_form


@pytest.fixture(scope="session")
def f1():
    return qseries.faber_basis(1, 64)


@pytest.fixture(scope="session")
def f2():
    return qseries.faber_basis(2, 64)


@pytest.fixture(scope="session")
def g1():
    return g1_vector_form(48)

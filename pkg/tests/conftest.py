import pytest

from cm_isolate import make_cyclic_field


@pytest.fixture(scope="session")
def zeta5():
    return make_cyclic_field(5, 2, 1, class_number=1)


@pytest.fixture(scope="session")
def f29():
    return make_cyclic_field(29, 2, 5)


@pytest.fixture(scope="session")
def f37():
    return make_cyclic_field(37, 6, 1)


@pytest.fixture(scope="session")
def f13():
    return make_cyclic_field(13, 2, 3)

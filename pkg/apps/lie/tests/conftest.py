import pytest

from apps.lie.library import sl2_triple, special_linear, standard_representation


@pytest.fixture(scope='module')
def sl2():
    return special_linear(2)


@pytest.fixture(scope='module')
def sl3():
    return special_linear(3)


@pytest.fixture(scope='module')
def sl4():
    return special_linear(4)


@pytest.fixture
def sl2_standard(sl2):
    return standard_representation(sl2)


@pytest.fixture
def triple():
    return sl2_triple()

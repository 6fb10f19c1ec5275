import pytest

from apps.lie.library import special_linear, standard_representation


@pytest.fixture(scope='module')
def sl2():
    return special_linear(2)


@pytest.fixture(scope='module')
def sl3():
    return special_linear(3)


@pytest.fixture
def sl2_standard(sl2):
    return standard_representation(sl2)

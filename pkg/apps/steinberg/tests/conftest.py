import pytest

from apps.linalg.matrices import QMatrix
from apps.lie.algebras import AbelianSubalgebra
from apps.lie.library import diagonal_cartan, special_linear
from apps.roots.systems import restricted_roots
from apps.steinberg.words import RootGroups


@pytest.fixture(scope='module')
def sl3():
    return special_linear(3)


@pytest.fixture(scope='module')
def sl3_system(sl3):
    return restricted_roots(sl3, AbelianSubalgebra.from_matrices(sl3, diagonal_cartan(3)))


@pytest.fixture(scope='module')
def sl3_groups(sl3_system):
    return RootGroups(sl3_system)


@pytest.fixture(scope='module')
def sl4():
    return special_linear(4)


@pytest.fixture(scope='module')
def sl4_example_system(sl4):
    first = QMatrix.diag([1, 1, 0, -2])
    second = QMatrix.elementary(4, 0, 1) + QMatrix.diag([0, 0, 1, -1])
    return restricted_roots(sl4, AbelianSubalgebra.from_matrices(sl4, [first, second]))


@pytest.fixture(scope='module')
def sl4_rank_two_groups(sl4):
    """diag(1,0,0,-1) and diag(0,1,-1,0): classes (1,-1) = <E12, E34>, (0,1) = <E23>."""
    generators = [QMatrix.diag([1, 0, 0, -1]), QMatrix.diag([0, 1, -1, 0])]
    return RootGroups(restricted_roots(sl4, AbelianSubalgebra.from_matrices(sl4, generators)))

import pytest

from apps.linalg.matrices import QMatrix
from apps.lie.algebras import AbelianSubalgebra
from apps.lie.library import special_linear


@pytest.fixture(scope='module')
def sl3():
    return special_linear(3)


@pytest.fixture(scope='module')
def sl4():
    return special_linear(4)


@pytest.fixture(scope='module')
def sl4_example(sl4):
    """diag(1,1,0,-2) and E12 + diag(0,0,1,-1)."""
    first = QMatrix.diag([1, 1, 0, -2])
    second = QMatrix.elementary(4, 0, 1) + QMatrix.diag([0, 0, 1, -1])
    return AbelianSubalgebra.from_matrices(sl4, [first, second])


@pytest.fixture(scope='module')
def sl6_embedding():
    """R^2 into sl(6) by t -> diag(mu_i t_k) with mu = (1, 2, -3)."""
    algebra = special_linear(6)
    generators = [QMatrix.diag([1, 0, 2, 0, -3, 0]), QMatrix.diag([0, 1, 0, 2, 0, -3])]
    return AbelianSubalgebra.from_matrices(algebra, generators)

from functools import partial

import numpy as np
import pytest

from core.exceptions import NotACocycle, NotOnCommonLeaf, NotSlowFamily
from apps.pcf.matrix_cocycles import (
    MatrixCocycle,
    adjoint_bound,
    check_matrix_smallness,
    matrix_cocycle_residual,
    matrix_equivariance_defect,
    matrix_potential,
    planted_matrix_coboundary,
)
from .utils import matrix_transfer

STABLE, UNSTABLE = 1, 0


@pytest.fixture
def matrix_coboundary(cat_map):
    return planted_matrix_coboundary(cat_map, matrix_transfer, size=2)


def on_line(action, x, line, t):
    x = np.asarray(x, dtype=float)
    return x, x + t * action.eigen.basis[:, line]


def test_planted_values_are_matrices(cat_map, matrix_coboundary):
    x = np.array([0.3, 0.7])
    value = matrix_coboundary((1,), x)
    assert value.shape == (2, 2)
    expected = matrix_transfer(cat_map.act((1,), x)) @ np.linalg.inv(matrix_transfer(x))
    assert np.allclose(value, expected)


def test_planted_coboundary_satisfies_equation(matrix_coboundary):
    assert matrix_cocycle_residual(matrix_coboundary, samples=50) < 1e-10


def test_inverse_generator_value(cat_map, matrix_coboundary):
    x = np.array([0.21, 0.55])
    assert np.allclose(matrix_coboundary((-1,), x) @ matrix_coboundary((1,), cat_map.act((-1,), x)), np.eye(2))


def test_potential_of_coboundary(cat_map, matrix_coboundary):
    for line in (STABLE, UNSTABLE):
        x, y = on_line(cat_map, [0.13, 0.42], line, 0.35)
        result = matrix_potential(matrix_coboundary, (1,), x, y)
        expected = matrix_transfer(x) @ np.linalg.inv(matrix_transfer(y))
        assert np.allclose(result.value, expected, atol=1e-8)
        assert result.tail_bound < 1e-8


def test_unstable_leaf_uses_inverse(cat_map, matrix_coboundary):
    x, y = on_line(cat_map, [0.4, 0.1], UNSTABLE, 0.2)
    assert matrix_potential(matrix_coboundary, (1,), x, y).element == (-1,)


def test_equal_points_have_identity_potential(matrix_coboundary):
    result = matrix_potential(matrix_coboundary, (1,), [0.2, 0.3], [0.2, 0.3])
    assert np.array_equal(result.value, np.eye(2))
    assert result.iterations == 0


def test_potential_equivariance(cat_map, matrix_coboundary):
    x, y = on_line(cat_map, [0.31, 0.08], STABLE, 0.25)
    assert matrix_equivariance_defect(matrix_coboundary, (1,), (1,), x, y) < 1e-8


def test_points_off_a_leaf(matrix_coboundary):
    with pytest.raises(NotOnCommonLeaf):
        matrix_potential(matrix_coboundary, (1,), [0.1, 0.1], [0.2, 0.3])


def test_small_cocycle_passes_the_adjoint_check(matrix_coboundary):
    assert 1 <= adjoint_bound(matrix_coboundary, (1,)) < 1.1
    assert check_matrix_smallness(matrix_coboundary, (1,)) < 1


def test_large_cocycle_is_rejected(cat_map):
    beta = planted_matrix_coboundary(cat_map, partial(matrix_transfer, amplitude=2.0), size=2)
    with pytest.raises(NotSlowFamily):
        check_matrix_smallness(beta, (1,))
    x, y = on_line(cat_map, [0.13, 0.42], STABLE, 0.35)
    with pytest.raises(NotSlowFamily):
        matrix_potential(beta, (1,), x, y)


def test_values_must_be_square_matrices(cat_map):
    beta = MatrixCocycle(cat_map, [lambda x: np.ones(2)], size=2)
    with pytest.raises(NotACocycle):
        beta((1,), [0.1, 0.2])
    with pytest.raises(NotACocycle):
        MatrixCocycle(cat_map, [], size=2)

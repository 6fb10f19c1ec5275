import numpy as np
import pytest

from core.exceptions import NotSlowFamily
from apps.pcf.norms import TwistSpec, adapted_norm, rotation


def test_identity_has_norm_one():
    norm = adapted_norm([np.eye(3)], 0.1)
    assert norm.scale == 1.0
    assert norm.bound == pytest.approx(1.0)


def test_jordan_block_is_scaled_below_bound():
    jordan = np.array([[1.0, 1.0, 0.0], [0.0, 1.0, 1.0], [0.0, 0.0, 1.0]])
    assert np.linalg.norm(jordan, 2) > 1.1
    norm = adapted_norm([jordan], 0.1)
    assert norm.scale < 1
    assert norm.bound <= 1.1
    assert norm.operator_norm(jordan) == pytest.approx(norm.bound)


def test_rotation_keeps_euclidean_norm():
    norm = adapted_norm([rotation(0.3)], 0.01)
    assert norm.scale == 1.0
    assert norm.bound == pytest.approx(1.0)
    assert norm([3.0, 4.0]) == pytest.approx(5.0)


def test_commuting_rotations():
    norm = adapted_norm([rotation(0.3), rotation(-1.2)], 0.01)
    assert norm.bound == pytest.approx(1.0)


def test_expanding_matrix_is_not_slow():
    with pytest.raises(NotSlowFamily):
        adapted_norm([np.diag([2.0, 0.5])], 0.1)


def test_twist_spec():
    twist = TwistSpec([rotation(0.1), np.eye(2)])
    assert twist.target_dim == 2 and twist.rank == 2
    assert np.allclose(twist.of((3, 5)), rotation(0.3))
    assert np.allclose(twist.of((-2, 0)), rotation(-0.2))
    assert not twist.is_trivial()
    assert TwistSpec.trivial(2, 3).is_trivial()


def test_non_commuting_twist():
    shear = np.array([[1.0, 1.0], [0.0, 1.0]])
    with pytest.raises(NotSlowFamily, match='commute'):
        TwistSpec([shear, rotation(0.5)])

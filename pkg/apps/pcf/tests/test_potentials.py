import numpy as np
import pytest

from core.exceptions import ConvergenceBudgetExceeded, CycleObstruction, NotOnCommonLeaf
from apps.pcf.cocycles import constant_cocycle
from apps.pcf.potentials import (
    LyapunovPath,
    cycle_test,
    equivariance_defect,
    independence_check,
    parallelogram,
    path_functional,
    path_to,
    potential,
    transfer_from_pcf,
    worst_cycle,
)
from .utils import cubic_transfer, planar_transfer, sine_transfer

STABLE, UNSTABLE = 1, 0


def on_line(action, x, line, t):
    x = np.asarray(x, dtype=float)
    return x, x + t * action.eigen.basis[:, line]


def test_constant_cocycle_has_zero_potential(cat_map):
    beta = constant_cocycle(cat_map, [[0.7]])
    x, y = on_line(cat_map, [0.2, 0.1], STABLE, 0.4)
    result = potential(beta, (1,), x, y)
    assert np.allclose(result.value, 0)
    assert result.iterations == 1


def test_coboundary_potential_telescopes(cat_map, sine_coboundary):
    for line in (STABLE, UNSTABLE):
        x, y = on_line(cat_map, [0.13, 0.42], line, 0.35)
        result = potential(sine_coboundary, (1,), x, y)
        assert np.allclose(result.value, sine_transfer(x) - sine_transfer(y), atol=1e-8)


def test_unstable_leaf_uses_inverse(cat_map, sine_coboundary):
    x, y = on_line(cat_map, [0.13, 0.42], UNSTABLE, 0.2)
    assert potential(sine_coboundary, (1,), x, y).element == (-1,)


def test_points_off_a_leaf(cat_map, sine_coboundary):
    with pytest.raises(NotOnCommonLeaf):
        potential(sine_coboundary, (1,), [0.1, 0.1], [0.3, 0.2])


def test_budget(cat_map, sine_coboundary):
    x, y = on_line(cat_map, [0.13, 0.42], STABLE, 0.35)
    with pytest.raises(ConvergenceBudgetExceeded):
        potential(sine_coboundary, (1,), x, y, max_iterations=3)


def test_tail_and_decay(cat_map, sine_coboundary):
    x, y = on_line(cat_map, [0.13, 0.42], STABLE, 0.35)
    result = potential(sine_coboundary, (1,), x, y)
    assert result.tail_bound < 1e-10
    assert result.decay.fitted < 1
    assert result.decay.within_bound
    assert result.decay.sharp == pytest.approx((3 - np.sqrt(5)) / 2)


def test_twisted_equivariance(cat_map, rotated_coboundary):
    x, y = on_line(cat_map, [0.31, 0.77], STABLE, 0.25)
    assert equivariance_defect(rotated_coboundary, (1,), (1,), x, y) < 1e-8
    value = potential(rotated_coboundary, (1,), x, y).value
    assert np.allclose(value, planar_transfer(x) - planar_transfer(y), atol=1e-8)


def test_independence_on_powers(cat_map, sine_coboundary, cosine_cocycle):
    x, y = on_line(cat_map, [0.6, 0.25], STABLE, 0.3)
    assert independence_check(sine_coboundary, (1,), (2,), x, y) < 1e-8
    assert independence_check(cosine_cocycle, (1,), (2,), x, y) < 1e-8


def test_independence_for_cubic_units(cubic_action, cubic_coboundary):
    line = 2
    a, b = (-1, 0), (0, 1)
    assert abs(cubic_action.eigenvalues(a)[line]) < 1 and abs(cubic_action.eigenvalues(b)[line]) < 1
    x, y = on_line(cubic_action, [0.2, 0.5, 0.9], line, 0.4)
    assert independence_check(cubic_coboundary, a, b, x, y) < 1e-8
    constant = constant_cocycle(cubic_action, [[1.0], [2.0]])
    assert independence_check(constant, a, b, x, y) < 1e-14


def test_single_leg_path_is_potential(cat_map, cosine_cocycle):
    path = LyapunovPath.of([0.2, 0.3], [(STABLE, 0.4)])
    start, end = path.points(cat_map)
    expected = potential(cosine_cocycle, cat_map.contracting_element(STABLE), end, start).value
    assert np.allclose(path_functional(cosine_cocycle, path), expected)


def test_concatenation_and_reversal(cat_map, cosine_cocycle):
    first = LyapunovPath.of([0.2, 0.3], [(STABLE, 0.4), (UNSTABLE, -0.2)])
    second = LyapunovPath.of(first.end(cat_map), [(STABLE, 0.1)])
    joined = first.concatenate(second, cat_map)
    total = path_functional(cosine_cocycle, first) + path_functional(cosine_cocycle, second)
    assert np.allclose(path_functional(cosine_cocycle, joined), total, atol=1e-10)
    reverse = path_functional(cosine_cocycle, first.reversed(cat_map))
    assert np.allclose(reverse, -path_functional(cosine_cocycle, first), atol=1e-9)
    with pytest.raises(NotOnCommonLeaf):
        second.concatenate(second, cat_map)


def test_parallelograms(cat_map, sine_coboundary, cosine_cocycle):
    cycle = parallelogram(cat_map, [0.4, 0.1], UNSTABLE, 0.3, STABLE, -0.45)
    assert cycle_test(sine_coboundary, cycle) < 1e-8
    assert worst_cycle(sine_coboundary, samples=10) < 1e-8
    assert worst_cycle(cosine_cocycle, samples=10) > 1e-6
    with pytest.raises(NotOnCommonLeaf):
        cycle_test(sine_coboundary, LyapunovPath.of([0, 0], [(STABLE, 0.1)]))


def test_path_to_reaches_point(cubic_action):
    path = path_to(cubic_action, [0.1, 0.2, 0.3], [0.5, -0.4, 1.2])
    assert np.allclose(path.end(cubic_action), [0.5, -0.4, 1.2])


def test_transfer_recovers_planted_map(cubic_action, cubic_coboundary):
    rng = np.random.default_rng(7)
    base, grid = rng.random(3), rng.random((4, 3))
    result = transfer_from_pcf(cubic_coboundary, base, grid, samples=10)
    assert result.residual < 1e-6
    offsets = result.values[:, 0] - np.array([cubic_transfer(x)[0] for x in grid])
    assert np.allclose(offsets, -cubic_transfer(base)[0], atol=1e-6)
    assert np.allclose(result.constants, [[0.3], [-0.2]], atol=1e-6)
    assert np.allclose(result(cubic_coboundary, grid[0]), result.values[0])


def test_transfer_of_constant_cocycle(cat_map):
    beta = constant_cocycle(cat_map, [[0.7]])
    result = transfer_from_pcf(beta, [0.1, 0.2], [[0.3, 0.4], [0.9, 0.5]], samples=5)
    assert np.allclose(result.values, 0)
    assert np.allclose(result.constants, [[0.7]])
    assert result.cycle_deviation == 0


def test_transfer_detects_obstruction(cosine_cocycle):
    with pytest.raises(CycleObstruction):
        transfer_from_pcf(cosine_cocycle, [0.1, 0.2], [[0.3, 0.4]], samples=10)

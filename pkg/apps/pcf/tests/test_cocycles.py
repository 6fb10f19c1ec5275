import numpy as np
import pytest

from core.exceptions import NotACocycle, ScenarioParseError
from apps.pcf.cocycles import (
    check_cocycle,
    cocycle_residual,
    compile_expressions,
    constant_cocycle,
    expression_cocycle,
    planted_coboundary,
)
from apps.pcf.norms import TwistSpec, rotation
from .utils import cubic_transfer, sine_transfer


def test_planted_coboundary_values(cat_map):
    beta = planted_coboundary(cat_map, sine_transfer, constants=[[0.5]])
    x = np.array([0.1, 0.7])
    expected = sine_transfer(cat_map.act((1,), x)) - sine_transfer(x) + 0.5
    assert np.allclose(beta((1,), x), expected)
    assert np.allclose(beta((0,), x), 0)


def test_inverse_generator_value(sine_coboundary, cat_map):
    x = np.array([0.3, 0.4])
    expected = sine_transfer(cat_map.act((-1,), x)) - sine_transfer(x)
    assert np.allclose(sine_coboundary((-1,), x), expected)


def test_constructed_cocycles_satisfy_equation(cubic_coboundary, rotated_coboundary):
    assert cocycle_residual(cubic_coboundary, samples=1000) < 1e-10
    assert cocycle_residual(rotated_coboundary, samples=1000) < 1e-10


def test_constant_cocycle(cubic_action):
    beta = constant_cocycle(cubic_action, [[1.0], [2.0]])
    assert np.allclose(beta((2, -1), [0.2, 0.3, 0.4]), [0.0])
    assert check_cocycle(beta) < 1e-12


def test_twisted_constants_must_be_homomorphism(cubic_action):
    twist = TwistSpec([rotation(0.2), rotation(0.5)])
    with pytest.raises(NotACocycle):
        constant_cocycle(cubic_action, [[1.0, 0.0], [0.0, 1.0]], twist)
    v = np.array([1.0, 2.0])
    constants = [(np.eye(2) - m) @ v for m in twist.matrices]
    assert check_cocycle(constant_cocycle(cubic_action, constants, twist)) < 1e-10


def test_inconsistent_generator_maps_fail(cubic_action):
    beta = expression_cocycle(cubic_action, [['0.01*sin(2*pi*x1)'], ['0']])
    with pytest.raises(NotACocycle):
        check_cocycle(beta)


def test_expression_matches_function(cubic_action):
    beta = expression_cocycle(cubic_action, [['0.01*sin(2*pi*x1)'], ['0.02*cos(2*pi*x2)']])
    planted = planted_coboundary(cubic_action, cubic_transfer)
    x = np.array([0.1, 0.2, 0.3])
    assert beta((1, 0), x)[0] == pytest.approx(0.01 * np.sin(2 * np.pi * 0.1))
    assert beta.kind == 'expression' and planted.kind == 'planted-coboundary'


def test_expression_errors():
    with pytest.raises(ScenarioParseError, match='Unknown symbols'):
        compile_expressions(['y1 + x1'], 2)
    with pytest.raises(ScenarioParseError):
        compile_expressions(['sin(('], 2)
    with pytest.raises(ScenarioParseError, match='Unknown functions'):
        compile_expressions(['foo(x1)'], 2)
    with pytest.raises(ScenarioParseError, match="'bar'"):
        compile_expressions(['sin(x1) + bar(x2, x1)', 'x2'], 2)


def test_holder_exponent_range(cat_map):
    with pytest.raises(NotACocycle):
        planted_coboundary(cat_map, sine_transfer, holder_exponent=1.5)

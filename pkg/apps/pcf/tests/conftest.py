import pytest

from apps.pcf.actions import ToralAbelianAction
from apps.pcf.cocycles import expression_cocycle, planted_coboundary
from apps.pcf.norms import TwistSpec, rotation
from .utils import CAT_MAP, CUBIC_UNIT, CUBIC_UNIT_PLUS_ONE, cubic_transfer, planar_transfer, sine_transfer


@pytest.fixture(scope='module')
def cat_map():
    return ToralAbelianAction([CAT_MAP])


@pytest.fixture(scope='module')
def cubic_action():
    return ToralAbelianAction([CUBIC_UNIT, CUBIC_UNIT_PLUS_ONE])


@pytest.fixture
def sine_coboundary(cat_map):
    return planted_coboundary(cat_map, sine_transfer)


@pytest.fixture
def cubic_coboundary(cubic_action):
    return planted_coboundary(cubic_action, cubic_transfer, constants=[[0.3], [-0.2]])


@pytest.fixture
def rotated_coboundary(cat_map):
    twist = TwistSpec([rotation(0.1)])
    return planted_coboundary(cat_map, planar_transfer, twist=twist, constants=[[0.05, -0.1]])


@pytest.fixture
def cosine_cocycle(cat_map):
    """Not cohomologous to a constant: its value at the fixed point 0 differs from orbit averages."""
    return expression_cocycle(cat_map, [['0.05*cos(2*pi*x1)']])

import pytest

from apps.roots.functionals import Functional
from apps.steinberg.cones import AdmissibleSet, cone_generated, is_admissible
from core.exceptions import NegativelyProportional, NotAdmissible

from .utils import ALPHA, ALPHA_BETA, BETA

F = Functional.of


def test_sl3_cone(sl3_system):
    assert cone_generated(F(ALPHA), F(BETA), sl3_system.roots) == [F(ALPHA_BETA)]


def test_commuting_directions_have_empty_cone(sl3_system):
    assert cone_generated(F(ALPHA), F(ALPHA_BETA), sl3_system.roots) == []


def test_opposite_generators(sl3_system):
    with pytest.raises(NegativelyProportional):
        cone_generated(F(ALPHA), F((-2, 1)), sl3_system.roots)


def test_cone_with_generators_is_admissible(sl3_system):
    mu, nu = F(ALPHA), F(BETA)
    members = set(cone_generated(mu, nu, sl3_system.roots)) | {mu, nu}
    assert is_admissible(members, sl3_system.roots)


def test_opposite_pair_is_not_admissible(sl3_system):
    assert not is_admissible({F(ALPHA), F((-2, 1))}, sl3_system.roots)


def test_missing_sum_is_not_admissible(sl3_system):
    with pytest.raises(NotAdmissible):
        AdmissibleSet.check({F(ALPHA), F(BETA)}, sl3_system.roots)


def test_positive_roots_are_admissible(sl3_system):
    admissible = AdmissibleSet.check({F(ALPHA), F(BETA), F(ALPHA_BETA)}, sl3_system.roots)
    assert len(admissible) == 3
    assert admissible.keys == sorted([ALPHA, BETA, ALPHA_BETA])

from fractions import Fraction

import pytest

from apps.linalg.matrices import QMatrix
from apps.lie.algebras import AbelianSubalgebra
from apps.lie.library import (
    diagonal_cartan,
    direct_sum_representation,
    special_linear,
    standard_representation,
    trivial_representation,
)
from apps.roots.functionals import Functional, primitive_integer_vector
from apps.roots.systems import (
    combined_classes,
    restricted_roots,
    restricted_weights,
    with_weights,
)
from core.exceptions import NotAbelian


def F(*values):
    return Functional.of(values)


def test_functional_keys():
    mu = F(Fraction(-2, 3), Fraction(4, 3))
    assert mu.ray_key == (-1, 2)
    assert mu.line_key == (1, -2)
    assert mu.is_negatively_proportional(F(1, -2))
    assert not mu.is_positively_proportional(F(1, -2))
    assert mu.ratio_to(F(-1, 2)) == Fraction(2, 3)
    assert primitive_integer_vector([0, 0]) == (0, 0)


def test_sl3_cartan_roots(sl3):
    system = restricted_roots(sl3, AbelianSubalgebra.from_matrices(sl3, diagonal_cartan(3)))
    assert set(system.roots) == {F(2, -1), F(-1, 2), F(1, 1), F(-2, 1), F(1, -2), F(-1, -1)}
    assert all(space.dim == 1 for space in system.roots.values())
    assert system.zero_space.dim == 2
    assert len(system.coarse_classes()) == 6


def test_sl4_example_roots(sl4, sl4_example):
    system = restricted_roots(sl4, sl4_example)
    dims = {mu: space.dim for mu, space in system.roots.items()}
    assert dims == {
        F(1, -1): 2, F(-1, 1): 2,
        F(3, 1): 2, F(-3, -1): 2,
        F(2, 2): 1, F(-2, -2): 1,
    }
    assert system.zero_space.dim == 5
    assert system.zero_space.dim + sum(dims.values()) == sl4.dim


def test_sl4_example_grading(sl4, sl4_example):
    system = restricted_roots(sl4, sl4_example)
    assert system.grading_violations() == []


def test_sl4_example_coarse_classes(sl4, sl4_example):
    classes = restricted_roots(sl4, sl4_example).coarse_classes()
    assert len(classes) == 6
    assert all(len(cls.members) == 1 for cls in classes)
    assert sorted(cls.label for cls in classes) == sorted(
        ['(1,-1)', '(-1,1)', '(3,1)', '(-3,-1)', '(1,1)', '(-1,-1)']
    )


def test_embedding_merges_proportional_roots(sl6_embedding):
    system = restricted_roots(sl6_embedding.parent, sl6_embedding)
    cls = system.class_of(F(1, -1))
    assert F(1, -1) in cls.members
    assert F(2, -2) in cls.members
    assert cls.dim == sum(system.roots[mu].dim for mu in cls.members)
    assert len(system.coarse_classes()) < len(system.roots)


def test_roots_come_in_opposite_pairs(sl6_embedding):
    system = restricted_roots(sl6_embedding.parent, sl6_embedding)
    for mu, space in system.roots.items():
        assert system.root_space(-mu).dim == space.dim


def test_non_commuting_generators_rejected(sl3):
    with pytest.raises(NotAbelian):
        AbelianSubalgebra.from_matrices(sl3, [QMatrix.elementary(3, 0, 1), QMatrix.elementary(3, 1, 0)])


def test_sl3_standard_weights(sl3):
    cartan = AbelianSubalgebra.from_matrices(sl3, diagonal_cartan(3))
    weights = restricted_weights(standard_representation(sl3), cartan)
    assert set(weights) == {F(1, 0), F(-1, 1), F(0, -1)}
    assert sum(space.dim for space in weights.values()) == 3


def test_sl2_weights_on_h():
    sl2 = special_linear(2)
    h = AbelianSubalgebra(sl2, [sl2.basis_vector(2)])
    weights = restricted_weights(standard_representation(sl2), h)
    assert set(weights) == {F(1), F(-1)}


def test_trivial_summand_gives_zero_weight():
    sl2 = special_linear(2)
    rho = direct_sum_representation(standard_representation(sl2), trivial_representation(sl2, 1))
    h = AbelianSubalgebra(sl2, [sl2.basis_vector(2)])
    weights = restricted_weights(rho, h)
    assert weights[F(0)].dim == 1


def test_combined_classes_merge_roots_and_weights():
    sl2 = special_linear(2)
    h = AbelianSubalgebra(sl2, [sl2.basis_vector(2)])
    system = with_weights(restricted_roots(sl2, h), standard_representation(sl2))
    classes = {cls.label: cls for cls in combined_classes(system)}
    # root 2 and weight 1 lie on the same ray
    assert set(classes) == {'(1)', '(-1)'}
    assert classes['(1)'].dim == 2
    assert classes['(1)'].space.ambient_dim == 5

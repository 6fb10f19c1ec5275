from fractions import Fraction

import pytest

from apps.linalg.matrices import QMatrix
from apps.extensions.forms import TwoForm
from apps.extensions.universal import (
    CentralExtensionAlgebra,
    build_single_form_extension,
    build_universal_extension,
    canonical_map_is_homomorphism,
    verify_extension_properties,
)
from apps.lie.algebras import LieAlgebra, semidirect
from apps.lie.library import standard_representation, trivial_representation
from core.exceptions import NotARepresentation


def test_sl2_extension_is_heisenberg_over_the_plane(sl2, sl2_standard):
    E = build_universal_extension(sl2, sl2_standard)
    assert E.extended.dim == 6
    assert E.center_dim == 1
    assert E.extended.labels[-1] == 'z1'
    assert E.extended.jacobi_violations() == []
    e1, e2 = E.extended.basis_vector(3), E.extended.basis_vector(4)
    assert E.extended.bracket(e1, e2) == (0, 0, 0, 0, 0, 1)


def test_sl2_extension_passes_every_check(sl2, sl2_standard):
    report = verify_extension_properties(build_universal_extension(sl2, sl2_standard))
    assert report.failures() == []
    assert all(check.passed for check in report.checks.values())


def test_non_symplectic_extension_is_the_semidirect_product(sl3):
    rho = standard_representation(sl3)
    E = build_universal_extension(sl3, rho)
    assert E.center_dim == 0
    assert E.extended is E.base
    assert E.extended.constants == semidirect(sl3, rho).constants
    assert verify_extension_properties(E).passed


def test_corrupted_constant_is_localized(sl2, sl2_standard):
    E = build_universal_extension(sl2, sl2_standard)
    table = [list(row) for row in E.extended.constants]
    # [E12, e2] = e1 in the true table
    table[0][4] = (Fraction(0),) * 6
    table[4][0] = (Fraction(0),) * 6
    broken = LieAlgebra(E.extended.labels, table, validate=False)
    report = verify_extension_properties(CentralExtensionAlgebra(E.base, E.forms, broken, E.representation))
    assert 'jacobi' in report.failures()
    assert report.checks['jacobi'].detail.startswith('Jacobi fails on')


def test_trivial_action_expects_no_center(sl2):
    rho = trivial_representation(sl2, 2)
    E = build_universal_extension(sl2, rho)
    assert E.center_dim == 1
    report = verify_extension_properties(E)
    assert 'center_from_module_brackets' in report.failures()
    assert report.checks['perfect'].passed is None
    assert report.checks['jacobi'].passed


def test_single_form_extension_factors_through_universal(sl2, sl2_standard):
    universal = build_universal_extension(sl2, sl2_standard)
    form = TwoForm(QMatrix.from_rows([[0, 3], [-3, 0]]))
    target = build_single_form_extension(sl2, sl2_standard, form)
    assert canonical_map_is_homomorphism(universal, target)


def test_single_form_must_be_invariant(sl3):
    rho = standard_representation(sl3)
    form = TwoForm(QMatrix.from_rows([[0, 1, 0], [-1, 0, 0], [0, 0, 0]]))
    with pytest.raises(NotARepresentation):
        build_single_form_extension(sl3, rho, form)

"""
The universal Lie central extension of g semidirect R^N.

The extension is g + R^N + z, one central coordinate per invariant two-form,
with

    [(X1, V1, Z1), (X2, V2, Z2)] = ([X1, X2], X1.V2 - X2.V1, (w_k(V1, V2))_k).
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from core.exceptions import NotARepresentation, NotInSpan
from apps.linalg.matrices import CoordinateChart, Subspace, Vector
from apps.lie.algebras import LieAlgebra, Representation, derived_and_perfect, semidirect
from .forms import TwoForm, invariant_two_forms

logger = logging.getLogger(__name__)


@dataclass
class CentralExtensionAlgebra:
    base: LieAlgebra
    forms: tuple[TwoForm, ...]
    extended: LieAlgebra
    representation: Representation = field(repr=False)

    @property
    def center_dim(self) -> int:
        return len(self.forms)

    @property
    def algebra_dim(self) -> int:
        return self.representation.algebra.dim

    @property
    def module_dim(self) -> int:
        return self.representation.target_dim

    def module_indices(self) -> range:
        return range(self.algebra_dim, self.algebra_dim + self.module_dim)

    def center_indices(self) -> range:
        return range(self.base.dim, self.extended.dim)

    def center_space(self) -> Subspace:
        return Subspace.span([self.extended.basis_vector(k) for k in self.center_indices()], self.extended.dim)

    def project(self, x: Sequence) -> Vector:
        """Drop the central coordinates."""
        return tuple(x[:self.base.dim])

    def as_dict(self) -> dict:
        return {
            'base_dim': self.base.dim,
            'extended_dim': self.extended.dim,
            'center_dim': self.center_dim,
            'labels': list(self.extended.labels),
            'forms': [f.as_json() for f in self.forms],
        }


def _extension_table(base: LieAlgebra, rho: Representation, forms: Sequence[TwoForm]) -> list[list[Vector]]:
    n, m = base.dim, len(forms)
    offset = rho.algebra.dim
    table = []
    for i in range(n + m):
        row = []
        for j in range(n + m):
            if i >= n or j >= n:
                row.append((Fraction(0),) * (n + m))
                continue
            values = [f.matrix.entry(i - offset, j - offset) for f in forms] \
                if i >= offset and j >= offset else [Fraction(0)] * m
            row.append(base.constants[i][j] + tuple(values))
        table.append(row)
    return table


def _extend(base: LieAlgebra, rho: Representation, forms: Sequence[TwoForm], prefix: str) -> LieAlgebra:
    labels = base.labels + tuple(f'{prefix}{k + 1}' for k in range(len(forms)))
    return LieAlgebra(labels, _extension_table(base, rho, forms))


def build_universal_extension(g: LieAlgebra, rho: Representation) -> CentralExtensionAlgebra:
    if rho.algebra is not g:
        raise NotARepresentation('Representation belongs to a different algebra')
    base = semidirect(g, rho)
    forms = tuple(invariant_two_forms(rho))
    extended = base if not forms else _extend(base, rho, forms, 'z')
    logger.info(
        'Universal central extension: base dim %d, center dim %d', base.dim, len(forms),
    )
    return CentralExtensionAlgebra(base, forms, extended, rho)


def build_single_form_extension(g: LieAlgebra, rho: Representation, form: TwoForm) -> CentralExtensionAlgebra:
    """
    Central extension by one invariant form. The form must be invariant.
    """
    if rho.algebra is not g:
        raise NotARepresentation('Representation belongs to a different algebra')
    for d in rho.action_matrices:
        if not form.is_invariant(d):
            raise NotARepresentation('Two-form is not invariant under the action')
    base = semidirect(g, rho)
    return CentralExtensionAlgebra(base, (form,), _extend(base, rho, [form], 'z'), rho)


def canonical_map(universal: CentralExtensionAlgebra, target: CentralExtensionAlgebra) -> list[Vector]:
    """
    Images of the universal basis: g and R^N go to themselves, z_k goes to
    c_k z where the target form is sum c_k w_k.
    """
    if target.center_dim != 1 or target.base.dim != universal.base.dim:
        raise ValueError('Target must be a single-form extension of the same base')
    n = universal.module_dim
    flats = [f.matrix.flatten() for f in universal.forms]
    if not flats:
        raise NotInSpan('Universal extension has no central part')
    coeffs = CoordinateChart(flats, n * n).coordinates(target.forms[0].matrix.flatten())
    images = [target.extended.basis_vector(i) for i in range(universal.base.dim)]
    z = target.extended.basis_vector(target.base.dim)
    images += [tuple(c * x for x in z) for c in coeffs]
    return images


def canonical_map_is_homomorphism(universal: CentralExtensionAlgebra, target: CentralExtensionAlgebra) -> bool:
    images = canonical_map(universal, target)
    source, dest = universal.extended, target.extended
    dim = dest.dim

    def image(x):
        out = [Fraction(0)] * dim
        for c, v in zip(x, images):
            if c:
                for k in range(dim):
                    out[k] += c * v[k]
        return tuple(out)

    for i in range(source.dim):
        for j in range(i + 1, source.dim):
            if image(source.constants[i][j]) != dest.bracket(images[i], images[j]):
                return False
    return True


@dataclass
class PropertyCheck:
    passed: bool | None
    detail: str = ''

    def as_dict(self) -> dict:
        return {'passed': self.passed, 'detail': self.detail}


@dataclass
class ExtensionPropertyReport:
    checks: dict[str, PropertyCheck]

    def failures(self) -> list[str]:
        return [name for name, check in self.checks.items() if check.passed is False]

    @property
    def passed(self) -> bool:
        return not self.failures()

    def as_dict(self) -> dict:
        return {
            'checks': {name: check.as_dict() for name, check in self.checks.items()},
            'failures': self.failures(),
        }


def _check_jacobi(E: CentralExtensionAlgebra) -> PropertyCheck:
    algebra = E.extended
    pairs = algebra.antisymmetry_violations()
    if pairs:
        i, j = pairs[0]
        return PropertyCheck(False, f'antisymmetry fails on ({algebra.labels[i]}, {algebra.labels[j]})')
    triples = algebra.jacobi_violations(limit=1)
    if triples:
        i, j, k = triples[0]
        return PropertyCheck(
            False, f'Jacobi fails on ({algebra.labels[i]}, {algebra.labels[j]}, {algebra.labels[k]})'
        )
    return PropertyCheck(True)


def _check_central(E: CentralExtensionAlgebra) -> PropertyCheck:
    algebra = E.extended
    for k in E.center_indices():
        for i in range(algebra.dim):
            if any(algebra.constants[k][i]):
                return PropertyCheck(False, f'{algebra.labels[k]} does not commute with {algebra.labels[i]}')
    return PropertyCheck(True)


def _check_projection(E: CentralExtensionAlgebra) -> PropertyCheck:
    algebra, base = E.extended, E.base
    for i in range(algebra.dim):
        for j in range(i + 1, algebra.dim):
            x = E.project(algebra.basis_vector(i))
            y = E.project(algebra.basis_vector(j))
            if E.project(algebra.constants[i][j]) != base.bracket(x, y):
                return PropertyCheck(
                    False, f'projection fails on ({algebra.labels[i]}, {algebra.labels[j]})'
                )
    return PropertyCheck(True)


def _blocks_cover_module(rho: Representation) -> bool:
    if not rho.blocks:
        return rho.target_dim == 0
    total = Subspace.zero(rho.target_dim)
    for block in rho.blocks:
        total = total + block
    return total.dim == rho.target_dim


def _check_perfect(E: CentralExtensionAlgebra) -> PropertyCheck:
    _, base_perfect = derived_and_perfect(E.representation.algebra)
    if not base_perfect or not _blocks_cover_module(E.representation):
        return PropertyCheck(None, 'not applicable: needs a perfect algebra and non-trivial declared blocks')
    derived, perfect = derived_and_perfect(E.extended)
    if not perfect:
        return PropertyCheck(False, f'derived algebra has dim {derived.dim} of {E.extended.dim}')
    return PropertyCheck(True)


def _check_center_generated(E: CentralExtensionAlgebra) -> PropertyCheck:
    algebra = E.extended
    module = list(E.module_indices())
    brackets = [algebra.constants[a][b] for a in module for b in module if a < b]
    generated = Subspace.span(brackets, algebra.dim).intersect(E.center_space())
    _, base_perfect = derived_and_perfect(E.base)
    expected = E.center_dim if base_perfect else 0
    if E.center_dim != expected:
        return PropertyCheck(False, f'center has dim {E.center_dim}, expected {expected}')
    if generated.dim != E.center_dim:
        return PropertyCheck(False, f'[e, e] spans dim {generated.dim} of center dim {E.center_dim}')
    return PropertyCheck(True)


def verify_extension_properties(E: CentralExtensionAlgebra) -> ExtensionPropertyReport:
    checks = {
        'jacobi': _check_jacobi(E),
        'center_is_central': _check_central(E),
        'projection_is_homomorphism': _check_projection(E),
        'perfect': _check_perfect(E),
        'center_from_module_brackets': _check_center_generated(E),
    }
    report = ExtensionPropertyReport(checks)
    for name in report.failures():
        logger.warning('Extension property %s failed: %s', name, checks[name].detail)
    return report

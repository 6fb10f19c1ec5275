"""
Spectral decompositions over the rationals.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from core.exceptions import NotCommuting, NotInSpan, RationalSpectrumRequired
from .matrices import QMatrix, Subspace, Vector, kernel, to_fraction

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class JCPair:
    semisimple_part: QMatrix
    nilpotent_part: QMatrix


def characteristic_polynomial(matrix: QMatrix) -> list[Fraction]:
    """
    Coefficients of det(xI - M), leading coefficient first.
    """
    if matrix.nrows == 0:
        return [Fraction(1)]
    return [to_fraction(c) for c in matrix.domain_matrix.charpoly()]


def rational_spectrum(matrix: QMatrix) -> list[tuple[Fraction, int]]:
    """
    Eigenvalues with algebraic multiplicities, sorted by eigenvalue.

    Raises RationalSpectrumRequired when the characteristic polynomial has an
    irreducible factor of degree two or more.
    """
    if not matrix.is_square:
        raise ValueError('rational_spectrum needs a square matrix')
    if matrix.nrows == 0:
        return []
    spectrum: dict[Fraction, int] = {}
    for factor, multiplicity in matrix.domain_matrix.charpoly_factor_list():
        coeffs = [to_fraction(c) for c in factor]
        if len(coeffs) != 2:
            raise RationalSpectrumRequired(
                f'Irreducible factor of degree {len(coeffs) - 1} in the characteristic polynomial'
            )
        a, b = coeffs
        root = -b / a
        spectrum[root] = spectrum.get(root, 0) + multiplicity
    return sorted(spectrum.items())


def generalized_eigenspace(matrix: QMatrix, eigenvalue, multiplicity: int) -> Subspace:
    shifted = matrix - QMatrix.identity(matrix.nrows).scale(eigenvalue)
    return kernel(shifted.power(multiplicity))


def check_commuting(family: Sequence[QMatrix]) -> None:
    for i, a in enumerate(family):
        for j in range(i + 1, len(family)):
            if not a.commutes_with(family[j]):
                raise NotCommuting(f'Family members {i} and {j} do not commute')


def joint_generalized_eigenspaces(
    family: Sequence[QMatrix], dim: int | None = None
) -> list[tuple[Vector, Subspace]]:
    """
    Joint generalized eigenspaces of a commuting family.

    Returns (eigenvalue vector, subspace) pairs sorted by eigenvalue vector.
    An empty family yields the whole space with the empty eigenvalue vector.
    """
    if dim is None:
        if not family:
            raise ValueError('dim is required for an empty family')
        dim = family[0].nrows
    check_commuting(family)

    pieces: list[tuple[Vector, Subspace]] = [((), Subspace.full(dim))]
    for member in family:
        eigenspaces = [
            (value, generalized_eigenspace(member, value, mult))
            for value, mult in rational_spectrum(member)
        ]
        refined = []
        for values, space in pieces:
            for value, eigenspace in eigenspaces:
                part = space.intersect(eigenspace)
                if part.dim:
                    refined.append((values + (value,), part))
        pieces = refined

    logger.debug('Joint decomposition of %d matrices on dim %d: %d pieces', len(family), dim, len(pieces))
    return sorted(pieces, key=lambda item: item[0])


def jordan_chevalley(matrix: QMatrix) -> JCPair:
    """
    Additive Jordan-Chevalley decomposition M = S + N.
    """
    n = matrix.nrows
    columns = []
    diagonal = []
    for value, mult in rational_spectrum(matrix):
        space = generalized_eigenspace(matrix, value, mult)
        columns.extend(space.basis)
        diagonal.extend([value] * space.dim)
    if n == 0:
        return JCPair(matrix, matrix)
    change = QMatrix.from_columns(columns, n)
    semisimple = change @ QMatrix.diag(diagonal) @ change.inverse()
    return JCPair(semisimple, matrix - semisimple)


def is_semisimple(matrix: QMatrix) -> bool:
    return jordan_chevalley(matrix).nilpotent_part.is_zero()


def restrict_to_subspace(matrix: QMatrix, space: Subspace) -> QMatrix:
    """
    Matrix of M on an invariant subspace, in its echelon basis.
    """
    columns = []
    for b in space.basis:
        image = matrix.apply(b)
        try:
            columns.append(space.coordinates(image))
        except NotInSpan:
            raise NotInSpan('Subspace is not invariant under the matrix')
    return QMatrix.from_columns(columns, space.dim)

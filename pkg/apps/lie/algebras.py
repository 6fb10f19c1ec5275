"""
Lie algebras as exact structure-constant tables.

Elements are coordinate vectors (tuples of Fractions) in the algebra's basis.
"""
import logging
from fractions import Fraction
from functools import cached_property
from typing import Callable, Sequence

from core.conf import rigidkit_settings
from core.exceptions import (
    ClosureExplosion,
    DependentGenerators,
    JacobiViolation,
    NotAbelian,
    NotARepresentation,
    NotInSpan,
)
from apps.linalg.matrices import (
    CoordinateChart,
    QMatrix,
    Subspace,
    Vector,
    kernel,
    stack_rows,
    to_vector,
)
from apps.linalg.spectra import jordan_chevalley

logger = logging.getLogger(__name__)


class LieAlgebra:
    """
    Finite-dimensional Lie algebra over QQ.

    constants[i][j] is the coordinate vector of [b_i, b_j]. When a matrix
    realization is given it must reproduce the constants; otherwise the
    Jacobi identity is checked on every basis triple.
    """

    def __init__(
        self,
        labels: Sequence[str],
        constants: Sequence[Sequence[Sequence]],
        realization: Sequence[QMatrix] | None = None,
        validate: bool = True,
        coordinate_map: Callable[[QMatrix], Vector] | None = None,
    ):
        self.labels = tuple(labels)
        n = len(self.labels)
        self.constants = tuple(tuple(to_vector(c) for c in row) for row in constants)
        if len(self.constants) != n or any(len(row) != n for row in self.constants):
            raise ValueError('Structure constant table does not match the basis size')
        self.realization = tuple(realization) if realization is not None else None
        self._coordinate_map = coordinate_map
        if validate:
            self.validate()

    def __repr__(self):
        return f'LieAlgebra(dim={self.dim})'

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def has_realization(self) -> bool:
        return self.realization is not None

    # Validation

    def antisymmetry_violations(self) -> list[tuple[int, int]]:
        bad = []
        for i in range(self.dim):
            for j in range(i, self.dim):
                if any(a + b for a, b in zip(self.constants[i][j], self.constants[j][i])):
                    bad.append((i, j))
        return bad

    def jacobi_violations(self, limit: int | None = None) -> list[tuple[int, int, int]]:
        """
        Basis triples (i < j < k) where the Jacobi identity fails.
        """
        bad = []
        ads = self.ad_basis
        c = self.constants
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                for k in range(j + 1, self.dim):
                    total = [
                        x + y + z for x, y, z in zip(
                            ads[i].apply(c[j][k]), ads[j].apply(c[k][i]), ads[k].apply(c[i][j])
                        )
                    ]
                    if any(total):
                        bad.append((i, j, k))
                        if limit is not None and len(bad) >= limit:
                            return bad
        return bad

    def realization_violations(self) -> list[tuple[int, int]]:
        bad = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                lhs = self.realization[i].commutator(self.realization[j])
                if lhs != self.element_to_matrix(self.constants[i][j]):
                    bad.append((i, j))
        return bad

    def validate(self) -> None:
        bad = self.antisymmetry_violations()
        if bad:
            raise JacobiViolation(f'Antisymmetry fails for basis pair {bad[0]}')
        if self.has_realization:
            bad = self.realization_violations()
            if bad:
                raise JacobiViolation(f'Matrix realization disagrees on basis pair {bad[0]}')
            return
        bad = self.jacobi_violations(limit=1)
        if bad:
            i, j, k = bad[0]
            raise JacobiViolation(
                f'Jacobi identity fails on ({self.labels[i]}, {self.labels[j]}, {self.labels[k]})'
            )

    # Brackets and adjoint action

    def basis_vector(self, i: int) -> Vector:
        return tuple(Fraction(int(k == i)) for k in range(self.dim))

    def zero(self) -> Vector:
        return (Fraction(0),) * self.dim

    @cached_property
    def ad_basis(self) -> tuple[QMatrix, ...]:
        # column j of ad(b_i) is [b_i, b_j]
        return tuple(
            QMatrix.from_columns(self.constants[i], self.dim) if self.dim else QMatrix.zeros(0)
            for i in range(self.dim)
        )

    def ad(self, x: Sequence) -> QMatrix:
        x = to_vector(x)
        out = QMatrix.zeros(self.dim)
        for coeff, mat in zip(x, self.ad_basis):
            if coeff:
                out = out + mat.scale(coeff)
        return out

    def bracket(self, x: Sequence, y: Sequence) -> Vector:
        x = to_vector(x)
        y = to_vector(y)
        out = [Fraction(0)] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                coeff = xi * yj
                for k, c in enumerate(self.constants[i][j]):
                    if c:
                        out[k] += coeff * c
        return tuple(out)

    # Matrix realization

    @cached_property
    def _chart(self) -> CoordinateChart:
        size = self.realization[0].nrows if self.realization else 0
        return CoordinateChart([m.flatten() for m in self.realization], size * size)

    def element_to_matrix(self, x: Sequence) -> QMatrix:
        if not self.has_realization:
            raise NotInSpan('Algebra has no matrix realization')
        x = to_vector(x)
        size = self.realization[0].nrows if self.realization else 0
        out = QMatrix.zeros(size)
        for coeff, mat in zip(x, self.realization):
            if coeff:
                out = out + mat.scale(coeff)
        return out

    def matrix_to_element(self, matrix: QMatrix) -> Vector:
        """
        Coordinates of a matrix in the realization; NotInSpan if outside.
        """
        if not self.has_realization:
            raise NotInSpan('Algebra has no matrix realization')
        if self._coordinate_map is not None:
            coords = self._coordinate_map(matrix)
            if self.element_to_matrix(coords) != matrix:
                raise NotInSpan('Matrix is not in the algebra')
            return coords
        return self._chart.coordinates(matrix.flatten())

    @classmethod
    def from_basis_matrices(
        cls,
        matrices: Sequence[QMatrix],
        labels: Sequence[str] | None = None,
        coordinate_map: Callable[[QMatrix], Vector] | None = None,
    ) -> 'LieAlgebra':
        """
        Structure constants of a bracket-closed, independent matrix basis.
        """
        matrices = tuple(matrices)
        labels = tuple(labels) if labels else tuple(f'b{i + 1}' for i in range(len(matrices)))
        shell = cls(labels, _zero_table(len(matrices)), realization=matrices,
                    validate=False, coordinate_map=coordinate_map)
        constants = [
            [shell.matrix_to_element(a.commutator(b)) for b in matrices] for a in matrices
        ]
        return cls(labels, constants, realization=matrices, validate=False,
                   coordinate_map=coordinate_map)


def _zero_table(n: int) -> list[list[Vector]]:
    zero = (Fraction(0),) * n
    return [[zero] * n for _ in range(n)]


def build_from_matrices(
    generators: Sequence[QMatrix],
    labels: Sequence[str] | None = None,
    cap: int | None = None,
) -> LieAlgebra:
    """
    Bracket closure of matrix generators.

    Independent generators keep their order and labels; brackets that leave
    the current span are appended as c1, c2, ...
    """
    cap = rigidkit_settings.CLOSURE_DIMENSION_CAP if cap is None else cap
    generators = list(generators)
    if not generators:
        return LieAlgebra((), (), realization=(), validate=False)
    size = generators[0].nrows
    if any(not g.is_square or g.nrows != size for g in generators):
        raise ValueError('Generators must be square matrices of one size')
    labels = list(labels) if labels else [f'g{i + 1}' for i in range(len(generators))]

    basis: list[QMatrix] = []
    basis_labels: list[str] = []
    span = Subspace.zero(size * size)

    def add(matrix, label):
        nonlocal span
        flat = matrix.flatten()
        if not any(flat) or span.contains(flat):
            return
        span = span + Subspace.span([flat], size * size)
        basis.append(matrix)
        basis_labels.append(label)
        if len(basis) > cap:
            raise ClosureExplosion(f'Bracket closure exceeded dimension cap {cap}')

    for g, label in zip(generators, labels):
        add(g, label)

    independent = len(basis)
    done = 0
    while done < len(basis):
        current = basis[done]
        for j in range(done):
            add(basis[j].commutator(current), f'c{len(basis) - independent + 1}')
        done += 1

    logger.info('Bracket closure of %d generators has dimension %d', len(generators), len(basis))
    return LieAlgebra.from_basis_matrices(basis, basis_labels)


class Representation:
    """
    Action matrices d rho(b_i), one per basis element of the algebra.
    """

    def __init__(
        self,
        algebra: LieAlgebra,
        action_matrices: Sequence[QMatrix],
        blocks: Sequence[Subspace] | None = None,
        target_dim: int | None = None,
    ):
        self.algebra = algebra
        self.action_matrices = tuple(action_matrices)
        if target_dim is None:
            if not self.action_matrices:
                raise NotARepresentation('target_dim is required for the zero algebra')
            target_dim = self.action_matrices[0].nrows
        self.target_dim = target_dim
        self.blocks = tuple(blocks) if blocks else ()
        self._check()

    def _check(self) -> None:
        if len(self.action_matrices) != self.algebra.dim:
            raise NotARepresentation(
                f'Expected {self.algebra.dim} action matrices, got {len(self.action_matrices)}'
            )
        for m in self.action_matrices:
            if m.shape != (self.target_dim, self.target_dim):
                raise NotARepresentation(f'Action matrix has shape {m.shape}')
        c = self.algebra.constants
        for i in range(self.algebra.dim):
            for j in range(i + 1, self.algebra.dim):
                lhs = self.action_matrices[i].commutator(self.action_matrices[j])
                if lhs != self.act(c[i][j]):
                    raise NotARepresentation(
                        f'Bracket of {self.algebra.labels[i]} and {self.algebra.labels[j]} is not preserved'
                    )
        for index, block in enumerate(self.blocks):
            if block.ambient_dim != self.target_dim:
                raise NotARepresentation(f'Block {index} lives in the wrong space')
            moved = False
            for m in self.action_matrices:
                for v in block.basis:
                    image = m.apply(v)
                    if not block.contains(image):
                        raise NotARepresentation(f'Block {index} is not invariant')
                    moved = moved or any(image)
            if not moved:
                raise NotARepresentation(f'Block {index} carries the trivial action')

    def act(self, x: Sequence) -> QMatrix:
        out = QMatrix.zeros(self.target_dim)
        for coeff, mat in zip(to_vector(x), self.action_matrices):
            if coeff:
                out = out + mat.scale(coeff)
        return out


class AbelianSubalgebra:
    """
    Commuting, linearly independent elements of a parent algebra.
    """

    def __init__(self, parent: LieAlgebra, generators: Sequence[Sequence]):
        self.parent = parent
        self.generators = tuple(to_vector(g) for g in generators)
        if Subspace.span(self.generators, parent.dim).dim != len(self.generators):
            raise DependentGenerators('Abelian generators are linearly dependent')
        for i, x in enumerate(self.generators):
            for j in range(i + 1, len(self.generators)):
                if any(parent.bracket(x, self.generators[j])):
                    raise NotAbelian(f'Generators {i + 1} and {j + 1} do not commute')

    @classmethod
    def from_matrices(cls, parent: LieAlgebra, matrices: Sequence[QMatrix]) -> 'AbelianSubalgebra':
        for i, a in enumerate(matrices):
            for j in range(i + 1, len(matrices)):
                if not a.commutes_with(matrices[j]):
                    raise NotAbelian(f'Generators {i + 1} and {j + 1} do not commute')
        return cls(parent, [parent.matrix_to_element(m) for m in matrices])

    @property
    def rank(self) -> int:
        return len(self.generators)

    def generator_matrices(self) -> list[QMatrix]:
        return [self.parent.element_to_matrix(g) for g in self.generators]

    def split_generators(self) -> list[Vector]:
        return [split_part(self.parent, g) for g in self.generators]

    def span(self) -> Subspace:
        return Subspace.span(self.generators, self.parent.dim)


def semidirect(g: LieAlgebra, rho: Representation) -> LieAlgebra:
    """
    g semidirect R^N with [(X,0),(0,t)] = (0, d rho(X) t).
    """
    if rho.algebra is not g:
        raise NotARepresentation('Representation belongs to a different algebra')
    n, big_n = g.dim, rho.target_dim
    total = n + big_n
    zero = (Fraction(0),) * total
    table = [[zero] * total for _ in range(total)]
    for i in range(n):
        for j in range(n):
            table[i][j] = g.constants[i][j] + (Fraction(0),) * big_n
        for k in range(big_n):
            image = (Fraction(0),) * n + rho.action_matrices[i].column(k)
            table[i][n + k] = image
            table[n + k][i] = tuple(-x for x in image)
    labels = g.labels + tuple(f'e{k + 1}' for k in range(big_n))

    realization = None
    if g.has_realization and n:
        realization = []
        for i in range(n):
            affine = QMatrix.block_diag(rho.action_matrices[i], QMatrix.zeros(1))
            realization.append(QMatrix.block_diag(g.realization[i], affine))
        for k in range(big_n):
            rows = [[0] * (big_n + 1) for _ in range(big_n + 1)]
            rows[k][big_n] = 1
            realization.append(
                QMatrix.block_diag(QMatrix.zeros(g.realization[0].nrows), QMatrix.from_rows(rows))
            )

    logger.info('Semidirect product of dim %d algebra with R^%d', n, big_n)
    return LieAlgebra(labels, table, realization=realization)


def centralizer(algebra: LieAlgebra, elements: Sequence[Sequence]) -> Subspace:
    """
    {Z : [Z, s] = 0 for every s}.
    """
    if not elements:
        return Subspace.full(algebra.dim)
    return kernel(stack_rows([algebra.ad(s) for s in elements]))


def center(algebra: LieAlgebra) -> Subspace:
    return centralizer(algebra, [algebra.basis_vector(i) for i in range(algebra.dim)])


def derived_and_perfect(algebra: LieAlgebra) -> tuple[Subspace, bool]:
    vectors = [algebra.constants[i][j] for i in range(algebra.dim) for j in range(i + 1, algebra.dim)]
    derived = Subspace.span(vectors, algebra.dim)
    return derived, derived.dim == algebra.dim


def is_ideal(algebra: LieAlgebra, space: Subspace) -> bool:
    for i in range(algebra.dim):
        for v in space.basis:
            if not space.contains(algebra.ad_basis[i].apply(v)):
                return False
    return True


def split_part(algebra: LieAlgebra, x: Sequence) -> Vector:
    """
    The element x_s with ad(x_s) = ad(x)_s.

    Uses the matrix realization when there is one; otherwise solves
    ad(n) = ad(x)_n and returns x - n, which keeps any central component.
    """
    x = to_vector(x)
    if algebra.has_realization:
        parts = jordan_chevalley(algebra.element_to_matrix(x))
        return algebra.matrix_to_element(parts.semisimple_part)
    nilpotent = jordan_chevalley(algebra.ad(x)).nilpotent_part
    flats = [m.flatten() for m in algebra.ad_basis]
    _, pivots = QMatrix.from_rows(flats, algebra.dim ** 2).transpose().rref()
    chart = CoordinateChart([flats[p] for p in pivots], algebra.dim ** 2)
    coeffs = chart.coordinates(nilpotent.flatten())
    n = [Fraction(0)] * algebra.dim
    for p, c in zip(pivots, coeffs):
        n[p] = c
    return tuple(a - b for a, b in zip(x, n))


def killing_form(algebra: LieAlgebra, elements: Sequence[Sequence]) -> QMatrix:
    """
    Gram matrix tr(ad x ad y) on the given elements.
    """
    ads = [algebra.ad(e) for e in elements]
    return QMatrix.from_rows([[(a @ b).trace() for b in ads] for a in ads], len(ads))


"""
Standard algebras and representations used by scenarios and tests.
"""
from fractions import Fraction

from apps.linalg.matrices import QMatrix, Subspace, Vector
from .algebras import LieAlgebra, Representation


def sl_root_indices(n: int) -> list[tuple[int, int]]:
    """Off-diagonal positions (i, j), 0-based, in basis order."""
    return [(i, j) for i in range(n) for j in range(n) if i != j]


def sl_basis(n: int) -> list[tuple[str, QMatrix]]:
    """
    E_ij (i != j, lexicographic) followed by H_k = E_kk - E_k+1,k+1.
    """
    basis = [(f'E{i + 1}{j + 1}', QMatrix.elementary(n, i, j)) for i, j in sl_root_indices(n)]
    for k in range(n - 1):
        values = [0] * n
        values[k], values[k + 1] = 1, -1
        basis.append((f'H{k + 1}', QMatrix.diag(values)))
    return basis


def _sl_coordinates(n: int):
    positions = sl_root_indices(n)

    def coordinates(matrix: QMatrix) -> Vector:
        off = [matrix.entry(i, j) for i, j in positions]
        running = Fraction(0)
        cartan = []
        for k in range(n - 1):
            running += matrix.entry(k, k)
            cartan.append(running)
        return tuple(off + cartan)

    return coordinates


def special_linear(n: int) -> LieAlgebra:
    if n < 2:
        raise ValueError('sl(n) needs n >= 2')
    labels, matrices = zip(*sl_basis(n))
    return LieAlgebra.from_basis_matrices(matrices, labels, coordinate_map=_sl_coordinates(n))


def diagonal_cartan(n: int) -> list[QMatrix]:
    return [m for label, m in sl_basis(n) if label.startswith('H')]


def sl2_triple() -> tuple[QMatrix, QMatrix, QMatrix]:
    e = QMatrix.from_rows([[0, 1], [0, 0]])
    h = QMatrix.from_rows([[1, 0], [0, -1]])
    f = QMatrix.from_rows([[0, 0], [1, 0]])
    return e, h, f


def zero_algebra() -> LieAlgebra:
    return LieAlgebra((), (), validate=False)


def abelian_algebra(dim: int) -> LieAlgebra:
    zero = (Fraction(0),) * dim
    return LieAlgebra([f'a{i + 1}' for i in range(dim)], [[zero] * dim for _ in range(dim)])


def standard_representation(algebra: LieAlgebra, declare_block: bool = True) -> Representation:
    """The defining representation of a matrix algebra."""
    size = algebra.realization[0].nrows
    blocks = [Subspace.full(size)] if declare_block else None
    return Representation(algebra, algebra.realization, blocks=blocks, target_dim=size)


def trivial_representation(algebra: LieAlgebra, dim: int) -> Representation:
    return Representation(algebra, [QMatrix.zeros(dim)] * algebra.dim, target_dim=dim)


def adjoint_representation(algebra: LieAlgebra) -> Representation:
    return Representation(algebra, algebra.ad_basis, target_dim=algebra.dim)


def direct_sum_representation(first: Representation, second: Representation) -> Representation:
    if first.algebra is not second.algebra:
        raise ValueError('Summands must represent the same algebra')
    n1, n2 = first.target_dim, second.target_dim
    matrices = [QMatrix.block_diag(a, b) for a, b in zip(first.action_matrices, second.action_matrices)]
    blocks = [Subspace.span([tuple(b) + (0,) * n2 for b in block.basis], n1 + n2) for block in first.blocks]
    blocks += [Subspace.span([(0,) * n1 + tuple(b) for b in block.basis], n1 + n2) for block in second.blocks]
    return Representation(first.algebra, matrices, blocks=blocks, target_dim=n1 + n2)

"""
Exact rational matrices and subspaces.

QMatrix wraps a dense sympy DomainMatrix over QQ. Everything that leaves this
module is a fractions.Fraction so callers never see domain elements.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from core.exceptions import DependentGenerators, NotInSpan

logger = logging.getLogger(__name__)

Vector = tuple[Fraction, ...]


def to_fraction(value) -> Fraction:
    """
    Coerce int, str, Fraction, [num, den] pairs and QQ elements.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (list, tuple)):
        num, den = value
        return Fraction(int(num), int(den))
    if hasattr(value, 'numerator') and hasattr(value, 'denominator'):
        return Fraction(int(value.numerator), int(value.denominator))
    return Fraction(value)


def to_vector(values: Iterable) -> Vector:
    return tuple(to_fraction(v) for v in values)


def _qq(value):
    f = to_fraction(value)
    return QQ(f.numerator, f.denominator)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def combine(coeffs: Sequence[Fraction], vectors: Sequence[Vector], dim: int) -> Vector:
    """Linear combination sum c_i v_i."""
    out = [Fraction(0)] * dim
    for c, v in zip(coeffs, vectors):
        if c:
            for k, x in enumerate(v):
                if x:
                    out[k] += c * x
    return tuple(out)


class QMatrix:
    """
    Immutable exact rational matrix.
    """

    def __init__(self, dm: DomainMatrix):
        if dm.domain != QQ:
            dm = dm.convert_to(QQ)
        self._dm = dm.to_dense()

    # Construction

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], ncols: int | None = None) -> 'QMatrix':
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError('Ragged matrix rows')
        data = [[_qq(x) for x in r] for r in rows]
        return cls(DomainMatrix(data, (len(rows), ncols), QQ))

    @classmethod
    def from_flat(cls, values: Sequence, nrows: int, ncols: int) -> 'QMatrix':
        values = list(values)
        return cls.from_rows([values[i * ncols:(i + 1) * ncols] for i in range(nrows)], ncols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> 'QMatrix':
        return cls.from_rows(columns, nrows).transpose() if columns else cls.zeros(nrows, 0)

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> 'QMatrix':
        ncols = nrows if ncols is None else ncols
        return cls.from_rows([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int) -> 'QMatrix':
        return cls.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def diag(cls, values: Sequence) -> 'QMatrix':
        n = len(values)
        return cls.from_rows([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def elementary(cls, n: int, i: int, j: int) -> 'QMatrix':
        """E_ij with 0-based indices."""
        return cls.from_rows([[1 if (r, c) == (i, j) else 0 for c in range(n)] for r in range(n)], n)

    @classmethod
    def block_diag(cls, *blocks: 'QMatrix') -> 'QMatrix':
        n = sum(b.nrows for b in blocks)
        m = sum(b.ncols for b in blocks)
        rows = [[Fraction(0)] * m for _ in range(n)]
        r0 = c0 = 0
        for b in blocks:
            for i, row in enumerate(b.to_rows()):
                rows[r0 + i][c0:c0 + b.ncols] = row
            r0 += b.nrows
            c0 += b.ncols
        return cls.from_rows(rows, m)

    # Access

    @property
    def domain_matrix(self) -> DomainMatrix:
        return self._dm

    @property
    def shape(self) -> tuple[int, int]:
        return self._dm.shape

    @property
    def nrows(self) -> int:
        return self._dm.shape[0]

    @property
    def ncols(self) -> int:
        return self._dm.shape[1]

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    @cached_property
    def _rows(self) -> tuple[Vector, ...]:
        return tuple(tuple(to_fraction(x) for x in row) for row in self._dm.to_list())

    def to_rows(self) -> list[list[Fraction]]:
        return [list(r) for r in self._rows]

    def row(self, i: int) -> Vector:
        return self._rows[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self._rows)

    def entry(self, i: int, j: int) -> Fraction:
        return self._rows[i][j]

    def __getitem__(self, key) -> Fraction:
        i, j = key
        return self._rows[i][j]

    def flatten(self) -> Vector:
        return tuple(x for r in self._rows for x in r)

    # Arithmetic

    def __add__(self, other: 'QMatrix') -> 'QMatrix':
        return QMatrix(self._dm + other._dm)

    def __sub__(self, other: 'QMatrix') -> 'QMatrix':
        return QMatrix(self._dm - other._dm)

    def __neg__(self) -> 'QMatrix':
        return QMatrix(-self._dm)

    def __matmul__(self, other: 'QMatrix') -> 'QMatrix':
        if self.ncols != other.nrows:
            raise ValueError(f'Shape mismatch {self.shape} @ {other.shape}')
        if self.nrows == 0 or other.ncols == 0 or self.ncols == 0:
            return QMatrix.zeros(self.nrows, other.ncols)
        return QMatrix(self._dm.matmul(other._dm))

    def scale(self, c) -> 'QMatrix':
        return QMatrix(self._dm.scalarmul(_qq(c)))

    def __mul__(self, c) -> 'QMatrix':
        if isinstance(c, QMatrix):
            return self @ c
        return self.scale(c)

    __rmul__ = scale

    def transpose(self) -> 'QMatrix':
        return QMatrix(self._dm.transpose())

    @property
    def T(self) -> 'QMatrix':
        return self.transpose()

    def trace(self) -> Fraction:
        return sum((self._rows[i][i] for i in range(min(self.shape))), Fraction(0))

    def det(self) -> Fraction:
        if self.nrows == 0:
            return Fraction(1)
        return to_fraction(self._dm.det())

    def rank(self) -> int:
        if self.nrows == 0 or self.ncols == 0:
            return 0
        return self._dm.rank()

    def inverse(self) -> 'QMatrix':
        if self.nrows == 0:
            return self
        return QMatrix(self._dm.inv())

    def power(self, k: int) -> 'QMatrix':
        if k < 0:
            return self.inverse().power(-k)
        if k == 0:
            return QMatrix.identity(self.nrows)
        return QMatrix(self._dm.pow(k))

    def commutator(self, other: 'QMatrix') -> 'QMatrix':
        """[A, B] = AB - BA."""
        return self @ other - other @ self

    def commutes_with(self, other: 'QMatrix') -> bool:
        return self.commutator(other).is_zero()

    def conjugate(self, g: 'QMatrix') -> 'QMatrix':
        """g A g^-1."""
        return g @ self @ g.inverse()

    def apply(self, vector: Sequence) -> Vector:
        v = to_vector(vector)
        return tuple(dot(r, v) for r in self._rows)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._rows for x in r)

    def is_identity(self) -> bool:
        return self.is_square and self == QMatrix.identity(self.nrows)

    def is_nilpotent(self) -> bool:
        if self.nrows == 0:
            return True
        return self.power(self.nrows).is_zero()

    def rref(self) -> tuple['QMatrix', tuple[int, ...]]:
        if self.nrows == 0 or self.ncols == 0:
            return self, ()
        r, pivots = self._dm.rref()
        return QMatrix(r), tuple(pivots)

    # Comparison

    def __eq__(self, other) -> bool:
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.shape, self._rows))

    def __repr__(self) -> str:
        body = ', '.join('[' + ', '.join(str(x) for x in r) + ']' for r in self._rows)
        return f'QMatrix([{body}])'


@dataclass(frozen=True)
class Subspace:
    """
    Row space in QQ^n, stored by its reduced row echelon basis so equal
    subspaces compare equal.
    """
    ambient_dim: int
    basis: tuple[Vector, ...] = ()

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> 'Subspace':
        rows = [to_vector(v) for v in vectors]
        rows = [r for r in rows if any(r)]
        if not rows:
            return cls(ambient_dim, ())
        reduced, pivots = QMatrix.from_rows(rows, ambient_dim).rref()
        return cls(ambient_dim, tuple(reduced.row(i) for i in range(len(pivots))))

    @classmethod
    def zero(cls, ambient_dim: int) -> 'Subspace':
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> 'Subspace':
        return cls.span(QMatrix.identity(ambient_dim).to_rows(), ambient_dim)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return self.dim

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(k for k, x in enumerate(b) if x) for b in self.basis)

    def as_matrix(self) -> QMatrix:
        return QMatrix.from_rows(self.basis, self.ambient_dim)

    def coordinates(self, vector: Sequence) -> Vector:
        """
        Coordinates in the echelon basis; raises NotInSpan otherwise.
        """
        v = to_vector(vector)
        coeffs = tuple(v[p] for p in self.pivots)
        if combine(coeffs, self.basis, self.ambient_dim) != v:
            raise NotInSpan(f'Vector {list(map(str, v))} is not in the subspace')
        return coeffs

    def contains(self, vector: Sequence) -> bool:
        try:
            self.coordinates(vector)
        except NotInSpan:
            return False
        return True

    __contains__ = contains

    def contains_subspace(self, other: 'Subspace') -> bool:
        return all(self.contains(b) for b in other.basis)

    def __add__(self, other: 'Subspace') -> 'Subspace':
        return Subspace.span(self.basis + other.basis, self.ambient_dim)

    def intersect(self, other: 'Subspace') -> 'Subspace':
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim)
        # c = (a, b) with a.U = b.W
        stacked = QMatrix.from_rows(
            list(self.basis) + [tuple(-x for x in w) for w in other.basis], self.ambient_dim
        )
        relations = kernel(stacked.transpose())
        vectors = [combine(c[:self.dim], self.basis, self.ambient_dim) for c in relations.basis]
        return Subspace.span(vectors, self.ambient_dim)

    def is_zero(self) -> bool:
        return self.dim == 0


class CoordinateChart:
    """
    Coordinates with respect to an arbitrary (non-echelon) linearly
    independent basis.
    """

    def __init__(self, basis: Sequence[Sequence], ambient_dim: int):
        self.basis = tuple(to_vector(b) for b in basis)
        self.ambient_dim = ambient_dim
        if not self.basis:
            self._pivots = ()
            self._solver = QMatrix.zeros(0, 0)
            return
        reduced, pivots = QMatrix.from_rows(self.basis, ambient_dim).rref()
        if len(pivots) != len(self.basis):
            raise DependentGenerators('Chart basis is linearly dependent')
        self._pivots = pivots
        square = QMatrix.from_rows([[b[p] for p in pivots] for b in self.basis])
        self._solver = square.inverse()

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coordinates(self, vector: Sequence) -> Vector:
        v = to_vector(vector)
        if not self.basis:
            if any(v):
                raise NotInSpan('Vector is not in the zero subspace')
            return ()
        # c . B[:, P] = v[P]
        target = tuple(v[p] for p in self._pivots)
        coeffs = self._solver.transpose().apply(target)
        if combine(coeffs, self.basis, self.ambient_dim) != v:
            raise NotInSpan('Vector is not in the span of the chart basis')
        return coeffs

    def contains(self, vector: Sequence) -> bool:
        try:
            self.coordinates(vector)
        except NotInSpan:
            return False
        return True


def kernel(matrix: QMatrix) -> Subspace:
    """
    Exact null space {v : M v = 0}.
    """
    n = matrix.ncols
    if matrix.nrows == 0 or matrix.is_zero():
        return Subspace.full(n)
    reduced, pivots = matrix.rref()
    free = [j for j in range(n) if j not in pivots]
    vectors = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -reduced.entry(i, f)
        vectors.append(v)
    logger.debug('kernel of %dx%d matrix has dimension %d', matrix.nrows, n, len(vectors))
    return Subspace.span(vectors, n)


def stack_rows(matrices: Sequence[QMatrix]) -> QMatrix:
    """Vertical concatenation."""
    ncols = matrices[0].ncols if matrices else 0
    return QMatrix.from_rows([r for m in matrices for r in m.to_rows()], ncols)


def fraction_pair(value) -> list[int]:
    """[num, den] form used in reports."""
    f = to_fraction(value)
    return [f.numerator, f.denominator]


def vector_pairs(vector: Sequence) -> list[list[int]]:
    return [fraction_pair(x) for x in vector]


def matrix_pairs(matrix: QMatrix) -> list[list[list[int]]]:
    return [vector_pairs(r) for r in matrix.to_rows()]

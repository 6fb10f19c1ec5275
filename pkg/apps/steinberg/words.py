"""
Unipotent elements of coarse class subgroups and words in them.

A RootGroups object binds a restricted root system whose algebra has a
matrix realization; it knows the class subspaces, takes exact exponentials
and logarithms, and splits algebra elements into root-space components.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from core.exceptions import NotInSpan, NotUnipotent, UnsupportedAmbient
from apps.linalg.matrices import (
    CoordinateChart,
    QMatrix,
    Subspace,
    Vector,
    combine,
    matrix_pairs,
    to_vector,
)
from apps.roots.functionals import Functional, ray_label
from apps.roots.systems import RestrictedRootSystem

logger = logging.getLogger(__name__)

ClassKey = tuple[int, ...]


def nilpotent_exp(matrix: QMatrix) -> QMatrix:
    """exp of a nilpotent matrix as a terminating series."""
    if not matrix.is_nilpotent():
        raise NotUnipotent('exp is only taken of nilpotent matrices')
    n = matrix.nrows
    total = QMatrix.identity(n)
    term = QMatrix.identity(n)
    for k in range(1, n + 1):
        term = (term @ matrix).scale(Fraction(1, k))
        if term.is_zero():
            break
        total = total + term
    return total


def unipotent_log(matrix: QMatrix) -> QMatrix:
    """log of a unipotent matrix, sum of (-1)^(k+1) N^k / k with N = U - I."""
    n = matrix.nrows
    nilpotent = matrix - QMatrix.identity(n)
    if not nilpotent.is_nilpotent():
        raise NotUnipotent('Matrix is not unipotent')
    total = QMatrix.zeros(n)
    power = QMatrix.identity(n)
    for k in range(1, n + 1):
        power = power @ nilpotent
        if power.is_zero():
            break
        sign = 1 if k % 2 else -1
        total = total + power.scale(Fraction(sign, k))
    return total


@dataclass(frozen=True)
class UnipotentElement:
    key: ClassKey
    matrix: QMatrix

    @property
    def label(self) -> str:
        return ray_label(self.key)

    def inverse(self) -> 'UnipotentElement':
        return UnipotentElement(self.key, self.matrix.inverse())

    def is_identity(self) -> bool:
        return self.matrix.is_identity()

    def as_json(self) -> dict:
        return {'class': self.label, 'matrix': matrix_pairs(self.matrix)}


@dataclass(frozen=True)
class Word:
    size: int
    legs: tuple[UnipotentElement, ...] = ()

    def __len__(self) -> int:
        return len(self.legs)

    def __add__(self, other: 'Word') -> 'Word':
        if other.size != self.size:
            raise ValueError('Words act on different spaces')
        return Word(self.size, self.legs + other.legs)

    def inverse(self) -> 'Word':
        return Word(self.size, tuple(leg.inverse() for leg in reversed(self.legs)))

    def keys(self) -> list[ClassKey]:
        return [leg.key for leg in self.legs]

    def as_json(self) -> list[dict]:
        return [leg.as_json() for leg in self.legs]


def evaluate_word(word: Word) -> QMatrix:
    product = QMatrix.identity(word.size)
    for leg in word.legs:
        product = product @ leg.matrix
    return product


def is_cycle(word: Word) -> bool:
    return evaluate_word(word).is_identity()


@dataclass
class RootGroups:
    system: RestrictedRootSystem
    _class_spaces: dict[ClassKey, Subspace] = field(init=False, repr=False)

    def __post_init__(self):
        if not self.system.algebra.has_realization or not self.system.algebra.realization:
            raise UnsupportedAmbient('Root groups need a matrix realization')
        self._class_spaces = {cls.key: cls.space for cls in self.system.coarse_classes()}

    @property
    def algebra(self):
        return self.system.algebra

    @property
    def size(self) -> int:
        return self.algebra.realization[0].nrows

    def class_keys(self) -> list[ClassKey]:
        return sorted(self._class_spaces)

    def class_space(self, key: ClassKey) -> Subspace:
        try:
            return self._class_spaces[tuple(key)]
        except KeyError:
            raise NotInSpan(f'No coarse class {ray_label(key)}')

    def members(self, key: ClassKey) -> list[Functional]:
        return [mu for mu in self.system.roots if mu.ray_key == tuple(key)]

    @cached_property
    def _decomposition(self) -> tuple[CoordinateChart, list[tuple[Functional | None, int, int]]]:
        basis, blocks = [], []
        pieces = [(None, self.system.zero_space)] + list(self.system.roots.items())
        for mu, space in pieces:
            blocks.append((mu, len(basis), len(basis) + space.dim))
            basis.extend(space.basis)
        return CoordinateChart(basis, self.algebra.dim), blocks

    def components(self, x: Sequence) -> dict[Functional | None, Vector]:
        """Root-space components of an algebra element; None keys g0."""
        chart, blocks = self._decomposition
        coords = chart.coordinates(x)
        out = {}
        for mu, start, stop in blocks:
            if any(coords[start:stop]):
                out[mu] = combine(coords[start:stop], chart.basis[start:stop], self.algebra.dim)
        return out

    def exp(self, x: Sequence) -> QMatrix:
        return nilpotent_exp(self.algebra.element_to_matrix(x))

    def log(self, matrix: QMatrix) -> Vector:
        return self.algebra.matrix_to_element(unipotent_log(matrix))

    def element(self, key: ClassKey, x: Sequence) -> UnipotentElement:
        """exp(x) for x in the class subspace."""
        x = to_vector(x)
        if not self.class_space(key).contains(x):
            raise NotInSpan(f'Element is not in class {ray_label(key)}')
        return UnipotentElement(tuple(key), self.exp(x))

    def check(self, element: UnipotentElement) -> None:
        if not self.class_space(element.key).contains(self.log(element.matrix)):
            raise NotInSpan(f'log of leg is not in class {element.label}')

    def class_of_matrix(self, matrix: QMatrix) -> ClassKey | None:
        """The unique class whose subspace contains log(matrix), if any."""
        log = self.log(matrix)
        if not any(log):
            return None
        for key, space in self._class_spaces.items():
            if space.contains(log):
                return key
        return None

    def word(self, legs: Iterable[UnipotentElement]) -> Word:
        return Word(self.size, tuple(legs))

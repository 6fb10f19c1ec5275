"""
Z^k actions on the torus R^m / Z^m by commuting integer matrices.

Points are handled on the cover. Orbits are reduced mod 1 while small
displacements are carried separately, so differences along a leaf keep
their precision.
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from core.exceptions import InvalidAction

logger = logging.getLogger(__name__)

Element = tuple[int, ...]


def _as_integer_matrix(matrix) -> np.ndarray:
    array = np.asarray(matrix, dtype=float)
    if array.ndim != 2 or array.shape[0] != array.shape[1]:
        raise InvalidAction('Generators must be square matrices')
    if not np.array_equal(array, np.rint(array)):
        raise InvalidAction('Generators must have integer entries')
    return np.rint(array).astype(np.int64)


@dataclass(frozen=True)
class EigenData:
    """
    Common eigenlines of the generators. Column j of basis spans line j;
    values[i][j] is the eigenvalue of generator i on line j.
    """
    basis: np.ndarray
    values: np.ndarray

    @property
    def moduli(self) -> np.ndarray:
        return np.abs(self.values)

    def coordinates(self, vector) -> np.ndarray:
        return np.linalg.solve(self.basis, np.asarray(vector, dtype=float))


@dataclass
class ToralAbelianAction:
    generators: list[np.ndarray]
    tolerance: float = 1e-9
    _inverses: list[np.ndarray] = field(init=False, repr=False)

    def __post_init__(self):
        if not self.generators:
            raise InvalidAction('At least one generator is required')
        self.generators = [_as_integer_matrix(g) for g in self.generators]
        m = self.dimension
        self._inverses = []
        for i, g in enumerate(self.generators):
            if g.shape != (m, m):
                raise InvalidAction('Generators act on different tori')
            det = round(np.linalg.det(g))
            if abs(det) != 1:
                raise InvalidAction(f'Generator {i + 1} has determinant {det}, expected +-1')
            inverse = np.rint(np.linalg.inv(g)).astype(np.int64)
            if not np.array_equal(g @ inverse, np.eye(m, dtype=np.int64)):
                raise InvalidAction(f'Generator {i + 1} has no integer inverse')
            self._inverses.append(inverse)
        for i, a in enumerate(self.generators):
            for j in range(i + 1, len(self.generators)):
                b = self.generators[j]
                if not np.array_equal(a @ b, b @ a):
                    raise InvalidAction(f'Generators {i + 1} and {j + 1} do not commute')
        moduli = self.eigen.moduli
        if not any(np.all(np.abs(row - 1) > self.tolerance) for row in moduli):
            raise InvalidAction('No generator is hyperbolic')
        for j in range(m):
            if np.all(np.abs(moduli[:, j] - 1) <= self.tolerance):
                raise InvalidAction(f'Eigenline {j} is neither contracted nor expanded')
        logger.info('Toral action: dimension %d, rank %d', m, self.rank)

    @property
    def dimension(self) -> int:
        return self.generators[0].shape[0]

    @property
    def rank(self) -> int:
        return len(self.generators)

    @cached_property
    def eigen(self) -> EigenData:
        """Eigenlines from a generic combination, ordered by the first generator."""
        weights = np.sqrt(np.arange(2, self.rank + 2))
        combined = sum(w * g for w, g in zip(weights, self.generators))
        values, vectors = np.linalg.eig(combined)
        if np.max(np.abs(np.imag(values))) > self.tolerance or \
                np.max(np.abs(np.imag(vectors))) > self.tolerance:
            raise InvalidAction('Generators have non-real eigenvalues')
        vectors = np.real(vectors)
        inverse = np.linalg.inv(vectors)
        rows = []
        for g in self.generators:
            diagonal = inverse @ g @ vectors
            off = diagonal - np.diag(np.diag(diagonal))
            if np.max(np.abs(off)) > self.tolerance * max(1.0, np.max(np.abs(diagonal))):
                raise InvalidAction('Generators are not simultaneously diagonalizable')
            rows.append(np.diag(diagonal))
        values = np.array(rows)
        order = np.argsort(-values[0], kind='stable')
        vectors, values = vectors[:, order], values[:, order]
        for j in range(vectors.shape[1]):
            column = vectors[:, j] / np.linalg.norm(vectors[:, j])
            if column[np.argmax(np.abs(column))] < 0:
                column = -column
            vectors[:, j] = column
        return EigenData(vectors, values)

    def matrix(self, element: Sequence[int]) -> np.ndarray:
        """The integer matrix of a group element given by its exponents."""
        out = np.eye(self.dimension, dtype=np.int64)
        for step in self.steps(element):
            out = self.step_matrix(step) @ out
        return out

    def step_matrix(self, step: tuple[int, int]) -> np.ndarray:
        index, sign = step
        return self.generators[index] if sign > 0 else self._inverses[index]

    def steps(self, element: Sequence[int]) -> list[tuple[int, int]]:
        """
        The element as a product of generators and inverses, rightmost
        first: generator 1 steps are applied before generator 2 steps.
        """
        element = tuple(int(n) for n in element)
        if len(element) != self.rank:
            raise InvalidAction(f'Element {element} does not have {self.rank} exponents')
        out = []
        for index, n in enumerate(element):
            out.extend([(index, 1 if n > 0 else -1)] * abs(n))
        return out

    def act(self, element: Sequence[int], point) -> np.ndarray:
        return self.matrix(element) @ np.asarray(point, dtype=float)

    def eigenvalues(self, element: Sequence[int]) -> np.ndarray:
        """Eigenvalue of the element on each eigenline."""
        values = np.ones(self.dimension)
        for index, n in enumerate(element):
            values = values * self.eigen.values[index] ** n
        return values

    def generating_set(self) -> list[Element]:
        """Generators and their inverses."""
        out = []
        for index in range(self.rank):
            for sign in (1, -1):
                element = [0] * self.rank
                element[index] = sign
                out.append(tuple(element))
        return out

    def contracting_element(self, line: int) -> Element:
        """The element of the generating set contracting the line most."""
        best, best_modulus = None, 1.0
        for element in self.generating_set():
            modulus = abs(self.eigenvalues(element)[line])
            if modulus < best_modulus - self.tolerance:
                best, best_modulus = element, modulus
        if best is None:
            raise InvalidAction(f'No generator contracts eigenline {line}')
        return best

    def rates(self, element: Sequence[int]) -> tuple[float | None, float | None]:
        """
        (lambda_minus, lambda_plus): the weakest contraction and the weakest
        expansion of the element; None when there is no such line.
        """
        moduli = np.abs(self.eigenvalues(element))
        contracted = moduli[moduli < 1 - self.tolerance]
        expanded = moduli[moduli > 1 + self.tolerance]
        lam_minus = float(np.max(contracted)) if contracted.size else None
        lam_plus = float(np.min(expanded)) if expanded.size else None
        return lam_minus, lam_plus

    def smallness_constant(self) -> float:
        """epsilon = min over the generating set of lambda_+^(-1/2) and lambda_-^(1/2)."""
        candidates = []
        for element in self.generating_set():
            lam_minus, lam_plus = self.rates(element)
            if lam_minus is not None:
                candidates.append(lam_minus ** 0.5)
            if lam_plus is not None:
                candidates.append(lam_plus ** -0.5)
        return min(candidates)

    def as_dict(self) -> dict:
        return {
            'dimension': self.dimension,
            'generators': [g.tolist() for g in self.generators],
            'eigenvalues': self.eigen.values.tolist(),
            'smallness_constant': self.smallness_constant(),
        }

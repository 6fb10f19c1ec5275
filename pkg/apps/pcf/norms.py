"""
Slow twists and norms adapted to them.
"""
import logging
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.linalg as scalg

from core.conf import rigidkit_settings
from core.exceptions import NotSlowFamily

logger = logging.getLogger(__name__)


def _spectrum(matrix: np.ndarray) -> np.ndarray:
    triangular, _ = scalg.schur(matrix.astype(complex), output='complex')
    return np.diag(triangular)


def check_slow_family(matrices: Sequence[np.ndarray], tolerance: float | None = None) -> None:
    """Commuting, with every eigenvalue of modulus 1."""
    tolerance = rigidkit_settings.PCF_SLOW_TOLERANCE if tolerance is None else tolerance
    for i, s in enumerate(matrices):
        moduli = np.abs(_spectrum(s))
        if np.max(np.abs(moduli - 1)) > tolerance:
            raise NotSlowFamily(f'Matrix {i + 1} has an eigenvalue of modulus {moduli[np.argmax(np.abs(moduli - 1))]}')
    for i, a in enumerate(matrices):
        for j in range(i + 1, len(matrices)):
            b = matrices[j]
            if not np.allclose(a @ b, b @ a, atol=1e-10):
                raise NotSlowFamily(f'Matrices {i + 1} and {j + 1} do not commute')


@dataclass(frozen=True)
class AdaptedNorm:
    """
    |v| = euclidean norm of basis^-1 v. norms holds the operator norm of
    each matrix of the family in this norm.
    """
    basis: np.ndarray
    scale: float
    norms: tuple[float, ...]

    def __call__(self, vector) -> float:
        return float(np.linalg.norm(np.linalg.solve(self.basis, np.asarray(vector, dtype=complex))))

    def operator_norm(self, matrix) -> float:
        conjugated = np.linalg.solve(self.basis, np.asarray(matrix, dtype=complex) @ self.basis)
        return float(np.linalg.norm(conjugated, 2))

    @property
    def bound(self) -> float:
        return max(self.norms) if self.norms else 1.0


def adapted_norm(matrices: Sequence, epsilon: float, max_halvings: int = 60) -> AdaptedNorm:
    """
    Triangularize the family through the complex Schur form of a generic
    combination, then shrink the strictly upper part with diag(1, t, t^2, ...)
    until every operator norm is at most 1 + epsilon.
    """
    matrices = [np.asarray(s, dtype=float) for s in matrices]
    check_slow_family(matrices)
    n = matrices[0].shape[0]
    weights = np.sqrt(np.arange(2, len(matrices) + 2))
    combined = sum(w * s for w, s in zip(weights, matrices))
    _, unitary = scalg.schur(combined.astype(complex), output='complex')

    scale = 1.0
    for _ in range(max_halvings):
        basis = unitary @ np.diag(scale ** np.arange(n))
        candidate = AdaptedNorm(basis, scale, ())
        norms = tuple(candidate.operator_norm(s) for s in matrices)
        if max(norms) <= 1 + epsilon:
            logger.debug('Adapted norm found with scale %g', scale)
            return AdaptedNorm(basis, scale, norms)
        scale /= 2
    raise NotSlowFamily(f'No scaling brings the family below norm {1 + epsilon}')


@dataclass
class TwistSpec:
    """
    One matrix psi_a per generator acting on the target R^d. Elements of the
    acting group are exponent vectors; psi of an element is the product of
    the generator powers.
    """
    matrices: list[np.ndarray]
    _inverses: list[np.ndarray] = field(init=False, repr=False)

    def __post_init__(self):
        self.matrices = [np.asarray(s, dtype=float) for s in self.matrices]
        check_slow_family(self.matrices)
        self._inverses = [np.linalg.inv(s) for s in self.matrices]

    @classmethod
    def trivial(cls, rank: int, target_dim: int) -> 'TwistSpec':
        return cls([np.eye(target_dim) for _ in range(rank)])

    @property
    def target_dim(self) -> int:
        return self.matrices[0].shape[0]

    @property
    def rank(self) -> int:
        return len(self.matrices)

    def step(self, step: tuple[int, int]) -> np.ndarray:
        index, sign = step
        return self.matrices[index] if sign > 0 else self._inverses[index]

    def of(self, element: Sequence[int]) -> np.ndarray:
        out = np.eye(self.target_dim)
        for index, n in enumerate(element):
            factor = self.matrices[index] if n > 0 else self._inverses[index]
            for _ in range(abs(int(n))):
                out = factor @ out
        return out

    def is_trivial(self) -> bool:
        return all(np.allclose(s, np.eye(self.target_dim)) for s in self.matrices)

    def adapted(self, epsilon: float) -> AdaptedNorm:
        return adapted_norm(self.matrices + self._inverses, epsilon)

    def as_dict(self) -> dict:
        return {'target_dim': self.target_dim, 'matrices': [s.tolist() for s in self.matrices]}


def rotation(angle: float) -> np.ndarray:
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -s], [s, c]])

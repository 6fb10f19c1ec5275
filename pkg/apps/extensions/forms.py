"""
Invariant antisymmetric bilinear forms of a representation.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from apps.linalg.matrices import QMatrix, kernel, matrix_pairs, to_vector
from apps.lie.algebras import Representation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TwoForm:
    """omega(v, w) = v^T J w with J antisymmetric."""
    matrix: QMatrix

    def __post_init__(self):
        if not (self.matrix + self.matrix.transpose()).is_zero():
            raise ValueError('Two-form matrix must be antisymmetric')

    def __call__(self, v: Sequence, w: Sequence) -> Fraction:
        v = to_vector(v)
        image = self.matrix.apply(w)
        return sum((a * b for a, b in zip(v, image)), Fraction(0))

    def is_invariant(self, action: QMatrix) -> bool:
        return (action.transpose() @ self.matrix + self.matrix @ action).is_zero()

    def as_json(self):
        return matrix_pairs(self.matrix)


def _pair_index(n: int) -> dict[tuple[int, int], int]:
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    return {p: k for k, p in enumerate(pairs)}


def _form_from_unknowns(values: Sequence[Fraction], n: int) -> QMatrix:
    index = _pair_index(n)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for (a, b), k in index.items():
        rows[a][b] = values[k]
        rows[b][a] = -values[k]
    return QMatrix.from_rows(rows, n)


def invariant_two_forms(rho: Representation) -> list[TwoForm]:
    """
    Basis of antisymmetric J with D^T J + J D = 0 for every action matrix D.
    """
    n = rho.target_dim
    index = _pair_index(n)

    def coefficient(a, b):
        # J[a][b] in terms of the unknown for the pair {a, b}
        if a == b:
            return None, 0
        return (index[(a, b)], 1) if a < b else (index[(b, a)], -1)

    equations = []
    for d in rho.action_matrices:
        rows = d.to_rows()
        for p in range(n):
            for q in range(p + 1, n):
                eq = [Fraction(0)] * len(index)
                # (D^T J)[p][q] = sum_a D[a][p] J[a][q]
                for a in range(n):
                    k, sign = coefficient(a, q)
                    if k is not None and rows[a][p]:
                        eq[k] += sign * rows[a][p]
                # (J D)[p][q] = sum_b J[p][b] D[b][q]
                for b in range(n):
                    k, sign = coefficient(p, b)
                    if k is not None and rows[b][q]:
                        eq[k] += sign * rows[b][q]
                if any(eq):
                    equations.append(eq)

    system = QMatrix.from_rows(equations, len(index))
    solutions = kernel(system)
    forms = [TwoForm(_form_from_unknowns(v, n)) for v in solutions.basis]
    logger.info('Invariant two-forms on R^%d: dimension %d', n, len(forms))
    return forms


@dataclass(frozen=True)
class SymplecticClassification:
    forms: tuple[TwoForm, ...]

    @property
    def dimension(self) -> int:
        return len(self.forms)

    @property
    def symplectic(self) -> bool:
        return bool(self.forms)

    @property
    def label(self) -> str:
        return 'symplectic' if self.symplectic else 'nonSymplectic'

    def as_dict(self) -> dict:
        return {
            'classification': self.label,
            'dimension': self.dimension,
            'forms': [f.as_json() for f in self.forms],
        }


def classify_symplectic(rho: Representation) -> SymplecticClassification:
    return SymplecticClassification(tuple(invariant_two_forms(rho)))

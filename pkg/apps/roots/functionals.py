"""
Linear functionals on an abelian subalgebra, stored by their values on the
generators.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from apps.linalg.matrices import Vector, dot, to_vector, vector_pairs


def primitive_integer_vector(values: Sequence) -> tuple[int, ...]:
    """
    Positive multiple with coprime integer entries. Signs are kept.
    """
    values = to_vector(values)
    if not any(values):
        return tuple(0 for _ in values)
    scale = lcm(*(v.denominator for v in values))
    ints = [int(v * scale) for v in values]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    return tuple(x // g for x in ints)


@dataclass(frozen=True, order=True)
class Functional:
    coords: Vector

    @classmethod
    def of(cls, values: Sequence) -> 'Functional':
        return cls(to_vector(values))

    @classmethod
    def zero(cls, rank: int) -> 'Functional':
        return cls((Fraction(0),) * rank)

    @property
    def rank(self) -> int:
        return len(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    @property
    def ray_key(self) -> tuple[int, ...]:
        """Identity of the positive ray through the functional."""
        return primitive_integer_vector(self.coords)

    @property
    def line_key(self) -> tuple[int, ...]:
        """Canonical form with the first nonzero entry positive."""
        key = self.ray_key
        first = next((x for x in key if x), 0)
        return tuple(-x for x in key) if first < 0 else key

    def evaluate(self, point: Sequence) -> Fraction:
        return dot(self.coords, to_vector(point))

    def __add__(self, other: 'Functional') -> 'Functional':
        return Functional(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: 'Functional') -> 'Functional':
        return Functional(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> 'Functional':
        return Functional(tuple(-a for a in self.coords))

    def scale(self, c) -> 'Functional':
        c = Fraction(c)
        return Functional(tuple(c * a for a in self.coords))

    def ratio_to(self, other: 'Functional') -> Fraction | None:
        """c with self = c * other, or None."""
        if other.is_zero():
            return None
        k = next(i for i, x in enumerate(other.coords) if x)
        c = self.coords[k] / other.coords[k]
        if all(a == c * b for a, b in zip(self.coords, other.coords)):
            return c
        return None

    def is_proportional(self, other: 'Functional') -> bool:
        if self.is_zero() or other.is_zero():
            return False
        return self.line_key == other.line_key

    def is_positively_proportional(self, other: 'Functional') -> bool:
        return not self.is_zero() and self.ray_key == other.ray_key

    def is_negatively_proportional(self, other: 'Functional') -> bool:
        return not self.is_zero() and self.ray_key == (-other).ray_key

    @property
    def label(self) -> str:
        return '(' + ','.join(str(x) for x in self.coords) + ')'

    def as_json(self) -> list[list[int]]:
        return vector_pairs(self.coords)


def ray_label(key: Sequence[int]) -> str:
    return '(' + ','.join(str(x) for x in key) + ')'

"""
Weyl chambers of a set of functionals, by sign-vector enumeration with
Fourier-Motzkin feasibility.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from apps.linalg.matrices import Vector, vector_pairs
from .functionals import Functional, primitive_integer_vector

logger = logging.getLogger(__name__)

# a . t >= b
Constraint = tuple[Vector, Fraction]


def _normalize(constraint: Constraint) -> Constraint | None:
    a, b = constraint
    scale = max(abs(x) for x in a)
    if scale == 0:
        return None
    return tuple(x / scale for x in a), b / scale


def _prune(constraints: Iterable[Constraint]) -> tuple[list[Constraint], bool]:
    """
    Drop trivial rows and keep the tightest bound per direction. The flag
    is False when a constant row 0 >= b with b > 0 shows infeasibility.
    """
    best: dict[Vector, Fraction] = {}
    for c in constraints:
        normal = _normalize(c)
        if normal is None:
            if c[1] > 0:
                return [], False
            continue
        a, b = normal
        if a not in best or b > best[a]:
            best[a] = b
    return list(best.items()), True


def feasible_point(constraints: Sequence[Constraint], nvars: int) -> Vector | None:
    """
    A rational point with a . t >= b for every constraint, or None.
    """
    stages = []
    current, ok = _prune(constraints)
    if not ok:
        return None
    for var in reversed(range(nvars)):
        stages.append(current)
        lower = [c for c in current if c[0][var] > 0]
        upper = [c for c in current if c[0][var] < 0]
        rest = [c for c in current if c[0][var] == 0]
        combined = list(rest)
        for a1, b1 in lower:
            for a2, b2 in upper:
                p, q = a1[var], -a2[var]
                a = tuple(q * x + p * y for x, y in zip(a1, a2))
                combined.append((a, q * b1 + p * b2))
        current, ok = _prune(combined)
        if not ok:
            return None

    point = [Fraction(0)] * nvars
    for var, stage in zip(range(nvars), reversed(stages)):
        lo = hi = None
        for a, b in stage:
            coeff = a[var]
            if coeff == 0:
                continue
            known = sum((a[k] * point[k] for k in range(var)), Fraction(0))
            bound = (b - known) / coeff
            if coeff > 0:
                lo = bound if lo is None else max(lo, bound)
            else:
                hi = bound if hi is None else min(hi, bound)
        if lo is not None and hi is not None:
            point[var] = (lo + hi) / 2
        elif lo is not None:
            point[var] = lo
        elif hi is not None:
            point[var] = hi
    return tuple(point)


def strictly_positive_point(functionals: Sequence[Functional], signs: Sequence[int], rank: int) -> Vector | None:
    """
    t with sign_i * f_i(t) > 0 for all i, scaled to coprime integers.
    """
    constraints = [
        (tuple(Fraction(s) * x for x in f.coords), Fraction(1)) for f, s in zip(functionals, signs)
    ]
    point = feasible_point(constraints, rank)
    if point is None:
        return None
    return tuple(Fraction(x) for x in primitive_integer_vector(point))


@dataclass(frozen=True)
class Chamber:
    signs: tuple[int, ...]
    witness: Vector

    def as_dict(self) -> dict:
        return {'signs': list(self.signs), 'witness': vector_pairs(self.witness)}


@dataclass(frozen=True)
class ChamberReport:
    hyperplanes: tuple[Functional, ...]
    chambers: tuple[Chamber, ...]

    @property
    def count(self) -> int:
        return len(self.chambers)

    def as_dict(self) -> dict:
        return {
            'count': self.count,
            'hyperplanes': [f.label for f in self.hyperplanes],
            'chambers': [c.as_dict() for c in self.chambers],
        }


def hyperplane_representatives(functionals: Iterable[Functional]) -> list[Functional]:
    """One functional per kernel, in line-key form."""
    keys = sorted({f.line_key for f in functionals if not f.is_zero()})
    return [Functional.of(k) for k in keys]


def weyl_chambers(functionals: Iterable[Functional], rank: int) -> ChamberReport:
    """
    Every realizable sign vector on the nonzero functionals, each with an
    interior integer witness.
    """
    planes = hyperplane_representatives(functionals)
    partial: list[tuple[int, ...]] = [()]
    for k in range(len(planes)):
        grown = []
        for signs in partial:
            for s in (1, -1):
                candidate = signs + (s,)
                if strictly_positive_point(planes[:k + 1], candidate, rank) is not None:
                    grown.append(candidate)
        partial = grown

    chambers = []
    for signs in sorted(partial, reverse=True):
        witness = strictly_positive_point(planes, signs, rank) if planes else (Fraction(0),) * rank
        chambers.append(Chamber(signs, witness))
    logger.info('%d hyperplanes cut rank %d into %d chambers', len(planes), rank, len(chambers))
    return ChamberReport(tuple(planes), tuple(chambers))


def is_regular(point: Sequence, functionals: Iterable[Functional]) -> bool:
    return all(f.evaluate(point) != 0 for f in functionals if not f.is_zero())

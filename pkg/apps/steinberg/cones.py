"""
Cones of functionals and admissible sets.
"""
import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

from core.exceptions import NegativelyProportional, NotAdmissible, NotInSpan
from apps.linalg.matrices import CoordinateChart
from apps.roots.functionals import Functional

logger = logging.getLogger(__name__)


def cone_generated(mu: Functional, nu: Functional, functionals: Iterable[Functional]) -> list[Functional]:
    """
    Functionals t1 mu + t2 nu with t1, t2 > 0.
    """
    if mu.is_zero() or nu.is_zero():
        raise ValueError('Cone generators must be nonzero')
    if mu.is_negatively_proportional(nu):
        raise NegativelyProportional(f'{mu.label} and {nu.label} are negatively proportional')
    candidates = sorted(set(functionals))
    if mu.is_positively_proportional(nu):
        return [chi for chi in candidates if chi.is_positively_proportional(mu)]
    chart = CoordinateChart([mu.coords, nu.coords], mu.rank)
    cone = []
    for chi in candidates:
        try:
            t1, t2 = chart.coordinates(chi.coords)
        except NotInSpan:
            continue
        if t1 > 0 and t2 > 0:
            cone.append(chi)
    return cone


def admissibility_violations(members: Iterable[Functional], functionals: Iterable[Functional]) -> list[str]:
    members = set(members)
    system = set(functionals)
    problems = []
    ordered = sorted(members)
    for i, r in enumerate(ordered):
        for s in ordered[i:]:
            total = r + s
            if total in system and total not in members:
                problems.append(f'{r.label} + {s.label} = {total.label} is missing')
            if r.is_negatively_proportional(s):
                problems.append(f'{r.label} and {s.label} are negatively proportional')
    return problems


def is_admissible(members: Iterable[Functional], functionals: Iterable[Functional]) -> bool:
    """
    Closed under sums that stay in the system, and free of negatively
    proportional pairs.
    """
    return not admissibility_violations(members, functionals)


@dataclass(frozen=True)
class AdmissibleSet:
    members: frozenset[Functional]

    @classmethod
    def check(cls, members: Iterable[Functional], functionals: Sequence[Functional]) -> 'AdmissibleSet':
        members = frozenset(members)
        problems = admissibility_violations(members, functionals)
        if problems:
            raise NotAdmissible(problems[0])
        return cls(members)

    @property
    def keys(self) -> list[tuple[int, ...]]:
        return sorted({mu.ray_key for mu in self.members})

    def __contains__(self, mu: Functional) -> bool:
        return mu in self.members

    def __len__(self) -> int:
        return len(self.members)

"""
Restricted root and weight systems of an abelian subalgebra.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction

from apps.linalg.matrices import QMatrix, Subspace
from apps.linalg.spectra import joint_generalized_eigenspaces
from apps.lie.algebras import AbelianSubalgebra, LieAlgebra, Representation
from .functionals import Functional, ray_label

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CoarseClass:
    """Sum of the spaces of all positive multiples of a functional."""
    key: tuple[int, ...]
    members: tuple[Functional, ...]
    space: Subspace

    @property
    def label(self) -> str:
        return ray_label(self.key)

    @property
    def dim(self) -> int:
        return self.space.dim


@dataclass
class RestrictedRootSystem:
    algebra: LieAlgebra
    subalgebra: AbelianSubalgebra
    zero_space: Subspace
    roots: dict[Functional, Subspace]
    weights: dict[Functional, Subspace] | None = None
    representation: Representation | None = field(default=None, repr=False)

    @property
    def rank(self) -> int:
        return self.subalgebra.rank

    def functionals(self) -> list[Functional]:
        return sorted(self.roots)

    def root_space(self, mu: Functional) -> Subspace:
        if mu.is_zero():
            return self.zero_space
        return self.roots.get(mu, Subspace.zero(self.algebra.dim))

    def is_root(self, mu: Functional) -> bool:
        return mu in self.roots

    def coarse_classes(self) -> list[CoarseClass]:
        return coarse_classes(self)

    def class_of(self, mu: Functional) -> CoarseClass:
        for cls in self.coarse_classes():
            if cls.key == mu.ray_key:
                return cls
        raise KeyError(mu.label)

    def grading_violations(self) -> list[tuple[Functional, Functional]]:
        """
        Pairs (mu, nu) with [g_mu, g_nu] not inside g_{mu+nu}.
        """
        bad = []
        spaces = dict(self.roots)
        spaces[Functional.zero(self.rank)] = self.zero_space
        for mu, u in spaces.items():
            for nu, v in spaces.items():
                target = spaces.get(mu + nu, Subspace.zero(self.algebra.dim))
                for x in u.basis:
                    if any(not target.contains(self.algebra.bracket(x, y)) for y in v.basis):
                        bad.append((mu, nu))
                        break
        return bad


def _decompose(matrices: list[QMatrix], dim: int) -> dict[Functional, Subspace]:
    pieces = joint_generalized_eigenspaces(matrices, dim)
    return {Functional(values): space for values, space in pieces}


def restricted_roots(algebra: LieAlgebra, subalgebra: AbelianSubalgebra) -> RestrictedRootSystem:
    """
    Joint eigenspace decomposition of ad of the split parts of the generators.
    """
    split = subalgebra.split_generators()
    spaces = _decompose([algebra.ad(s) for s in split], algebra.dim)
    zero = Functional.zero(subalgebra.rank)
    zero_space = spaces.pop(zero, Subspace.zero(algebra.dim))
    logger.info(
        'Restricted roots of rank %d subalgebra in dim %d: %d roots, dim g0 = %d',
        subalgebra.rank, algebra.dim, len(spaces), zero_space.dim,
    )
    return RestrictedRootSystem(algebra, subalgebra, zero_space, dict(sorted(spaces.items())))


def restricted_weights(rho: Representation, subalgebra: AbelianSubalgebra) -> dict[Functional, Subspace]:
    """
    Weight spaces of d rho on the split parts; the zero weight is kept.
    """
    split = subalgebra.split_generators()
    spaces = _decompose([rho.act(s) for s in split], rho.target_dim)
    logger.info('Restricted weights on R^%d: %d weights', rho.target_dim, len(spaces))
    return dict(sorted(spaces.items()))


def with_weights(system: RestrictedRootSystem, rho: Representation) -> RestrictedRootSystem:
    system.weights = restricted_weights(rho, system.subalgebra)
    system.representation = rho
    return system


def _group(spaces: dict[Functional, Subspace], ambient_dim: int) -> list[CoarseClass]:
    buckets: dict[tuple[int, ...], list[Functional]] = {}
    for mu in spaces:
        if not mu.is_zero():
            buckets.setdefault(mu.ray_key, []).append(mu)
    classes = []
    for key in sorted(buckets):
        members = sorted(buckets[key], key=lambda m: abs(next(x for x in m.coords if x)))
        space = Subspace.zero(ambient_dim)
        for mu in members:
            space = space + spaces[mu]
        classes.append(CoarseClass(key, tuple(members), space))
    return classes


def coarse_classes(system: RestrictedRootSystem) -> list[CoarseClass]:
    return _group(system.roots, system.algebra.dim)


def weight_classes(system: RestrictedRootSystem) -> list[CoarseClass]:
    if not system.weights:
        return []
    return _group(system.weights, system.representation.target_dim)


def combined_classes(system: RestrictedRootSystem) -> list[CoarseClass]:
    """
    Coarse classes of g semidirect R^N: root spaces in the g-coordinates,
    weight spaces in the R^N coordinates, merged by ray.
    """
    n = system.algebra.dim
    big_n = system.representation.target_dim if system.weights else 0
    total = n + big_n
    spaces: dict[Functional, Subspace] = {}
    for mu, space in system.roots.items():
        spaces[mu] = Subspace.span([b + (Fraction(0),) * big_n for b in space.basis], total)
    for phi, space in (system.weights or {}).items():
        lifted = Subspace.span([(Fraction(0),) * n + b for b in space.basis], total)
        spaces[phi] = spaces[phi] + lifted if phi in spaces else lifted
    return _group(spaces, total)

"""
Rigidity diagnostics for an abelian subalgebra and optional representation.
"""
import logging
from dataclasses import dataclass, field
from typing import Sequence

from core.exceptions import NotAnIdeal
from apps.extensions.forms import classify_symplectic
from apps.linalg.matrices import Subspace
from apps.linalg.spectra import is_semisimple, restrict_to_subspace
from apps.lie.algebras import AbelianSubalgebra, LieAlgebra, Representation, is_ideal
from .functionals import Functional
from .systems import RestrictedRootSystem, restricted_roots, weight_classes, with_weights
from .weyl import DetectionReport

logger = logging.getLogger(__name__)

HIGHER_RANK_CRITERION = 'two non-proportional restricted roots in every declared simple ideal (proxy)'


@dataclass
class RigidityReport:
    genuinely_higher_rank: bool
    all_roots_detected: bool | None
    zero_weight_present: bool
    symplectic_contribution: bool
    symplectic_dimension: int
    semisimple_on_each_class: dict[str, bool]
    neutral_dimension: int
    ideal_rank_witnesses: list[list[str]] = field(default_factory=list)

    @property
    def action_type(self) -> str:
        return 'II' if self.symplectic_contribution and self.zero_weight_present else 'I'

    @property
    def semisimple_everywhere(self) -> bool:
        return all(self.semisimple_on_each_class.values())

    def as_dict(self) -> dict:
        return {
            'genuinely_higher_rank': self.genuinely_higher_rank,
            'genuinely_higher_rank_criterion': HIGHER_RANK_CRITERION,
            'ideal_rank_witnesses': self.ideal_rank_witnesses,
            'all_roots_detected': self.all_roots_detected,
            'zero_weight_present': self.zero_weight_present,
            'symplectic_contribution': {
                'present': self.symplectic_contribution,
                'dimension': self.symplectic_dimension,
            },
            'action_type': self.action_type,
            'semisimple_on_each_class': dict(sorted(self.semisimple_on_each_class.items())),
            'semisimple_everywhere': self.semisimple_everywhere,
            'neutral_dimension': self.neutral_dimension,
            'no_compact_factors': 'user-asserted',
        }


def _non_proportional_pair(functionals: Sequence[Functional]) -> list[Functional] | None:
    nonzero = [f for f in functionals if not f.is_zero()]
    for i, f in enumerate(nonzero):
        for g in nonzero[i + 1:]:
            if not f.is_proportional(g):
                return [f, g]
    return None


def class_semisimplicity(system: RestrictedRootSystem) -> dict[str, bool]:
    """
    Per coarse class: is ad of every generator semisimple on the class?
    Weight classes are prefixed with 'weight'.
    """
    flags = {}
    ads = [system.algebra.ad(g) for g in system.subalgebra.generators]
    for cls in system.coarse_classes():
        flags[cls.label] = all(is_semisimple(restrict_to_subspace(m, cls.space)) for m in ads)
    if system.weights:
        actions = [system.representation.act(g) for g in system.subalgebra.generators]
        for cls in weight_classes(system):
            flags[f'weight{cls.label}'] = all(
                is_semisimple(restrict_to_subspace(m, cls.space)) for m in actions
            )
    return flags


def rigidity_report(
    algebra: LieAlgebra,
    subalgebra: AbelianSubalgebra,
    rho: Representation | None = None,
    ideals: Sequence[Subspace] | None = None,
    detection_report: DetectionReport | None = None,
    system: RestrictedRootSystem | None = None,
) -> RigidityReport:
    if system is None:
        system = restricted_roots(algebra, subalgebra)
    if rho is not None and system.weights is None:
        with_weights(system, rho)

    ideals = list(ideals) if ideals else [Subspace.full(algebra.dim)]
    higher_rank = True
    witnesses = []
    for index, ideal in enumerate(ideals):
        if not is_ideal(algebra, ideal):
            raise NotAnIdeal(f'Declared ideal {index + 1} is not an ideal')
        present = [mu for mu, space in system.roots.items() if space.intersect(ideal).dim]
        pair = _non_proportional_pair(present)
        if pair is None:
            higher_rank = False
            witnesses.append([])
        else:
            witnesses.append([f.label for f in pair])

    zero_weight = False
    symplectic, symplectic_dim = False, 0
    if rho is not None:
        zero_weight = any(phi.is_zero() for phi in system.weights)
        classification = classify_symplectic(rho)
        symplectic, symplectic_dim = classification.symplectic, classification.dimension

    report = RigidityReport(
        genuinely_higher_rank=higher_rank,
        all_roots_detected=detection_report.all_detected if detection_report else None,
        zero_weight_present=zero_weight,
        symplectic_contribution=symplectic,
        symplectic_dimension=symplectic_dim,
        semisimple_on_each_class=class_semisimplicity(system),
        neutral_dimension=system.zero_space.dim,
        ideal_rank_witnesses=witnesses,
    )
    logger.info(
        'Rigidity: higher rank %s, type %s, semisimple everywhere %s',
        report.genuinely_higher_rank, report.action_type, report.semisimple_everywhere,
    )
    return report

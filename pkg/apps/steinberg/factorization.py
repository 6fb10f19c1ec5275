"""
Ordered factorization of unipotent elements over admissible sets, the
commutator relations between class subgroups, and normal forms of words.
"""
import logging
from fractions import Fraction
from typing import Iterable, Sequence

from core.exceptions import NotInSpan, NotSupported, OrderIncompatible
from apps.linalg.matrices import QMatrix, Subspace, Vector
from apps.roots.chambers import strictly_positive_point
from apps.roots.functionals import Functional, ray_label
from .cones import AdmissibleSet, cone_generated
from .words import ClassKey, RootGroups, UnipotentElement, Word, evaluate_word

logger = logging.getLogger(__name__)


def height_witness(keys: Sequence[ClassKey]) -> Vector:
    """A point where every class functional is positive."""
    rank = len(keys[0])
    functionals = [Functional.of(k) for k in keys]
    witness = strictly_positive_point(functionals, [1] * len(functionals), rank)
    if witness is None:
        raise OrderIncompatible('No height function is positive on every class')
    return witness


def default_order(keys: Iterable[ClassKey]) -> list[ClassKey]:
    """Increasing height at a deterministic witness, ties by ray key."""
    keys = sorted(set(keys))
    if not keys:
        return []
    witness = height_witness(keys)
    return sorted(keys, key=lambda k: (Functional.of(k).evaluate(witness), k))


def _resolve_order(keys: Sequence[ClassKey], order: Sequence[ClassKey] | None) -> list[ClassKey]:
    if order is None:
        return default_order(keys)
    order = [tuple(k) for k in order]
    if len(set(order)) != len(order) or set(order) != set(keys):
        raise OrderIncompatible(
            f'Order {[ray_label(k) for k in order]} does not list the classes {[ray_label(k) for k in keys]}'
        )
    return order


def factor_over_classes(groups: RootGroups, u: QMatrix, keys: Sequence[ClassKey],
                        order: Sequence[ClassKey] | None = None) -> Word:
    """
    u = prod exp(X_c) over the classes in order, X_c in the class subspace.

    Components of the X_c are fixed one height level at a time: at level h,
    log(u) - log(partial product of the lower levels) agrees with the sum of
    the level-h components.
    """
    keys = sorted({tuple(k) for k in keys})
    order = _resolve_order(keys, order)
    if not keys:
        if not u.is_identity():
            raise NotInSpan('Only the identity factors over the empty set')
        return groups.word([])

    target = groups.log(u)
    support = Subspace.zero(groups.algebra.dim)
    for key in keys:
        support = support + groups.class_space(key)
    if not support.contains(target):
        raise NotInSpan('log(u) is not in the span of the given classes')

    witness = height_witness(keys)
    members = [mu for key in keys for mu in groups.members(key)]
    levels = sorted({mu.evaluate(witness) for mu in members})
    zero = (Fraction(0),) * groups.algebra.dim
    parts: dict[ClassKey, Vector] = {key: zero for key in keys}

    def partial_product() -> QMatrix:
        product = QMatrix.identity(groups.size)
        for key in order:
            if any(parts[key]):
                product = product @ groups.exp(parts[key])
        return product

    for level in levels:
        residual = tuple(a - b for a, b in zip(target, groups.log(partial_product())))
        components = groups.components(residual)
        for mu in members:
            if mu.evaluate(witness) != level or mu not in components:
                continue
            key = mu.ray_key
            parts[key] = tuple(a + b for a, b in zip(parts[key], components[mu]))
        logger.debug('Factorization level %s fixed', level)

    legs = [UnipotentElement(key, groups.exp(parts[key])) for key in order if any(parts[key])]
    word = groups.word(legs)
    if evaluate_word(word) != u:
        raise OrderIncompatible('Factorization did not reproduce the element')
    return word


def factor_unipotent(groups: RootGroups, u: QMatrix, admissible: AdmissibleSet,
                     order: Sequence[ClassKey] | None = None) -> Word:
    return factor_over_classes(groups, u, admissible.keys, order)


def commutator(x: UnipotentElement, y: UnipotentElement) -> QMatrix:
    return x.matrix @ y.matrix @ x.matrix.inverse() @ y.matrix.inverse()


def commutator_relation(groups: RootGroups, x: UnipotentElement, y: UnipotentElement,
                        order: Sequence[ClassKey] | None = None) -> Word:
    """
    The word R(x, y) over the cone of the two classes evaluating to
    x y x^-1 y^-1.
    """
    mu, nu = Functional.of(x.key), Functional.of(y.key)
    cone = cone_generated(mu, nu, groups.system.roots)
    keys = sorted({chi.ray_key for chi in cone})
    word = factor_over_classes(groups, commutator(x, y), keys, order)
    logger.debug('Commutator of %s and %s has %d legs', x.label, y.label, len(word))
    return word


def relation_cycle(groups: RootGroups, x: UnipotentElement, y: UnipotentElement) -> Word:
    """[x, y] R(x, y)^-1 as a word; it evaluates to the identity."""
    bracket = groups.word([x, y, x.inverse(), y.inverse()])
    return bracket + commutator_relation(groups, x, y).inverse()


def collect_normal_form(groups: RootGroups, word: Word, admissible: AdmissibleSet,
                        order: Sequence[ClassKey] | None = None) -> Word:
    """
    The unique ordered factorization of the evaluation of a word whose legs
    all lie in the admissible set.
    """
    allowed = set(admissible.keys)
    for leg in word.legs:
        if leg.key not in allowed:
            raise NotSupported(f'Leg in class {leg.label} is outside the admissible set')
        groups.check(leg)
    return factor_unipotent(groups, evaluate_word(word), admissible, order)

"""
Weyl elements exp(X) exp(-Y) exp(X) built from rational sl2-triples, and
matrix-level checks of how they conjugate root subgroups.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from core.conf import rigidkit_settings
from core.exceptions import NoRationalTriple, NotInSpan, NoWitness, UnsupportedAmbient
from apps.linalg.matrices import CoordinateChart, QMatrix, Vector, to_vector
from apps.roots.functionals import Functional
from apps.roots.systems import RestrictedRootSystem
from apps.roots.weyl import (
    CartanRoot,
    ConjugatorWitness,
    cartan_roots,
    detection,
    diagonal_cartan_system,
    find_detecting_conjugators,
    find_independent_conjugators,
    reflect_functional,
    reflect_root,
)
from apps.lie.algebras import killing_form
from .words import RootGroups, nilpotent_exp

logger = logging.getLogger(__name__)


def solve_sl2_triple(algebra, x: Vector, negative_basis) -> tuple[Vector, Vector]:
    """
    (h, y) with y in the span of negative_basis, h = [x, y], [h, x] = 2x and
    [h, y] = -2y. The free parameters of the linear part are set to zero.
    """
    x = to_vector(x)
    if not negative_basis or not any(x):
        raise NoRationalTriple('No opposite root space')
    columns = [algebra.bracket(algebra.bracket(x, b), x) for b in negative_basis]
    columns.append(tuple(-2 * c for c in x))
    system = QMatrix.from_columns(columns, algebra.dim)
    reduced, pivots = system.rref()
    last = len(columns) - 1
    if last in pivots:
        raise NoRationalTriple('[[x, y], x] = 2x has no solution')
    coeffs = [Fraction(0)] * last
    for i, p in enumerate(pivots):
        coeffs[p] = -reduced.entry(i, last)
    y = tuple(sum((c * b[k] for c, b in zip(coeffs, negative_basis)), Fraction(0)) for k in range(algebra.dim))
    h = algebra.bracket(x, y)
    if algebra.bracket(h, y) != tuple(-2 * c for c in y):
        raise NoRationalTriple('[h, y] = -2y fails for the canonical solution')
    return h, y


@dataclass(frozen=True)
class WeylElement:
    root: Functional
    x: Vector
    y: Vector
    h: Vector
    matrix: QMatrix
    functional_map: QMatrix | None = field(default=None)

    @property
    def normalizes(self) -> bool:
        return self.functional_map is not None

    def apply(self, mu: Functional) -> Functional:
        if self.functional_map is None:
            raise NotInSpan('Weyl element does not normalize the split subalgebra')
        return Functional(self.functional_map.apply(mu.coords))

    def conjugate(self, matrix: QMatrix) -> QMatrix:
        return matrix.conjugate(self.matrix)


def _root_of(system: RestrictedRootSystem, x: Vector) -> Functional:
    groups = RootGroups(system)
    parts = groups.components(x)
    if len(parts) != 1 or None in parts:
        raise NoRationalTriple('Element does not lie in a single root space')
    return next(iter(parts))


def weyl_element_from_root(system: RestrictedRootSystem, x) -> WeylElement:
    """
    w = exp(x) exp(-y) exp(x) for x in a root space. When w normalizes the
    split subalgebra, functional_map sends the coordinates of a functional to
    those of its image under w.
    """
    algebra = system.algebra
    x = to_vector(x)
    mu = _root_of(system, x)
    h, y = solve_sl2_triple(algebra, x, system.root_space(-mu).basis)
    X, Y = algebra.element_to_matrix(x), algebra.element_to_matrix(y)
    w = nilpotent_exp(X) @ nilpotent_exp(-Y) @ nilpotent_exp(X)

    split = system.subalgebra.split_generators()
    chart = CoordinateChart(split, algebra.dim)
    w_inv = w.inverse()
    columns = []
    try:
        for s in split:
            image = algebra.matrix_to_element(w_inv @ algebra.element_to_matrix(s) @ w)
            columns.append(chart.coordinates(image))
        functional_map = QMatrix.from_columns(columns, len(split)).transpose()
    except NotInSpan:
        functional_map = None
    logger.debug('Weyl element for %s normalizes: %s', mu.label, functional_map is not None)
    return WeylElement(mu, x, y, h, w, functional_map)


def reflection_mismatches(system: RestrictedRootSystem, element: WeylElement) -> list[str]:
    """
    Roots whose image under the Weyl element differs from the Killing-form
    reflection through its root.
    """
    gram = killing_form(system.algebra, system.subalgebra.split_generators())
    bad = []
    for lam in system.roots:
        if element.apply(lam) != reflect_functional(element.root, lam, gram):
            bad.append(lam.label)
    return bad


@dataclass
class ConjugationReport:
    membership_checks: int = 0
    membership_failures: list[str] = field(default_factory=list)
    route_checks: int = 0
    route_failures: list[str] = field(default_factory=list)
    routes: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.membership_failures and not self.route_failures

    def as_dict(self) -> dict:
        return {
            'passed': self.passed,
            'membership_checks': self.membership_checks,
            'membership_failures': self.membership_failures,
            'route_checks': self.route_checks,
            'route_failures': self.route_failures,
            'routes': self.routes,
        }


def _sample_scalars(rng, count: int) -> list[Fraction]:
    out = []
    for _ in range(count):
        num = int(rng.integers(1, 10)) * (1 if rng.integers(0, 2) else -1)
        out.append(Fraction(num, int(rng.integers(1, 6))))
    return out


def conjugation_sign(conjugator: CartanRoot, root: CartanRoot) -> int:
    """
    The sign e with w^-1 E_s w = e E_r, where w is the Weyl element of the
    conjugator and s its reflection of r. w sends e_i to -e_j and e_j to e_i
    for the conjugator E_ij.
    """
    if conjugator.indices is None or root.indices is None:
        raise UnsupportedAmbient('Signs are only tracked for sl(n) roots')
    flipped = conjugator.indices[0]
    return (-1 if root.indices[0] == flipped else 1) * (-1 if root.indices[1] == flipped else 1)


def route_element(groups: RootGroups, w: WeylElement, witness: ConjugatorWitness, t) -> QMatrix:
    """w^-1 exp(t E_s) w for s the image root of the witness."""
    u = groups.exp(tuple(t * c for c in witness.image.space.basis[0]))
    return u.conjugate(w.matrix.inverse())


def verify_conjugation_lemmas(system: RestrictedRootSystem, samples: int | None = None,
                              seed: int | None = None) -> ConjugationReport:
    """
    For sl(n) with split generators in the diagonal Cartan:

    * w_{r1} v w_{r1}^-1 lies in the class of w_{r1}(r2) restricted to the
      subalgebra, for every v in the root group of r2;
    * every undetected root r has two detecting conjugators with
      non-proportional restrictions, and for each pair of detecting
      conjugators the elements w_i^-1 exp(t_i E_{s_i}) w_i, started in the
      detected root groups with parameters fixed by conjugation_sign, are
      the same element exp(t E_r) of the root group of r.
    """
    samples = rigidkit_settings.SAMPLE_COUNT if samples is None else samples
    seed = rigidkit_settings.SAMPLE_SEED if seed is None else seed
    rng = np.random.default_rng(seed)
    algebra = system.algebra
    cartan = diagonal_cartan_system(algebra)
    report_detection = detection(cartan, system.subalgebra)
    groups = RootGroups(system)
    roots = {r.indices: r for r in cartan_roots(cartan)}
    weyl = {}

    def weyl_of(root: CartanRoot) -> WeylElement:
        if root.indices not in weyl:
            weyl[root.indices] = weyl_element_from_root(cartan, root.space.basis[0])
        return weyl[root.indices]

    def predicted_space(root: CartanRoot):
        restriction = report_detection.entry(root.label).restriction
        if restriction.is_zero():
            return system.zero_space
        return groups.class_space(restriction.ray_key)

    report = ConjugationReport()
    detected = report_detection.detected()
    for r1 in detected:
        w = weyl_of(r1)
        for r2 in detected:
            if r2.indices in (r1.indices, r1.indices[::-1]):
                continue
            target = predicted_space(roots[reflect_root(r1, r2)])
            basis = r2.space.basis[0]
            for t in _sample_scalars(rng, samples):
                v = groups.exp(tuple(t * c for c in basis))
                report.membership_checks += 1
                if not target.contains(groups.log(w.conjugate(v))):
                    report.membership_failures.append(f'{r1.label} on {r2.label} with t={t}')
                    break

    for root in report_detection.undetected():
        try:
            witnesses = find_detecting_conjugators(root, report_detection)
            find_independent_conjugators(root, report_detection)
        except NoWitness as exc:
            report.route_failures.append(f'{root.label}: {exc.detail}')
            continue
        target = cartan.root_space(root.functional)
        basis = root.space.basis[0]
        for first, second in combinations(witnesses, 2):
            w1, w2 = weyl_of(first.conjugator), weyl_of(second.conjugator)
            sign1 = conjugation_sign(first.conjugator, root)
            sign2 = conjugation_sign(second.conjugator, root)
            start_space = predicted_space(second.image)
            for t in _sample_scalars(rng, samples):
                report.route_checks += 1
                reached = route_element(groups, w1, first, t)
                start = tuple(t * sign1 * sign2 * c for c in second.image.space.basis[0])
                other = route_element(groups, w2, second, t * sign1 * sign2)
                agree = (
                    target.contains(groups.log(reached))
                    and start_space.contains(start)
                    and reached == other
                    and reached == groups.exp(tuple(t * sign1 * c for c in basis))
                )
                if not agree:
                    report.route_failures.append(
                        f'{root.label} via {first.conjugator.label} and {second.conjugator.label}'
                    )
                    break
            report.routes.append({
                'root': root.label,
                'first': first.as_dict(),
                'second': second.as_dict(),
                'independent': not report_detection.entry(first.conjugator.label).restriction.is_proportional(
                    report_detection.entry(second.conjugator.label).restriction
                ),
            })
    logger.info(
        'Conjugation checks: %d memberships, %d routes, passed %s',
        report.membership_checks, report.route_checks, report.passed,
    )
    return report

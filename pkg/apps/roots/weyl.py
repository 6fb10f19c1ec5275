"""
Cartan roots, detection by an abelian subalgebra, reflections and the
permutation model of the Weyl group of sl(n).
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Sequence

from core.conf import rigidkit_settings
from core.exceptions import NoWitness, NotARoot, NotInCartan, NotInSpan, UnsupportedAmbient
from apps.linalg.matrices import CoordinateChart, QMatrix, Subspace, Vector, dot, to_vector
from apps.lie.algebras import AbelianSubalgebra, LieAlgebra
from .functionals import Functional
from .systems import RestrictedRootSystem, restricted_roots

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CartanRoot:
    """
    A root of the ambient Cartan system. For sl(n) with the diagonal Cartan,
    indices (i, j) identify the root e_i - e_j.
    """
    functional: Functional
    space: Subspace
    indices: tuple[int, int] | None = None

    @property
    def label(self) -> str:
        if self.indices is None:
            return self.functional.label
        i, j = self.indices
        return f'e{i + 1}-e{j + 1}'

    def ambient_vector(self, n: int) -> Vector:
        i, j = self.indices
        return tuple(Fraction(int(k == i) - int(k == j)) for k in range(n))


def _root_indices(algebra: LieAlgebra, space: Subspace) -> tuple[int, int] | None:
    if space.dim != 1:
        return None
    nonzero = [k for k, x in enumerate(space.basis[0]) if x]
    if len(nonzero) != 1:
        return None
    label = algebra.labels[nonzero[0]]
    if len(label) == 3 and label[0] == 'E' and label[1:].isdigit():
        return int(label[1]) - 1, int(label[2]) - 1
    return None


def cartan_roots(system: RestrictedRootSystem) -> list[CartanRoot]:
    roots = [
        CartanRoot(mu, space, _root_indices(system.algebra, space))
        for mu, space in system.roots.items()
    ]
    return sorted(roots, key=_root_order)


def _root_order(root: CartanRoot):
    if root.indices is None:
        return (1, 0, 0, 0, root.functional.coords)
    i, j = root.indices
    return (0, abs(j - i), int(i > j), i, j)


@dataclass(frozen=True)
class DetectionEntry:
    root: CartanRoot
    restriction: Functional

    @property
    def detected(self) -> bool:
        return not self.restriction.is_zero()

    def as_dict(self) -> dict:
        return {
            'root': self.root.label,
            'restriction': self.restriction.as_json(),
            'detected': self.detected,
        }


@dataclass(frozen=True)
class DetectionReport:
    entries: tuple[DetectionEntry, ...]
    ambient_rank: int | None = None

    def detected(self) -> list[CartanRoot]:
        return [e.root for e in self.entries if e.detected]

    def undetected(self) -> list[CartanRoot]:
        return [e.root for e in self.entries if not e.detected]

    @property
    def all_detected(self) -> bool:
        return all(e.detected for e in self.entries)

    def entry(self, label: str) -> DetectionEntry:
        return next(e for e in self.entries if e.root.label == label)

    def as_dict(self) -> dict:
        return {
            'all_detected': self.all_detected,
            'roots': [e.as_dict() for e in self.entries],
        }


def detection(cartan_system: RestrictedRootSystem, subalgebra: AbelianSubalgebra) -> DetectionReport:
    """
    Restrict every Cartan root to the subalgebra through the split parts of
    its generators, written in the Cartan generators.
    """
    algebra = cartan_system.algebra
    chart = CoordinateChart(cartan_system.subalgebra.generators, algebra.dim)
    rows = []
    for s in subalgebra.split_generators():
        try:
            rows.append(chart.coordinates(s))
        except NotInSpan:
            raise NotInCartan('A split generator is not in the Cartan subalgebra')
    entries = []
    for root in cartan_roots(cartan_system):
        values = [dot(row, root.functional.coords) for row in rows]
        entries.append(DetectionEntry(root, Functional(tuple(values))))
    report = DetectionReport(tuple(entries), _sl_rank(algebra))
    logger.info('Detection: %d of %d Cartan roots detected', len(report.detected()), len(entries))
    return report


def _sl_rank(algebra: LieAlgebra) -> int | None:
    if algebra.has_realization and algebra.realization:
        n = algebra.realization[0].nrows
        if algebra.dim == n * n - 1:
            return n
    return None


def diagonal_cartan_system(algebra: LieAlgebra) -> RestrictedRootSystem:
    """Root system of sl(n) with respect to its diagonal Cartan subalgebra."""
    n = _sl_rank(algebra)
    if n is None:
        raise UnsupportedAmbient('Diagonal Cartan is only defined for sl(n)')
    diagonal = []
    for k in range(n - 1):
        values = [0] * n
        values[k], values[k + 1] = 1, -1
        diagonal.append(QMatrix.diag(values))
    return restricted_roots(algebra, AbelianSubalgebra.from_matrices(algebra, diagonal))


def weyl_reflection(s: Sequence, r: Sequence, roots: Sequence[Sequence] | None = None,
                    gram: QMatrix | None = None) -> Vector:
    """
    w_s(r) = r - 2<s,r>/<s,s> s, with the standard inner product unless a
    Gram matrix is given. When roots are supplied s must be one of them.
    """
    s = to_vector(s)
    r = to_vector(r)
    if roots is not None and s not in {to_vector(x) for x in roots}:
        raise NotARoot(f'{[str(x) for x in s]} is not a root')
    if gram is None:
        inner = dot
    else:
        def inner(u, v):
            return dot(u, gram.apply(v))
    norm = inner(s, s)
    if norm == 0:
        raise NotARoot('Reflection through an isotropic vector')
    c = 2 * inner(s, r) / norm
    return tuple(a - c * b for a, b in zip(r, s))


def reflect_root(s: CartanRoot, r: CartanRoot) -> tuple[int, int]:
    """Indices of w_s(r) in the permutation model."""
    if s.indices is None or r.indices is None:
        raise UnsupportedAmbient('Permutation model needs sl(n) roots')
    a, b = s.indices
    swap = {a: b, b: a}
    i, j = r.indices
    return swap.get(i, i), swap.get(j, j)


def reflect_functional(mu: Functional, lam: Functional, gram: QMatrix) -> Functional:
    """
    Reflection of lam through mu, for functionals on a split subalgebra
    whose Killing Gram matrix (on the generators) is given.
    """
    dual = gram.inverse()
    return Functional(weyl_reflection(mu.coords, lam.coords, gram=dual))


def _cycle_notation(perm: Sequence[int]) -> str:
    seen = set()
    cycles = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cycle = [start]
        seen.add(start)
        k = perm[start]
        while k != start:
            cycle.append(k)
            seen.add(k)
            k = perm[k]
        cycles.append('(' + ''.join(str(c + 1) for c in cycle) + ')')
    return ''.join(cycles) or 'id'


@dataclass(frozen=True)
class NormalizerQuotient:
    representatives: tuple[tuple[int, ...], ...]
    normalizer_order: int
    centralizer_order: int

    @property
    def labels(self) -> list[str]:
        return [_cycle_notation(p) for p in self.representatives]

    def as_dict(self) -> dict:
        return {
            'elements': self.labels,
            'normalizer_order': self.normalizer_order,
            'centralizer_order': self.centralizer_order,
        }


def _diagonal_split_vectors(subalgebra: AbelianSubalgebra) -> list[Vector]:
    vectors = []
    for s in subalgebra.split_generators():
        m = subalgebra.parent.element_to_matrix(s)
        if any(m.entry(i, j) for i in range(m.nrows) for j in range(m.ncols) if i != j):
            raise NotInCartan('Split generator is not diagonal')
        vectors.append(tuple(m.entry(i, i) for i in range(m.nrows)))
    return vectors


def normalizer_quotient(subalgebra: AbelianSubalgebra) -> NormalizerQuotient:
    """
    Permutations of the diagonal preserving the split span, modulo those
    fixing it pointwise.
    """
    n = _sl_rank(subalgebra.parent)
    if n is None or n > rigidkit_settings.WEYL_MAX_RANK:
        raise UnsupportedAmbient(f'Weyl group enumeration needs sl(n) with n <= {rigidkit_settings.WEYL_MAX_RANK}')
    vectors = _diagonal_split_vectors(subalgebra)
    span = Subspace.span(vectors, n)

    def act(perm, v):
        out = [Fraction(0)] * n
        for k in range(n):
            out[perm[k]] = v[k]
        return tuple(out)

    normalizer = [p for p in permutations(range(n)) if all(span.contains(act(p, v)) for v in vectors)]
    trivial = {p for p in normalizer if all(act(p, v) == v for v in vectors)}

    def moved(p):
        return sum(1 for k in range(n) if p[k] != k)

    representatives = {}
    for p in sorted(normalizer, key=lambda p: (moved(p), p)):
        # key of the coset pC: its action on the split vectors
        key = tuple(act(p, v) for v in vectors)
        representatives.setdefault(key, p)
    reps = sorted(representatives.values(), key=lambda p: (moved(p), p))
    logger.info('Normalizer quotient has %d elements', len(reps))
    return NormalizerQuotient(tuple(reps), len(normalizer), len(trivial))


@dataclass(frozen=True)
class ConjugatorWitness:
    conjugator: CartanRoot
    image: CartanRoot

    def as_dict(self) -> dict:
        return {'conjugator': self.conjugator.label, 'image': self.image.label}


def find_detecting_conjugators(root: CartanRoot, report: DetectionReport) -> list[ConjugatorWitness]:
    """
    Detected roots r1 != +-r whose reflection sends r to a detected root.
    """
    detected = {e.root.indices: e.root for e in report.entries if e.detected}
    if root.indices is None:
        raise UnsupportedAmbient('Conjugator search needs sl(n) roots')
    opposite = root.indices[::-1]
    witnesses = []
    for candidate in report.detected():
        if candidate.indices in (root.indices, opposite):
            continue
        image = reflect_root(candidate, root)
        if image in detected:
            witnesses.append(ConjugatorWitness(candidate, detected[image]))
    if not witnesses:
        raise NoWitness(f'No detecting conjugator for {root.label}')
    return witnesses


def find_detecting_conjugator(root: CartanRoot, report: DetectionReport) -> ConjugatorWitness:
    return find_detecting_conjugators(root, report)[0]


def find_independent_conjugators(
    root: CartanRoot, report: DetectionReport
) -> tuple[ConjugatorWitness, ConjugatorWitness]:
    """
    Two detecting conjugators whose restrictions to the subalgebra are not
    proportional.
    """
    witnesses = find_detecting_conjugators(root, report)
    for k, first in enumerate(witnesses):
        restriction = report.entry(first.conjugator.label).restriction
        for second in witnesses[k + 1:]:
            if not restriction.is_proportional(report.entry(second.conjugator.label).restriction):
                return first, second
    raise NoWitness(f'No pair of independent detecting conjugators for {root.label}')

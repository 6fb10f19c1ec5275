"""
Potentials along stable and unstable leaves, the periodic cycle functional
on Lyapunov paths, and reconstruction of a transfer map from it.

For x, y on a stable leaf of a,

    p_a(x, y) = sum_{n >= 0} psi_a^-(n+1) (beta(a, a^n y) - beta(a, a^n x)),

the partial sums being psi_a^-n (beta(a^n, y) - beta(a^n, x)). Unstable
leaves use a^-1.
"""
import logging
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from core.conf import rigidkit_settings
from core.exceptions import ConvergenceBudgetExceeded, CycleObstruction, NotOnCommonLeaf, NotSlowFamily
from .actions import Element, ToralAbelianAction
from .cocycles import TwistedCocycle

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DecayFit:
    """Fitted ratio of successive series terms against the predicted rates."""
    fitted: float
    sharp: float
    bound: float

    @property
    def within_bound(self) -> bool:
        return self.fitted <= 1.1 * self.bound

    def as_dict(self) -> dict:
        return {'fitted': self.fitted, 'sharp': self.sharp, 'bound': self.bound,
                'within_bound': self.within_bound}


@dataclass(frozen=True)
class PotentialResult:
    value: np.ndarray
    element: Element
    iterations: int
    tail_bound: float
    term_norms: tuple[float, ...] = field(repr=False)
    decay: DecayFit | None = None

    def as_dict(self) -> dict:
        return {
            'value': self.value.tolist(),
            'element': list(self.element),
            'iterations': self.iterations,
            'tail_bound': self.tail_bound,
            'decay': self.decay.as_dict() if self.decay else None,
        }


def fit_decay(term_norms: Sequence[float], floor: float = 1e-300) -> float | None:
    """exp of the slope of a least-squares line through log term norms."""
    points = [(n, np.log(t)) for n, t in enumerate(term_norms) if t > floor]
    if len(points) < 3:
        return None
    n, logs = np.array(points).T
    slope, _ = np.polyfit(n, logs, 1)
    return float(np.exp(slope))


def leaf_direction(action: ToralAbelianAction, element: Sequence[int], displacement) -> int:
    """
    +1 when the displacement lies in the stable space of the element, -1 for
    the unstable space.
    """
    coords = action.eigen.coordinates(displacement)
    scale = max(float(np.max(np.abs(coords))), 1e-300)
    support = np.abs(coords) > 1e-12 * scale
    moduli = np.abs(action.eigenvalues(element))[support]
    if np.all(moduli < 1 - action.tolerance):
        return 1
    if np.all(moduli > 1 + action.tolerance):
        return -1
    raise NotOnCommonLeaf(f'Points are not on a common stable or unstable leaf of {tuple(element)}')


def check_smallness(beta: TwistedCocycle, element: Sequence[int]) -> float:
    """
    For vector targets Ad(beta) is trivial and the condition is on the twist:
    psi^+-1 must have adapted norm below epsilon^(-kappa/3). Returns the
    contraction rate the series is bounded by.
    """
    action, kappa = beta.action, beta.holder_exponent
    epsilon = action.smallness_constant()
    lam_minus, _ = action.rates(element)
    if beta.twist.is_trivial():
        return lam_minus ** (kappa / 3)
    slack = epsilon ** (-kappa / 3) - 1
    norm = beta.twist.adapted(slack / 2)
    if norm.bound >= epsilon ** (-kappa / 3):
        raise NotSlowFamily('Twist is too large for the contraction of the action')
    return norm.bound * lam_minus ** (kappa / 3)


def potential(beta: TwistedCocycle, element: Sequence[int], x, y, tolerance: float | None = None,
              max_iterations: int | None = None) -> PotentialResult:
    tolerance = rigidkit_settings.PCF_TOLERANCE if tolerance is None else tolerance
    max_iterations = rigidkit_settings.PCF_MAX_ITERATIONS if max_iterations is None else max_iterations
    action, twist = beta.action, beta.twist
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    displacement = y - x
    element = tuple(int(n) for n in element)
    if not np.any(displacement):
        return PotentialResult(np.zeros(beta.target_dim), element, 0, 0.0, ())
    if leaf_direction(action, element, displacement) < 0:
        element = tuple(-n for n in element)
    ratio = check_smallness(beta, element)

    matrix = action.matrix(element)
    psi_inverse = np.linalg.inv(twist.of(element))
    weight = psi_inverse.copy()
    base, delta = np.mod(x, 1.0), displacement
    total = np.zeros(beta.target_dim)
    norms = []
    for n in range(max_iterations):
        term = weight @ (beta(element, base + delta) - beta(element, base))
        total = total + term
        size = float(np.linalg.norm(term))
        norms.append(size)
        if size < tolerance / 10:
            break
        base, delta = np.mod(matrix @ base, 1.0), matrix @ delta
        weight = weight @ psi_inverse
    else:
        raise ConvergenceBudgetExceeded(
            f'Potential along {element} did not converge in {max_iterations} terms'
        )
    tail = norms[-1] * ratio / (1 - ratio) if ratio < 1 else float('inf')
    lam_minus, _ = action.rates(element)
    fitted = fit_decay(norms)
    decay = None if fitted is None else DecayFit(
        fitted, lam_minus ** beta.holder_exponent, lam_minus ** (beta.holder_exponent / 3),
    )
    logger.debug('Potential along %s: %d terms, tail %.2e', element, len(norms), tail)
    return PotentialResult(total, element, len(norms), tail, tuple(norms), decay)


def independence_check(beta: TwistedCocycle, a: Sequence[int], b: Sequence[int], x, y, **kwargs) -> float:
    """|p_a(x, y) - p_b(x, y)|."""
    pa = potential(beta, a, x, y, **kwargs).value
    pb = potential(beta, b, x, y, **kwargs).value
    return float(np.linalg.norm(pa - pb))


def equivariance_defect(beta: TwistedCocycle, potential_element: Sequence[int], acting: Sequence[int],
                        x, y, **kwargs) -> float:
    """|p(a x, a y) - (beta(a, x) + psi_a p(x, y) - beta(a, y))|."""
    action = beta.action
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    before = potential(beta, potential_element, x, y, **kwargs).value
    after = potential(beta, potential_element, action.act(acting, x), action.act(acting, y), **kwargs).value
    predicted = beta(acting, x) + beta.twist.of(acting) @ before - beta(acting, y)
    return float(np.linalg.norm(after - predicted))


@dataclass(frozen=True)
class LyapunovPath:
    """Legs (eigenline index, displacement) starting at base on the cover."""
    base: tuple[float, ...]
    legs: tuple[tuple[int, float], ...] = ()

    @classmethod
    def of(cls, base, legs=()) -> 'LyapunovPath':
        return cls(tuple(float(c) for c in base), tuple((int(j), float(t)) for j, t in legs))

    def points(self, action: ToralAbelianAction) -> list[np.ndarray]:
        out = [np.array(self.base)]
        for line, t in self.legs:
            if not 0 <= line < action.dimension:
                raise NotOnCommonLeaf(f'No eigenline {line}')
            out.append(out[-1] + t * action.eigen.basis[:, line])
        return out

    def end(self, action: ToralAbelianAction) -> np.ndarray:
        return self.points(action)[-1]

    def reversed(self, action: ToralAbelianAction) -> 'LyapunovPath':
        return LyapunovPath.of(self.end(action), [(j, -t) for j, t in reversed(self.legs)])

    def concatenate(self, other: 'LyapunovPath', action: ToralAbelianAction) -> 'LyapunovPath':
        if not np.allclose(self.end(action), other.base, atol=1e-12):
            raise NotOnCommonLeaf('Second path does not start where the first ends')
        return LyapunovPath(self.base, self.legs + other.legs)

    def as_dict(self) -> dict:
        return {'base': list(self.base), 'legs': [list(leg) for leg in self.legs]}


def path_to(action: ToralAbelianAction, base, point) -> LyapunovPath:
    """Legs along the eigenlines, in line order, from base to point."""
    coords = action.eigen.coordinates(np.asarray(point, dtype=float) - np.asarray(base, dtype=float))
    return LyapunovPath.of(base, [(j, c) for j, c in enumerate(coords) if c != 0])


def path_functional(beta: TwistedCocycle, path: LyapunovPath, **kwargs) -> np.ndarray:
    """Sum of p(x_k, x_{k-1}) over the legs, each with its contracting generator."""
    action = beta.action
    points = path.points(action)
    total = np.zeros(beta.target_dim)
    for k, (line, _) in enumerate(path.legs, start=1):
        element = action.contracting_element(line)
        total = total + potential(beta, element, points[k], points[k - 1], **kwargs).value
    return total


def parallelogram(action: ToralAbelianAction, base, first: int, t: float, second: int, r: float) -> LyapunovPath:
    return LyapunovPath.of(base, [(first, t), (second, r), (first, -t), (second, -r)])


def cycle_test(beta: TwistedCocycle, path: LyapunovPath, **kwargs) -> float:
    """Norm of the functional on a closed path."""
    points = path.points(beta.action)
    if not np.allclose(points[0], points[-1], atol=1e-12):
        raise NotOnCommonLeaf('Path is not closed')
    return float(np.linalg.norm(path_functional(beta, path, **kwargs)))


def sample_cycles(action: ToralAbelianAction, count: int, rng) -> list[LyapunovPath]:
    out = []
    for _ in range(count):
        first, second = rng.choice(action.dimension, size=2, replace=False)
        t, r = rng.uniform(-0.5, 0.5, size=2)
        out.append(parallelogram(action, rng.random(action.dimension), int(first), float(t), int(second), float(r)))
    return out


def worst_cycle(beta: TwistedCocycle, samples: int | None = None, seed: int | None = None,
                **kwargs) -> float:
    samples = rigidkit_settings.PCF_CYCLE_SAMPLES if samples is None else samples
    seed = rigidkit_settings.SAMPLE_SEED if seed is None else seed
    rng = np.random.default_rng(seed)
    return max(cycle_test(beta, path, **kwargs) for path in sample_cycles(beta.action, samples, rng))


@dataclass
class TransferResult:
    base: np.ndarray
    grid: np.ndarray
    values: np.ndarray
    constants: np.ndarray
    residual: float
    cycle_deviation: float

    def __call__(self, beta: TwistedCocycle, point) -> np.ndarray:
        return path_functional(beta, path_to(beta.action, self.base, point))

    def as_dict(self) -> dict:
        return {
            'base': self.base.tolist(),
            'grid_size': len(self.grid),
            'constants': self.constants.tolist(),
            'residual': self.residual,
            'cycle_deviation': self.cycle_deviation,
        }


def transfer_from_pcf(beta: TwistedCocycle, base, grid, cycle_tolerance: float | None = None,
                      samples: int | None = None, seed: int | None = None, **kwargs) -> TransferResult:
    """
    T(x) = F(path from base to x) and i(a) = beta(a, base) - T(alpha^a base);
    the residual is the worst |beta(a, x) - T(alpha^a x) + psi_a T(x) - i(a)|
    over the grid and the generators.
    """
    cycle_tolerance = rigidkit_settings.PCF_CYCLE_TOLERANCE if cycle_tolerance is None else cycle_tolerance
    action, twist = beta.action, beta.twist
    deviation = worst_cycle(beta, samples, seed, **kwargs)
    if deviation > cycle_tolerance:
        raise CycleObstruction(f'Cycle functional reaches {deviation:.3e} on a closed parallelogram')
    base = np.asarray(base, dtype=float)
    grid = np.atleast_2d(np.asarray(grid, dtype=float))

    def transfer(point):
        return path_functional(beta, path_to(action, base, point), **kwargs)

    generators = [tuple(int(i == k) for i in range(action.rank)) for k in range(action.rank)]
    constants = np.array([beta(a, base) - transfer(action.act(a, base)) for a in generators])
    values = np.array([transfer(x) for x in grid])
    residual = 0.0
    for x, tx in zip(grid, values):
        for a, c in zip(generators, constants):
            predicted = transfer(action.act(a, x)) - twist.of(a) @ tx + c
            residual = max(residual, float(np.max(np.abs(beta(a, x) - predicted))))
    logger.info('Transfer reconstructed on %d points, residual %.3e', len(grid), residual)
    return TransferResult(base, grid, values, constants, residual, deviation)

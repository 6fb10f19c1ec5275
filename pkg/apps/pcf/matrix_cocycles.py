"""
GL(N)-valued cocycles over a toral action,

    beta(ab, x) = beta(a, alpha^b x) beta(b, x),

and their potentials along stable leaves of a,

    p_a(x, y) = lim beta(a^n, x)^-1 beta(a^n, y).

Unstable leaves use a^-1. A coboundary T(alpha^a x) T(x)^-1 has potential
T(x) T(y)^-1.
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from core.conf import rigidkit_settings
from core.exceptions import ConvergenceBudgetExceeded, NotACocycle, NotSlowFamily
from .actions import Element, ToralAbelianAction
from .potentials import leaf_direction

logger = logging.getLogger(__name__)

MatrixMap = Callable[[np.ndarray], np.ndarray]


def _matrix(value, size: int) -> np.ndarray:
    out = np.asarray(value, dtype=float)
    if out.shape != (size, size):
        raise NotACocycle(f'Expected a {size}x{size} matrix')
    return out


@dataclass
class MatrixCocycle:
    action: ToralAbelianAction
    generator_maps: list[MatrixMap]
    size: int
    holder_exponent: float = 1.0
    kind: str = 'custom'
    transfer: MatrixMap | None = field(default=None, repr=False)

    def __post_init__(self):
        if len(self.generator_maps) != self.action.rank:
            raise NotACocycle('Need one map per generator')
        if not 0 < self.holder_exponent <= 1:
            raise NotACocycle('Holder exponent must lie in (0, 1]')

    def step_value(self, step: tuple[int, int], point: np.ndarray) -> np.ndarray:
        index, sign = step
        f = self.generator_maps[index]
        if sign > 0:
            return _matrix(f(point), self.size)
        previous = self.action.step_matrix((index, -1)) @ point
        return np.linalg.inv(_matrix(f(previous), self.size))

    def __call__(self, element: Sequence[int], point) -> np.ndarray:
        point = np.asarray(point, dtype=float)
        value = np.eye(self.size)
        for step in self.action.steps(element):
            value = self.step_value(step, point) @ value
            point = self.action.step_matrix(step) @ point
        return value

    def as_dict(self) -> dict:
        return {'kind': self.kind, 'size': self.size, 'holder_exponent': self.holder_exponent}


def planted_matrix_coboundary(action: ToralAbelianAction, transfer: MatrixMap, size: int,
                              holder_exponent: float = 1.0) -> MatrixCocycle:
    """beta(a, x) = T(alpha^a x) T(x)^-1 for a Z^m-periodic T with values in GL(N)."""
    def make(index: int) -> MatrixMap:
        generator = action.generators[index]

        def value(x):
            return _matrix(transfer(generator @ x), size) @ np.linalg.inv(_matrix(transfer(x), size))
        return value

    maps = [make(i) for i in range(action.rank)]
    return MatrixCocycle(action, maps, size, holder_exponent, 'planted-coboundary', transfer)


def matrix_cocycle_residual(beta: MatrixCocycle, samples: int = 200, seed: int | None = None,
                            span: int = 2) -> float:
    """max |beta(a + b, x) - beta(a, alpha^b x) beta(b, x)| over random a, b and x."""
    seed = rigidkit_settings.SAMPLE_SEED if seed is None else seed
    rng = np.random.default_rng(seed)
    action = beta.action
    worst = 0.0
    for _ in range(samples):
        a = tuple(int(n) for n in rng.integers(-span, span + 1, size=action.rank))
        b = tuple(int(n) for n in rng.integers(-span, span + 1, size=action.rank))
        x = rng.random(action.dimension)
        total = tuple(p + q for p, q in zip(a, b))
        split = beta(a, action.act(b, x)) @ beta(b, x)
        worst = max(worst, float(np.max(np.abs(beta(total, x) - split))))
    return worst


def adjoint_bound(beta: MatrixCocycle, element: Sequence[int], samples: int = 64,
                  seed: int | None = None) -> float:
    """Sampled sup of |g| |g^-1| >= |Ad g| for g = beta(element, x)."""
    seed = rigidkit_settings.SAMPLE_SEED if seed is None else seed
    rng = np.random.default_rng(seed)
    points = rng.random((samples, beta.action.dimension))
    return max(float(np.linalg.cond(beta(element, x), 2)) for x in points)


def check_matrix_smallness(beta: MatrixCocycle, element: Sequence[int]) -> float:
    """
    |Ad beta(element, .)| must stay below epsilon^(-kappa/3). Returns the
    contraction rate the series is bounded by.
    """
    action, kappa = beta.action, beta.holder_exponent
    epsilon = action.smallness_constant()
    lam_minus, _ = action.rates(element)
    bound = adjoint_bound(beta, element)
    if bound >= epsilon ** (-kappa / 3):
        raise NotSlowFamily(f'Adjoint of the cocycle reaches {bound:.3f} along {tuple(element)}')
    return bound * lam_minus ** (kappa / 3)


@dataclass(frozen=True)
class MatrixPotentialResult:
    value: np.ndarray
    element: Element
    iterations: int
    tail_bound: float
    term_norms: tuple[float, ...] = field(repr=False)

    def as_dict(self) -> dict:
        return {
            'value': self.value.tolist(),
            'element': list(self.element),
            'iterations': self.iterations,
            'tail_bound': self.tail_bound,
        }


def matrix_potential(beta: MatrixCocycle, element: Sequence[int], x, y, tolerance: float | None = None,
                     max_iterations: int | None = None) -> MatrixPotentialResult:
    tolerance = rigidkit_settings.PCF_TOLERANCE if tolerance is None else tolerance
    max_iterations = rigidkit_settings.PCF_MAX_ITERATIONS if max_iterations is None else max_iterations
    action = beta.action
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    displacement = y - x
    element = tuple(int(n) for n in element)
    if not np.any(displacement):
        return MatrixPotentialResult(np.eye(beta.size), element, 0, 0.0, ())
    if leaf_direction(action, element, displacement) < 0:
        element = tuple(-n for n in element)
    ratio = check_matrix_smallness(beta, element)

    matrix = action.matrix(element)
    base, delta = np.mod(x, 1.0), displacement
    from_x, from_y = np.eye(beta.size), np.eye(beta.size)
    current = np.eye(beta.size)
    norms = []
    for n in range(max_iterations):
        from_x = beta(element, base) @ from_x
        from_y = beta(element, base + delta) @ from_y
        following = np.linalg.solve(from_x, from_y)
        size = float(np.linalg.norm(following - current))
        current = following
        norms.append(size)
        if size < tolerance / 10:
            break
        base, delta = np.mod(matrix @ base, 1.0), matrix @ delta
    else:
        raise ConvergenceBudgetExceeded(
            f'Matrix potential along {element} did not converge in {max_iterations} terms'
        )
    tail = norms[-1] * ratio / (1 - ratio) if ratio < 1 else float('inf')
    logger.debug('Matrix potential along %s: %d terms, tail %.2e', element, len(norms), tail)
    return MatrixPotentialResult(current, element, len(norms), tail, tuple(norms))


def matrix_equivariance_defect(beta: MatrixCocycle, potential_element: Sequence[int], acting: Sequence[int],
                               x, y, **kwargs) -> float:
    """|p(a x, a y) - beta(a, x) p(x, y) beta(a, y)^-1|."""
    action = beta.action
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    before = matrix_potential(beta, potential_element, x, y, **kwargs).value
    after = matrix_potential(beta, potential_element, action.act(acting, x), action.act(acting, y), **kwargs).value
    predicted = beta(acting, x) @ before @ np.linalg.inv(beta(acting, y))
    return float(np.max(np.abs(after - predicted)))

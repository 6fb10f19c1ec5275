"""
Twisted additive cocycles over a toral action,

    beta(ab, x) = beta(a, alpha^b x) + psi_a beta(b, x),

given by their values on the generators. Values on other elements are
computed from the generator steps of the element.
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
import sympy
from sympy.core.function import AppliedUndef

from core.conf import rigidkit_settings
from core.exceptions import NotACocycle, ScenarioParseError
from .actions import ToralAbelianAction
from .norms import TwistSpec

logger = logging.getLogger(__name__)

PointMap = Callable[[np.ndarray], np.ndarray]


@dataclass
class TwistedCocycle:
    action: ToralAbelianAction
    twist: TwistSpec
    generator_maps: list[PointMap]
    holder_exponent: float = 1.0
    kind: str = 'custom'
    transfer: PointMap | None = field(default=None, repr=False)
    constants: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        if len(self.generator_maps) != self.action.rank or self.twist.rank != self.action.rank:
            raise NotACocycle('Need one map and one twist matrix per generator')
        if not 0 < self.holder_exponent <= 1:
            raise NotACocycle('Holder exponent must lie in (0, 1]')

    @property
    def target_dim(self) -> int:
        return self.twist.target_dim

    def step_value(self, step: tuple[int, int], point: np.ndarray) -> np.ndarray:
        """beta of a generator or its inverse at a point."""
        index, sign = step
        f = self.generator_maps[index]
        if sign > 0:
            return np.atleast_1d(np.asarray(f(point), dtype=float))
        previous = self.action.step_matrix((index, -1)) @ point
        value = np.atleast_1d(np.asarray(f(previous), dtype=float))
        return -self.twist.step((index, -1)) @ value

    def __call__(self, element: Sequence[int], point) -> np.ndarray:
        point = np.asarray(point, dtype=float)
        value = np.zeros(self.target_dim)
        for step in self.action.steps(element):
            value = self.step_value(step, point) + self.twist.step(step) @ value
            point = self.action.step_matrix(step) @ point
        return value

    def as_dict(self) -> dict:
        return {
            'kind': self.kind,
            'target_dim': self.target_dim,
            'holder_exponent': self.holder_exponent,
            'twist': self.twist.as_dict(),
        }


def _vector(value, target_dim: int) -> np.ndarray:
    out = np.atleast_1d(np.asarray(value, dtype=float))
    if out.shape != (target_dim,):
        raise NotACocycle(f'Expected a vector of length {target_dim}')
    return out


def check_twisted_homomorphism(twist: TwistSpec, constants: np.ndarray, tolerance: float = 1e-10) -> None:
    """i(e_a) + psi_a i(e_b) must equal i(e_b) + psi_b i(e_a)."""
    for a in range(twist.rank):
        for b in range(a + 1, twist.rank):
            left = constants[a] + twist.matrices[a] @ constants[b]
            right = constants[b] + twist.matrices[b] @ constants[a]
            if np.max(np.abs(left - right)) > tolerance:
                raise NotACocycle(f'Constants of generators {a + 1} and {b + 1} are not a twisted homomorphism')


def constant_cocycle(action: ToralAbelianAction, constants, twist: TwistSpec | None = None,
                     holder_exponent: float = 1.0) -> TwistedCocycle:
    constants = np.atleast_2d(np.asarray(constants, dtype=float))
    twist = twist or TwistSpec.trivial(action.rank, constants.shape[1])
    check_twisted_homomorphism(twist, constants)
    maps = [lambda x, c=c: c.copy() for c in constants]
    return TwistedCocycle(action, twist, maps, holder_exponent, 'constant', constants=constants)


def planted_coboundary(action: ToralAbelianAction, transfer: PointMap, twist: TwistSpec | None = None,
                       constants=None, target_dim: int = 1,
                       holder_exponent: float = 1.0) -> TwistedCocycle:
    """beta(a, x) = T(alpha^a x) - psi_a T(x) + i(a) for a Z^m-periodic T."""
    twist = twist or TwistSpec.trivial(action.rank, target_dim)
    if constants is None:
        constants = np.zeros((action.rank, twist.target_dim))
    constants = np.atleast_2d(np.asarray(constants, dtype=float))
    check_twisted_homomorphism(twist, constants)

    def make(index: int) -> PointMap:
        generator, psi, c = action.generators[index], twist.matrices[index], constants[index]

        def value(x):
            return (_vector(transfer(generator @ x), twist.target_dim)
                    - psi @ _vector(transfer(x), twist.target_dim) + c)
        return value

    maps = [make(i) for i in range(action.rank)]
    return TwistedCocycle(action, twist, maps, holder_exponent, 'planted-coboundary', transfer, constants)


def compile_expressions(components: Sequence[str], dimension: int) -> PointMap:
    """
    Compile expressions in x1..xm (with pi, sin, cos, exp, ...) into a
    numpy callable returning the vector of components.
    """
    symbols = sympy.symbols(f'x1:{dimension + 1}')
    namespace = {str(s): s for s in symbols}
    try:
        exprs = [sympy.sympify(c, locals=namespace) for c in components]
    except (sympy.SympifyError, TypeError, SyntaxError) as exc:
        raise ScenarioParseError(f'Cannot parse cocycle expression: {exc}')
    unknown = set().union(*(e.free_symbols for e in exprs)) - set(symbols)
    if unknown:
        raise ScenarioParseError(f'Unknown symbols in cocycle expression: {sorted(map(str, unknown))}')
    undefined = set().union(*(e.atoms(AppliedUndef) for e in exprs))
    if undefined:
        names = sorted({str(f.func) for f in undefined})
        raise ScenarioParseError(f'Unknown functions in cocycle expression: {names}')
    compiled = sympy.lambdify(symbols, exprs, 'numpy')

    def value(x):
        return np.array(compiled(*np.asarray(x, dtype=float)), dtype=float)
    return value


def expression_cocycle(action: ToralAbelianAction, components: Sequence[Sequence[str]],
                       twist: TwistSpec | None = None, holder_exponent: float = 1.0) -> TwistedCocycle:
    """One list of component expressions per generator."""
    if len(components) != action.rank:
        raise ScenarioParseError('Need one expression list per generator')
    maps = [compile_expressions(c, action.dimension) for c in components]
    twist = twist or TwistSpec.trivial(action.rank, len(components[0]))
    return TwistedCocycle(action, twist, maps, holder_exponent, 'expression')


def _random_element(rng, rank: int, span: int) -> tuple[int, ...]:
    return tuple(int(n) for n in rng.integers(-span, span + 1, size=rank))


def cocycle_residual(beta: TwistedCocycle, samples: int = 1000, seed: int | None = None,
                     span: int = 2) -> float:
    """
    max |beta(a + b, x) - beta(a, alpha^b x) - psi_a beta(b, x)| over random
    exponent vectors a, b and points x.
    """
    seed = rigidkit_settings.SAMPLE_SEED if seed is None else seed
    rng = np.random.default_rng(seed)
    action, twist = beta.action, beta.twist
    worst = 0.0
    for _ in range(samples):
        a = _random_element(rng, action.rank, span)
        b = _random_element(rng, action.rank, span)
        x = rng.random(action.dimension)
        total = tuple(p + q for p, q in zip(a, b))
        split = beta(a, action.act(b, x)) + twist.of(a) @ beta(b, x)
        worst = max(worst, float(np.max(np.abs(beta(total, x) - split))))
    logger.debug('Cocycle residual %.3e over %d samples', worst, samples)
    return worst


def check_cocycle(beta: TwistedCocycle, tolerance: float | None = None, samples: int = 1000) -> float:
    tolerance = rigidkit_settings.PCF_TOLERANCE if tolerance is None else tolerance
    residual = cocycle_residual(beta, samples)
    if residual > tolerance:
        raise NotACocycle(f'Cocycle equation fails by {residual:.3e}')
    return residual

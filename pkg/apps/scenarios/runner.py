"""
Scenario orchestration: parse a scenario, build the objects it describes
lazily, run the requested analyses and collect results and typed failures.
"""
import hashlib
import json
import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from pathlib import Path

import numpy as np

from core.conf import rigidkit_settings
from core.exceptions import (
    AnalysisFailure,
    CycleObstruction,
    NotACocycle,
    NotARepresentation,
    RigidkitError,
    ScenarioParseError,
    UnsupportedAmbient,
)
from apps.extensions.forms import classify_symplectic
from apps.extensions.universal import build_universal_extension, verify_extension_properties
from apps.linalg.matrices import QMatrix, Subspace
from apps.lie.algebras import AbelianSubalgebra, Representation, build_from_matrices
from apps.lie.library import (
    adjoint_representation,
    direct_sum_representation,
    special_linear,
    standard_representation,
    trivial_representation,
)
from apps.pcf.actions import ToralAbelianAction
from apps.pcf.cocycles import (
    cocycle_residual,
    compile_expressions,
    constant_cocycle,
    expression_cocycle,
    planted_coboundary,
)
from apps.pcf.norms import TwistSpec
from apps.pcf.potentials import independence_check, potential, transfer_from_pcf, worst_cycle
from apps.roots.chambers import weyl_chambers
from apps.roots.rigidity import class_semisimplicity, rigidity_report
from apps.roots.systems import combined_classes, restricted_roots, weight_classes, with_weights
from apps.roots.weyl import detection, diagonal_cartan_system, normalizer_quotient
from apps.steinberg.factorization import commutator_relation
from apps.steinberg.weyl_elements import verify_conjugation_lemmas
from apps.steinberg.words import RootGroups
from .serializers import ANALYSES, ScenarioSerializer

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILURES, EXIT_PARSE_ERROR = 0, 1, 2


def scenario_hash(raw: dict) -> str:
    canonical = json.dumps(raw, sort_keys=True, separators=(',', ':'))
    return hashlib.sha256(canonical.encode()).hexdigest()


def load_scenario(path) -> dict:
    try:
        with Path(path).open() as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ScenarioParseError(f'Cannot read {path}: {exc.strerror}')
    except json.JSONDecodeError as exc:
        raise ScenarioParseError(f'{path} is not valid JSON: {exc.msg} at line {exc.lineno}')
    if not isinstance(raw, dict):
        raise ScenarioParseError('Scenario must be a JSON object')
    return raw


def parse_scenario(raw: dict, analyses: list[str] | None = None) -> dict:
    if analyses is not None:
        raw = {**raw, 'analyses': list(analyses)}
    serializer = ScenarioSerializer(data=raw)
    if not serializer.is_valid():
        raise ScenarioParseError(json.dumps(serializer.errors, sort_keys=True))
    return serializer.validated_data


def _matrix(rows) -> QMatrix:
    return QMatrix.from_rows(rows)


class ScenarioContext:
    """Objects of a validated scenario, built on first use."""

    def __init__(self, data: dict):
        self.data = data

    @cached_property
    def algebra(self):
        spec = self.data['algebra']
        if spec['kind'] == 'sl':
            return special_linear(spec['n'])
        return build_from_matrices([_matrix(m) for m in spec['basis']], spec.get('labels'))

    @cached_property
    def subalgebra(self) -> AbelianSubalgebra:
        return AbelianSubalgebra.from_matrices(
            self.algebra, [_matrix(m) for m in self.data['abelian']['generators']],
        )

    @cached_property
    def representation(self) -> Representation | None:
        spec = self.data.get('representation')
        if spec is None:
            return None
        algebra, kind = self.algebra, spec['kind']
        if kind == 'standard':
            rho = standard_representation(algebra)
        elif kind == 'adjoint':
            rho = adjoint_representation(algebra)
        elif kind == 'trivial':
            rho = trivial_representation(algebra, spec['dim'])
        else:
            action = [_matrix(m) for m in spec['action']]
            size = len(spec['action'][0])
            blocks = [Subspace.span(block, size) for block in spec.get('blocks', [])]
            rho = Representation(algebra, action, blocks=blocks, target_dim=size)
        if spec['trivial_summand']:
            rho = direct_sum_representation(rho, trivial_representation(algebra, spec['trivial_summand']))
        return rho

    @cached_property
    def system(self):
        system = restricted_roots(self.algebra, self.subalgebra)
        if self.representation is not None:
            with_weights(system, self.representation)
        return system

    @cached_property
    def cartan_system(self):
        spec = self.data.get('cartan')
        if spec is None:
            return diagonal_cartan_system(self.algebra)
        cartan = AbelianSubalgebra.from_matrices(self.algebra, [_matrix(m) for m in spec['generators']])
        return restricted_roots(self.algebra, cartan)

    @cached_property
    def detection(self):
        return detection(self.cartan_system, self.subalgebra)

    def ideals(self) -> list[Subspace] | None:
        specs = self.data.get('ideals')
        if not specs:
            return None
        return [
            Subspace.span([self.algebra.matrix_to_element(_matrix(m)) for m in spanning], self.algebra.dim)
            for spanning in specs
        ]


@dataclass
class AnalysisResult:
    data: dict
    failures: list[RigidkitError] = field(default_factory=list)


def _class_entries(classes) -> list[dict]:
    return [
        {'class': cls.label, 'members': [mu.label for mu in cls.members], 'dim': cls.dim}
        for cls in classes
    ]


def _space_entries(spaces) -> list[dict]:
    return [
        {'functional': mu.as_json(), 'label': mu.label, 'dim': spaces[mu].dim}
        for mu in sorted(spaces)
    ]


def analyse_roots(ctx: ScenarioContext) -> AnalysisResult:
    system = ctx.system
    data = {
        'algebra_dim': ctx.algebra.dim,
        'rank': system.rank,
        'neutral_dimension': system.zero_space.dim,
        'roots': _space_entries(system.roots),
        'coarse_classes': _class_entries(system.coarse_classes()),
        'grading_violations': len(system.grading_violations()),
        'semisimple_on_each_class': dict(sorted(class_semisimplicity(system).items())),
    }
    if system.weights is not None:
        data['weights'] = _space_entries(system.weights)
        data['weight_classes'] = _class_entries(weight_classes(system))
        data['combined_classes'] = _class_entries(combined_classes(system))
    return AnalysisResult(data)


def analyse_chambers(ctx: ScenarioContext) -> AnalysisResult:
    system = ctx.system
    functionals = list(system.roots) + list(system.weights or [])
    return AnalysisResult(weyl_chambers(functionals, system.rank).as_dict())


def analyse_detection(ctx: ScenarioContext) -> AnalysisResult:
    data = {'detection': ctx.detection.as_dict()}
    if ctx.data.get('cartan') is None:
        data['normalizer'] = normalizer_quotient(ctx.subalgebra).as_dict()
    return AnalysisResult(data)


def analyse_rigidity(ctx: ScenarioContext) -> AnalysisResult:
    try:
        detection_report = ctx.detection
    except UnsupportedAmbient:
        detection_report = None
    report = rigidity_report(
        ctx.algebra, ctx.subalgebra, rho=ctx.representation, ideals=ctx.ideals(),
        detection_report=detection_report, system=ctx.system,
    )
    return AnalysisResult(report.as_dict())


def analyse_extension(ctx: ScenarioContext) -> AnalysisResult:
    rho = ctx.representation
    if rho is None:
        raise NotARepresentation('The extend analysis needs a representation block')
    extension = build_universal_extension(ctx.algebra, rho)
    properties = verify_extension_properties(extension)
    data = {
        'symplectic': classify_symplectic(rho).as_dict(),
        'extension': extension.as_dict(),
        'properties': properties.as_dict(),
    }
    failures = [
        AnalysisFailure(f'{name}: {properties.checks[name].detail}') for name in properties.failures()
    ]
    return AnalysisResult(data, failures)


def analyse_steinberg(ctx: ScenarioContext) -> AnalysisResult:
    options = ctx.data.get('steinberg') or {}
    system = ctx.system
    groups = RootGroups(system)
    conjugation = verify_conjugation_lemmas(system, options.get('samples'), options.get('seed'))
    relations = []
    for first, second in combinations(groups.class_keys(), 2):
        if _negatively_proportional(first, second):
            continue
        x = groups.element(first, groups.class_space(first).basis[0])
        y = groups.element(second, groups.class_space(second).basis[0])
        word = commutator_relation(groups, x, y)
        relations.append({'x': x.label, 'y': y.label, 'classes': [leg.label for leg in word.legs]})
    data = {'conjugation': conjugation.as_dict(), 'commutators': relations}
    failures = []
    if not conjugation.passed:
        failures.append(AnalysisFailure(
            f'{len(conjugation.membership_failures)} membership and '
            f'{len(conjugation.route_failures)} route checks failed'
        ))
    return AnalysisResult(data, failures)


def _negatively_proportional(first, second) -> bool:
    return tuple(-k for k in first) == tuple(second)


def _pcf_cocycle(spec: dict, action: ToralAbelianAction):
    cocycle, kappa = spec['cocycle'], spec['kappa']
    twist = TwistSpec([np.array(m) for m in spec['twist']]) if spec.get('twist') else None
    kind = cocycle['kind']
    if kind == 'constant':
        return constant_cocycle(action, cocycle['constants'], twist, kappa)
    if kind == 'planted-coboundary':
        transfer = compile_expressions(cocycle['transfer'], action.dimension)
        return planted_coboundary(
            action, transfer, twist=twist, constants=cocycle.get('constants'),
            target_dim=len(cocycle['transfer']), holder_exponent=kappa,
        )
    return expression_cocycle(action, cocycle['components'], twist, kappa)


def analyse_pcf(ctx: ScenarioContext) -> AnalysisResult:
    spec = ctx.data['pcf']
    settings = {
        'tolerance': spec.get('tolerance', rigidkit_settings.PCF_TOLERANCE),
        'max_iterations': spec.get('max_iterations', rigidkit_settings.PCF_MAX_ITERATIONS),
    }
    seed = spec.get('seed', rigidkit_settings.SAMPLE_SEED)
    rng = np.random.default_rng(seed)
    action = ToralAbelianAction(spec['generators'])
    beta = _pcf_cocycle(spec, action)
    failures = []

    residual = cocycle_residual(beta, spec['residual_samples'], seed)
    if residual > settings['tolerance']:
        failures.append(NotACocycle(f'Cocycle equation fails by {residual:.3e}'))

    base = np.array(spec['base']) if 'base' in spec else rng.random(action.dimension)
    grid = rng.random((spec['grid_size'], action.dimension))
    potentials, independence = [], []
    for line in range(action.dimension):
        element = action.contracting_element(line)
        y = base + 0.25 * action.eigen.basis[:, line]
        result = potential(beta, element, base, y, **settings)
        potentials.append({'line': line, **result.as_dict()})
        contracting = [g for g in action.generating_set() if abs(action.eigenvalues(g)[line]) < 1]
        contracting.append(tuple(2 * n for n in element))
        deviation = max(independence_check(beta, element, other, base, y, **settings) for other in contracting)
        independence.append({'line': line, 'elements': [list(g) for g in contracting], 'deviation': deviation})

    samples = spec.get('cycle_samples', rigidkit_settings.PCF_CYCLE_SAMPLES)
    data = {
        'action': action.as_dict(),
        'cocycle': beta.as_dict(),
        'cocycle_residual': residual,
        'potentials': potentials,
        'independence': independence,
        'worst_cycle': worst_cycle(beta, samples, seed, **settings),
    }
    try:
        transfer = transfer_from_pcf(beta, base, grid, samples=samples, seed=seed, **settings)
    except CycleObstruction as exc:
        data['transfer'] = exc.as_dict()
        failures.append(exc)
    else:
        data['transfer'] = transfer.as_dict()
        if transfer.residual > rigidkit_settings.PCF_RESIDUAL_TOLERANCE:
            failures.append(AnalysisFailure(f'Transfer residual {transfer.residual:.3e} is too large'))
    return AnalysisResult(data, failures)


RUNNERS = {
    'roots': analyse_roots,
    'chambers': analyse_chambers,
    'detect': analyse_detection,
    'rigidity': analyse_rigidity,
    'extend': analyse_extension,
    'steinberg-verify': analyse_steinberg,
    'pcf': analyse_pcf,
}


@dataclass
class ScenarioOutcome:
    report: dict

    @property
    def failures(self) -> list[dict]:
        return self.report['failures']

    @property
    def exit_code(self) -> int:
        return EXIT_FAILURES if self.failures else EXIT_OK


def run_scenario(raw: dict, analyses: list[str] | None = None) -> ScenarioOutcome:
    """
    Run the requested analyses in a fixed order. Module errors and
    unexpected exceptions become failure entries; parse errors, including
    those found while building scenario objects, propagate as
    ScenarioParseError.
    """
    data = parse_scenario(raw, analyses)
    ctx = ScenarioContext(data)
    requested = [name for name in ANALYSES if name in set(data['analyses'])]
    results, failures = {}, []
    for name in requested:
        try:
            outcome = RUNNERS[name](ctx)
        except ScenarioParseError:
            raise
        except RigidkitError as exc:
            logger.warning('Analysis %s failed: %s', name, exc.detail)
            failures.append({'analysis': name, **exc.as_dict()})
            continue
        except Exception as exc:
            logger.exception('Analysis %s raised %s', name, type(exc).__name__)
            failure = AnalysisFailure(f'{type(exc).__name__}: {exc}')
            failures.append({'analysis': name, **failure.as_dict()})
            continue
        results[name] = outcome.data
        failures.extend({'analysis': name, **exc.as_dict()} for exc in outcome.failures)
    report = {
        'name': data['name'],
        'provenance': {
            'tool': 'rigidkit',
            'version': rigidkit_settings.REPORT_VERSION,
            'scenario_hash': scenario_hash(raw),
        },
        'analyses': results,
        'failures': failures,
    }
    logger.info('Scenario %s: %d analyses, %d failures', data['name'], len(requested), len(failures))
    return ScenarioOutcome(report)


def run_scenario_file(path, analyses: list[str] | None = None) -> ScenarioOutcome:
    return run_scenario(load_scenario(path), analyses)

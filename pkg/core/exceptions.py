"""
Typed errors shared by every rigidkit module.

Each error carries a stable string code. The codes are what reports list in
their failure block and what the API returns, so they must never change.
"""
import logging

from rest_framework import status
from rest_framework.response import Response
from rest_framework.views import exception_handler

logger = logging.getLogger(__name__)


class RigidkitError(Exception):
    """
    Base class, modelled on rest_framework.exceptions.APIException.
    """
    status_code = status.HTTP_422_UNPROCESSABLE_ENTITY
    default_detail = 'Analysis failed.'
    default_code = 'analysis_failure'

    def __init__(self, detail=None, code=None):
        self.detail = detail if detail is not None else self.default_detail
        self.code = code if code is not None else self.default_code
        super().__init__(self.detail)

    def as_dict(self):
        return {'code': self.code, 'detail': str(self.detail)}


# exact-linalg

class RationalSpectrumRequired(RigidkitError):
    default_detail = 'Characteristic polynomial does not split over the rationals.'
    default_code = 'rational_spectrum_required'


class NotCommuting(RigidkitError):
    default_detail = 'Matrices do not commute.'
    default_code = 'not_commuting'


class NotInSpan(RigidkitError):
    default_detail = 'Vector is not in the span.'
    default_code = 'not_in_span'


# lie-core

class ClosureExplosion(RigidkitError):
    default_detail = 'Bracket closure exceeded the dimension cap.'
    default_code = 'closure_explosion'


class NotARepresentation(RigidkitError):
    default_detail = 'Action matrices do not define a representation.'
    default_code = 'not_a_representation'


class NotAbelian(RigidkitError):
    default_detail = 'Generators do not commute.'
    default_code = 'not_abelian'


class DependentGenerators(RigidkitError):
    default_detail = 'Generators are linearly dependent.'
    default_code = 'dependent_generators'


class JacobiViolation(RigidkitError):
    default_detail = 'Structure constants violate antisymmetry or the Jacobi identity.'
    default_code = 'jacobi_violation'


# restricted-roots

class NotARoot(RigidkitError):
    default_detail = 'Functional is not a root of the system.'
    default_code = 'not_a_root'


class NoWitness(RigidkitError):
    default_detail = 'No detecting conjugator exists.'
    default_code = 'no_witness'


class NotInCartan(RigidkitError):
    default_detail = 'Split part does not lie in the Cartan subalgebra.'
    default_code = 'not_in_cartan'


class NotAnIdeal(RigidkitError):
    default_detail = 'Declared block is not an ideal.'
    default_code = 'not_an_ideal'


class UnsupportedAmbient(RigidkitError):
    default_detail = 'Weyl group realization is only available for sl(n).'
    default_code = 'unsupported_ambient'


# steinberg-words

class NoRationalTriple(RigidkitError):
    default_detail = 'No rational sl2-triple through this element.'
    default_code = 'no_rational_triple'


class NegativelyProportional(RigidkitError):
    default_detail = 'Functionals are negatively proportional.'
    default_code = 'negatively_proportional'


class OrderIncompatible(RigidkitError):
    default_detail = 'Order is not compatible with the admissible set.'
    default_code = 'order_incompatible'


class NotSupported(RigidkitError):
    default_detail = 'Word has legs outside the admissible set.'
    default_code = 'not_supported'


class NotAdmissible(RigidkitError):
    default_detail = 'Set of functionals is not admissible.'
    default_code = 'not_admissible'


class NotUnipotent(RigidkitError):
    default_detail = 'Matrix is not unipotent.'
    default_code = 'not_unipotent'


# pcf-dynamics

class NotSlowFamily(RigidkitError):
    default_detail = 'Twist family is not slow.'
    default_code = 'not_slow_family'


class NotOnCommonLeaf(RigidkitError):
    default_detail = 'Points are not on a common stable or unstable leaf.'
    default_code = 'not_on_common_leaf'


class ConvergenceBudgetExceeded(RigidkitError):
    default_detail = 'Potential did not converge within the iteration budget.'
    default_code = 'convergence_budget_exceeded'


class CycleObstruction(RigidkitError):
    default_detail = 'Periodic cycle functional does not vanish on cycles.'
    default_code = 'cycle_obstruction'


class NotACocycle(RigidkitError):
    default_detail = 'Cocycle equation fails.'
    default_code = 'not_a_cocycle'


class InvalidAction(RigidkitError):
    default_detail = 'Generators do not define a regular toral action.'
    default_code = 'invalid_action'


# cli

class ScenarioParseError(RigidkitError):
    status_code = status.HTTP_400_BAD_REQUEST
    default_detail = 'Scenario does not match the schema.'
    default_code = 'parse_error'


class AnalysisFailure(RigidkitError):
    default_detail = 'One or more analyses failed.'
    default_code = 'analysis_failure'


def rigidkit_exception_handler(exc, context):
    """
    DRF exception handler: RigidkitError becomes {code, detail}.
    """
    if isinstance(exc, RigidkitError):
        logger.warning('%s: %s', exc.code, exc.detail)
        return Response(exc.as_dict(), status=exc.status_code)
    return exception_handler(exc, context)

from fractions import Fraction

from rest_framework import serializers

from .models import ScenarioRun

ANALYSES = ['roots', 'chambers', 'detect', 'rigidity', 'extend', 'steinberg-verify', 'pcf']


class RationalField(serializers.Field):
    """An integer, a decimal string like "3/4", or a [num, den] pair."""
    default_error_messages = {
        'invalid': 'Expected an integer, "p/q" or [num, den].',
        'zero_denominator': 'Denominator must be nonzero.',
    }

    def to_internal_value(self, data):
        if isinstance(data, bool):
            self.fail('invalid')
        if isinstance(data, list):
            if len(data) != 2 or not all(isinstance(x, int) and not isinstance(x, bool) for x in data):
                self.fail('invalid')
            if data[1] == 0:
                self.fail('zero_denominator')
            return Fraction(data[0], data[1])
        if isinstance(data, int):
            return Fraction(data)
        if isinstance(data, str):
            try:
                return Fraction(data)
            except (ValueError, ZeroDivisionError):
                self.fail('invalid')
        self.fail('invalid')

    def to_representation(self, value):
        return [value.numerator, value.denominator]


class MatrixField(serializers.ListField):
    """Square matrix of rationals."""

    def __init__(self, **kwargs):
        super().__init__(child=serializers.ListField(child=RationalField()), **kwargs)

    def to_internal_value(self, data):
        rows = super().to_internal_value(data)
        if not rows or any(len(row) != len(rows) for row in rows):
            raise serializers.ValidationError('Matrix must be square and non-empty.')
        return rows


class AlgebraSerializer(serializers.Serializer):
    kind = serializers.ChoiceField(choices=['sl', 'matrix'])
    n = serializers.IntegerField(min_value=2, max_value=9, required=False)
    basis = serializers.ListField(child=MatrixField(), required=False, allow_empty=False)
    labels = serializers.ListField(child=serializers.CharField(), required=False)

    def validate(self, attrs):
        if attrs['kind'] == 'sl' and 'n' not in attrs:
            raise serializers.ValidationError({'n': 'Required for kind "sl".'})
        if attrs['kind'] == 'matrix':
            basis = attrs.get('basis')
            if not basis:
                raise serializers.ValidationError({'basis': 'Required for kind "matrix".'})
            if len({len(m) for m in basis}) != 1:
                raise serializers.ValidationError({'basis': 'Basis matrices must have one size.'})
        return attrs


def matrix_size(algebra: dict) -> int:
    return algebra['n'] if algebra['kind'] == 'sl' else len(algebra['basis'][0])


class AbelianSerializer(serializers.Serializer):
    generators = serializers.ListField(child=MatrixField(), allow_empty=False)


class RepresentationSerializer(serializers.Serializer):
    kind = serializers.ChoiceField(choices=['standard', 'adjoint', 'trivial', 'matrices'], default='matrices')
    dim = serializers.IntegerField(min_value=1, required=False)
    action = serializers.ListField(child=MatrixField(), required=False)
    blocks = serializers.ListField(
        child=serializers.ListField(child=serializers.ListField(child=RationalField())), required=False,
    )
    trivial_summand = serializers.IntegerField(min_value=0, default=0)

    def validate(self, attrs):
        if attrs['kind'] == 'trivial' and 'dim' not in attrs:
            raise serializers.ValidationError({'dim': 'Required for kind "trivial".'})
        if attrs['kind'] == 'matrices' and not attrs.get('action'):
            raise serializers.ValidationError({'action': 'Required for kind "matrices".'})
        return attrs


class CocycleSerializer(serializers.Serializer):
    kind = serializers.ChoiceField(choices=['constant', 'planted-coboundary', 'expression'])
    constants = serializers.ListField(child=serializers.ListField(child=serializers.FloatField()), required=False)
    transfer = serializers.ListField(child=serializers.CharField(), required=False, allow_empty=False)
    components = serializers.ListField(
        child=serializers.ListField(child=serializers.CharField(), allow_empty=False), required=False,
    )

    def validate(self, attrs):
        required = {'constant': 'constants', 'planted-coboundary': 'transfer', 'expression': 'components'}
        field = required[attrs['kind']]
        if not attrs.get(field):
            raise serializers.ValidationError({field: f'Required for kind "{attrs["kind"]}".'})
        return attrs


class PcfSerializer(serializers.Serializer):
    generators = serializers.ListField(
        child=serializers.ListField(child=serializers.ListField(child=serializers.IntegerField())),
        allow_empty=False,
    )
    cocycle = CocycleSerializer()
    twist = serializers.ListField(
        child=serializers.ListField(child=serializers.ListField(child=serializers.FloatField())), required=False,
    )
    kappa = serializers.FloatField(min_value=0, max_value=1, default=1.0)
    tolerance = serializers.FloatField(min_value=0, required=False)
    max_iterations = serializers.IntegerField(min_value=1, required=False)
    cycle_samples = serializers.IntegerField(min_value=1, required=False)
    residual_samples = serializers.IntegerField(min_value=1, default=200)
    base = serializers.ListField(child=serializers.FloatField(), required=False)
    grid_size = serializers.IntegerField(min_value=1, default=8)
    seed = serializers.IntegerField(required=False)

    def validate(self, attrs):
        m = len(attrs['generators'][0])
        for g in attrs['generators']:
            if len(g) != m or any(len(row) != m for row in g):
                raise serializers.ValidationError({'generators': 'Generators must be square of one size.'})
        if 'base' in attrs and len(attrs['base']) != m:
            raise serializers.ValidationError({'base': f'Base point must have {m} coordinates.'})
        if attrs['kappa'] == 0:
            raise serializers.ValidationError({'kappa': 'Holder exponent must be positive.'})
        return attrs


class SteinbergSerializer(serializers.Serializer):
    samples = serializers.IntegerField(min_value=1, required=False)
    seed = serializers.IntegerField(required=False)


class ScenarioSerializer(serializers.Serializer):
    name = serializers.CharField(required=False, default='scenario')
    algebra = AlgebraSerializer(required=False)
    abelian = AbelianSerializer(required=False)
    representation = RepresentationSerializer(required=False)
    cartan = AbelianSerializer(required=False)
    ideals = serializers.ListField(child=serializers.ListField(child=MatrixField()), required=False)
    steinberg = SteinbergSerializer(required=False)
    pcf = PcfSerializer(required=False)
    analyses = serializers.ListField(child=serializers.ChoiceField(choices=ANALYSES), default=list)

    def validate(self, attrs):
        algebra = attrs.get('algebra')
        size = matrix_size(algebra) if algebra else None
        for key in ('abelian', 'cartan'):
            if key in attrs:
                if size is None:
                    raise serializers.ValidationError({key: 'Needs an algebra.'})
                if any(len(m) != size for m in attrs[key]['generators']):
                    raise serializers.ValidationError({key: f'Generators must be {size}x{size}.'})
        for index, ideal in enumerate(attrs.get('ideals', [])):
            if size is None or any(len(m) != size for m in ideal):
                raise serializers.ValidationError({'ideals': f'Ideal {index + 1} does not match the algebra.'})
        if 'representation' in attrs and size is None:
            raise serializers.ValidationError({'representation': 'Needs an algebra.'})
        needs_algebra = set(attrs['analyses']) - {'pcf'}
        if needs_algebra and (algebra is None or 'abelian' not in attrs):
            raise serializers.ValidationError({'analyses': 'Algebra analyses need algebra and abelian blocks.'})
        if 'pcf' in attrs['analyses'] and 'pcf' not in attrs:
            raise serializers.ValidationError({'pcf': 'Required by the pcf analysis.'})
        return attrs


class ScenarioRunSerializer(serializers.ModelSerializer):
    class Meta:
        model = ScenarioRun
        fields = [
            'id', 'name', 'scenario', 'scenario_hash', 'analyses', 'report',
            'exit_code', 'failure_count', 'created_at',
        ]
        read_only_fields = fields


class ScenarioRunCreateSerializer(serializers.Serializer):
    scenario = serializers.JSONField()
    analyses = serializers.ListField(child=serializers.ChoiceField(choices=ANALYSES), required=False)

from rest_framework import mixins, status, viewsets
from rest_framework.permissions import IsAuthenticatedOrReadOnly
from rest_framework.response import Response
from django_filters import rest_framework as filters
from drf_spectacular.utils import extend_schema_view, extend_schema, OpenApiParameter

from .models import ScenarioRun
from .reports import normalize
from .runner import run_scenario, scenario_hash
from .serializers import ScenarioRunSerializer, ScenarioRunCreateSerializer


class ScenarioRunFilter(filters.FilterSet):
    name = filters.CharFilter(lookup_expr='icontains')
    failed = filters.BooleanFilter(method='filter_failed')

    class Meta:
        model = ScenarioRun
        fields = ['exit_code', 'scenario_hash']

    def filter_failed(self, queryset, name, value):
        if value:
            return queryset.exclude(exit_code=0)
        return queryset.filter(exit_code=0)


@extend_schema_view(
    list=extend_schema(
        description='List stored scenario runs',
        parameters=[
            OpenApiParameter(name='name', description='Filter by scenario name'),
            OpenApiParameter(name='failed', description='Only runs with failures', type=bool),
        ]
    ),
    retrieve=extend_schema(description='Get a stored run with its full report'),
    create=extend_schema(
        description='Run a scenario and store its report',
        request=ScenarioRunCreateSerializer,
        responses={201: ScenarioRunSerializer},
    ),
)
class ScenarioRunViewSet(mixins.CreateModelMixin,
                         mixins.ListModelMixin,
                         mixins.RetrieveModelMixin,
                         viewsets.GenericViewSet):
    queryset = ScenarioRun.objects.all()
    serializer_class = ScenarioRunSerializer
    permission_classes = [IsAuthenticatedOrReadOnly]
    filterset_class = ScenarioRunFilter

    def create(self, request, *args, **kwargs):
        serializer = ScenarioRunCreateSerializer(data=request.data)
        serializer.is_valid(raise_exception=True)
        raw = serializer.validated_data['scenario']
        # ScenarioParseError is turned into a 400 by the exception handler
        outcome = run_scenario(raw, serializer.validated_data.get('analyses'))
        report = normalize(outcome.report)
        run = ScenarioRun.objects.create(
            name=report['name'],
            scenario=raw,
            scenario_hash=scenario_hash(raw),
            analyses=list(report['analyses']),
            report=report,
            exit_code=outcome.exit_code,
            failure_count=len(outcome.failures),
        )
        return Response(ScenarioRunSerializer(run).data, status=status.HTTP_201_CREATED)

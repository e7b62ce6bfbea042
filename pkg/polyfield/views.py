from django.conf import settings
from django.core.exceptions import ValidationError as DjangoValidationError
from django.http import HttpResponse
from drf_spectacular.types import OpenApiTypes
from drf_spectacular.utils import OpenApiParameter, OpenApiResponse, extend_schema
from rest_framework import permissions, viewsets
from rest_framework.decorators import action
from rest_framework.exceptions import ValidationError
from rest_framework.response import Response

from c1norm.norms import c1_distance
from c1norm.serializers import C1ReportSerializer
from compactify.charts import compactify
from compactify.serializers import CompactifiedFieldSerializer
from equilibria.census import equilibrium_census
from equilibria.serializers import EquilibriumCensusSerializer
from polyfield.exceptions import NumericalError, PoincareError
from polyfield.models import Problem
from polyfield.problem import limit_field
from polyfield.serializers import (
    PlanarFieldSerializer,
    ProblemListSerializer,
    ProblemSerializer,
)
from portrait.services.portrait_service import PortraitService
from reduction.moments import reduced_field
from spectral.eigen import spectral_result
from spectral.serializers import SpectralResultSerializer

EPS_PARAMETER = OpenApiParameter(
    name="eps", description="Diffusion scale eps > 0", required=False, type=OpenApiTypes.FLOAT
)
N_PARAMETER = OpenApiParameter(
    name="n", description="Spatial grid points (>= 64)", required=False, type=OpenApiTypes.INT
)


def _query(request, name: str, cast, default):
    value = request.query_params.get(name)
    if value is None:
        return default
    try:
        return cast(value)
    except ValueError:
        raise ValidationError({name: f"Expected {cast.__name__}, got {value!r}"})


class ProblemViewSet(viewsets.ModelViewSet):
    """Stored problems and the computations on their limit fields"""

    queryset = Problem.objects.all()
    serializer_class = ProblemSerializer

    def get_permissions(self):
        if self.action in ["create", "update", "partial_update", "destroy"]:
            return [permissions.IsAdminUser()]
        return [permissions.AllowAny()]

    def get_serializer_class(self):
        if self.action == "list":
            return ProblemListSerializer
        return ProblemSerializer

    def limit(self):
        return limit_field(self.get_object().to_spec())

    def handle_exception(self, exc):
        if isinstance(exc, NumericalError):
            exc = ValidationError({"detail": f"Numerical failure: {exc}"})
        elif isinstance(exc, PoincareError):
            exc = ValidationError({"detail": str(exc)})
        elif isinstance(exc, DjangoValidationError):
            exc = ValidationError(exc.message_dict if hasattr(exc, "message_dict") else exc.messages)
        return super().handle_exception(exc)

    @extend_schema(responses={200: PlanarFieldSerializer})
    @action(detail=True, methods=["get"], url_path="limit-field")
    def limit_field(self, request, pk=None):
        """P0, Q0 of the limit field and its degree"""
        return Response(PlanarFieldSerializer(self.limit()).data)

    @extend_schema(responses={200: CompactifiedFieldSerializer})
    @action(detail=True, methods=["get"])
    def compactification(self, request, pk=None):
        return Response(CompactifiedFieldSerializer(compactify(self.limit())).data)

    @extend_schema(
        parameters=[
            OpenApiParameter(
                name="radius",
                description="Half width of the Newton search box",
                required=False,
                type=OpenApiTypes.FLOAT,
            ),
            OpenApiParameter(
                name="seeds",
                description="Newton seeds per axis",
                required=False,
                type=OpenApiTypes.INT,
            ),
        ],
        responses={200: EquilibriumCensusSerializer},
    )
    @action(detail=True, methods=["get"])
    def equilibria(self, request, pk=None):
        """Finite and infinite equilibria with their classification"""
        defaults = settings.POINCARE
        census = equilibrium_census(
            compactify(self.limit()),
            radius=_query(request, "radius", float, defaults["SEARCH_RADIUS"]),
            seeds_per_axis=_query(request, "seeds", int, defaults["SEEDS_PER_AXIS"]),
            seed=defaults["SEED"],
            tol=defaults["HYPERBOLICITY_TOL"],
        )
        return Response(EquilibriumCensusSerializer(census).data)

    @extend_schema(
        parameters=[EPS_PARAMETER, N_PARAMETER],
        responses={200: SpectralResultSerializer},
    )
    @action(detail=True, methods=["get"])
    def spectrum(self, request, pk=None):
        defaults = settings.POINCARE
        result = spectral_result(
            self.get_object().to_spec(),
            _query(request, "eps", float, defaults["EPS_LIST"][0]),
            _query(request, "n", int, defaults["N"]),
        )
        return Response(SpectralResultSerializer(result).data)

    @extend_schema(
        parameters=[
            EPS_PARAMETER,
            N_PARAMETER,
            OpenApiParameter(
                name="grid_n", description="Polar grid size", required=False, type=OpenApiTypes.INT
            ),
            OpenApiParameter(
                name="radius",
                description='Ball radius, "1" or "sqrt2"',
                required=False,
                type=OpenApiTypes.STR,
            ),
        ],
        responses={200: C1ReportSerializer},
    )
    @action(detail=True, methods=["get"], url_path="c1-distance")
    def c1_distance(self, request, pk=None):
        """C1 distance between the compactified reduced field and the limit"""
        defaults = settings.POINCARE
        spec = self.get_object().to_spec()
        result = spectral_result(
            spec,
            _query(request, "eps", float, defaults["EPS_LIST"][0]),
            _query(request, "n", int, defaults["N"]),
        )
        limit = compactify(limit_field(spec))
        report = c1_distance(
            compactify(reduced_field(spec, result), d=limit.d),
            limit,
            _query(request, "grid_n", int, defaults["GRID_N"]),
            request.query_params.get("radius", defaults["RADIUS"]),
        )
        return Response(C1ReportSerializer(report).data)

    @extend_schema(
        responses={200: OpenApiResponse(OpenApiTypes.STR, description="SVG document")}
    )
    @action(detail=True, methods=["get"])
    def portrait(self, request, pk=None):
        """Phase portrait on the Poincare disk"""
        defaults = settings.POINCARE
        portrait = PortraitService(
            compactify(self.limit()),
            radius=defaults["SEARCH_RADIUS"],
            seeds_per_axis=defaults["SEEDS_PER_AXIS"],
            seed=defaults["SEED"],
            tol=defaults["HYPERBOLICITY_TOL"],
        ).build()
        return HttpResponse(portrait.svg(), content_type="image/svg+xml")

from django.core.exceptions import ValidationError as DjangoValidationError
from rest_framework import serializers

from polyfield.models import Problem
from polyfield.problem import ProblemSpec


def _raise_drf(error: DjangoValidationError):
    if hasattr(error, "message_dict"):
        raise serializers.ValidationError(error.message_dict)
    raise serializers.ValidationError({"non_field_errors": error.messages})


class LambdaFieldMixin:
    """Expose the `lam` attribute under the JSON key "lambda" """

    def get_fields(self):
        fields = super().get_fields()
        fields["lambda"] = fields.pop("lam")
        return fields


def coefficient_list(**kwargs):
    return serializers.ListField(
        child=serializers.FloatField(), required=False, **kwargs
    )


class ProblemSpecSerializer(LambdaFieldMixin, serializers.Serializer):
    """
    Problem data in the JSON layout used by spec files;
    `save()` returns a validated ProblemSpec.
    """

    lam = serializers.FloatField(source="lam")
    beta = serializers.FloatField()
    f1 = coefficient_list(default=list)
    f2 = coefficient_list(default=list)
    g1 = coefficient_list(default=list)
    g2 = coefficient_list(default=list)
    diffusion = coefficient_list(default=lambda: [1.0])
    relaxed_degrees = serializers.BooleanField(required=False, default=False)

    def to_representation(self, instance):
        return instance.to_dict()

    def validate(self, attrs):
        try:
            self._spec(attrs).clean()
        except DjangoValidationError as e:
            _raise_drf(e)
        return attrs

    @staticmethod
    def _spec(attrs) -> ProblemSpec:
        return ProblemSpec.from_dict({"lambda": attrs["lam"], **attrs})

    def create(self, validated_data) -> ProblemSpec:
        return self._spec(validated_data)


class ProblemSerializer(LambdaFieldMixin, serializers.ModelSerializer):
    lam = serializers.FloatField(source="lam")

    class Meta:
        model = Problem
        fields = (
            "id",
            "name",
            "description",
            "lam",
            "beta",
            "f1",
            "f2",
            "g1",
            "g2",
            "diffusion",
            "relaxed_degrees",
        )

    def validate(self, data):
        """
        Full validation of the problem data
        """
        instance = Problem(**data)
        if self.instance:
            for field in self.Meta.fields[1:]:
                if field not in data:
                    setattr(instance, field, getattr(self.instance, field))
        try:
            instance.clean()
        except DjangoValidationError as e:
            _raise_drf(e)
        return data


class ProblemListSerializer(ProblemSerializer):
    class Meta(ProblemSerializer.Meta):
        fields = ("id", "name", "lam", "beta", "relaxed_degrees")


class PolynomialField(serializers.Field):
    """Read-only coefficient map {"i,j": c}"""

    def __init__(self, **kwargs):
        kwargs["read_only"] = True
        super().__init__(**kwargs)

    def to_representation(self, value):
        return value.to_json()


class PlanarFieldSerializer(serializers.Serializer):
    d = serializers.IntegerField(read_only=True)
    P = PolynomialField()
    Q = PolynomialField()
    text = serializers.SerializerMethodField()

    def get_text(self, obj) -> list[str]:
        return list(obj.format())

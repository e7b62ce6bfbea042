from rest_framework import serializers

PHI_CSV_COLUMNS = ("x", "phi")


class GridFunctionSerializer(serializers.Serializer):
    n = serializers.IntegerField(read_only=True)
    x = serializers.SerializerMethodField()
    values = serializers.SerializerMethodField()

    def get_x(self, obj) -> list[float]:
        return obj.x.tolist()

    def get_values(self, obj) -> list[float]:
        return obj.values.tolist()


class SpectralResultSerializer(serializers.Serializer):
    eps = serializers.FloatField(read_only=True)
    n = serializers.IntegerField(read_only=True)
    tau = serializers.FloatField(read_only=True)
    beta = serializers.FloatField(read_only=True)
    lambda2 = serializers.FloatField(read_only=True)
    mu = serializers.ListField(child=serializers.FloatField(), read_only=True)
    lambdaA = serializers.ListField(child=serializers.FloatField(), read_only=True)
    phi = GridFunctionSerializer(read_only=True)


def phi_rows(result) -> list[dict]:
    return [
        {"x": float(x), "phi": float(value)}
        for x, value in zip(result.phi.x, result.phi.values)
    ]

from rest_framework import serializers

CSV_COLUMNS = (
    "chart",
    "x",
    "y",
    "disk_p",
    "disk_q",
    "re_eig1",
    "im_eig1",
    "re_eig2",
    "im_eig2",
    "classification",
)


class EquilibriumSerializer(serializers.Serializer):
    chart = serializers.CharField(source="chart.value", read_only=True)
    x = serializers.SerializerMethodField()
    y = serializers.SerializerMethodField()
    disk_p = serializers.SerializerMethodField()
    disk_q = serializers.SerializerMethodField()
    re_eig1 = serializers.SerializerMethodField()
    im_eig1 = serializers.SerializerMethodField()
    re_eig2 = serializers.SerializerMethodField()
    im_eig2 = serializers.SerializerMethodField()
    classification = serializers.CharField(
        source="classification.value", read_only=True
    )
    hyperbolic = serializers.BooleanField(read_only=True)
    at_infinity = serializers.BooleanField(read_only=True)
    alias = serializers.SerializerMethodField()
    note = serializers.CharField(read_only=True)

    def get_x(self, obj) -> float:
        return obj.coords[0]

    def get_y(self, obj) -> float:
        return obj.coords[1]

    def get_disk_p(self, obj) -> float:
        return obj.disk_position[0]

    def get_disk_q(self, obj) -> float:
        return obj.disk_position[1]

    def get_re_eig1(self, obj) -> float:
        return obj.eigenvalues[0].real

    def get_im_eig1(self, obj) -> float:
        return obj.eigenvalues[0].imag

    def get_re_eig2(self, obj) -> float:
        return obj.eigenvalues[1].real

    def get_im_eig2(self, obj) -> float:
        return obj.eigenvalues[1].imag

    def get_alias(self, obj) -> dict | None:
        if obj.alias is None:
            return None
        chart, x, y = obj.alias
        return {"chart": chart.value, "x": x, "y": y}


class EquilibriumCensusSerializer(serializers.Serializer):
    finite = EquilibriumSerializer(many=True, read_only=True)
    infinite = EquilibriumSerializer(many=True, read_only=True)
    warnings = serializers.ListField(child=serializers.CharField(), read_only=True)


def csv_rows(equilibria) -> list[dict]:
    data = EquilibriumSerializer(equilibria, many=True).data
    return [{column: row[column] for column in CSV_COLUMNS} for row in data]

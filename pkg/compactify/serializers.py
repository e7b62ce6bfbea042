from rest_framework import serializers

from compactify.charts import Chart
from polyfield.serializers import PlanarFieldSerializer, PolynomialField


class ChartFieldSerializer(serializers.Serializer):
    chart = serializers.CharField(source="chart.value", read_only=True)
    Fx = PolynomialField()
    Fy = PolynomialField()
    text = serializers.SerializerMethodField()

    def get_text(self, obj) -> list[str]:
        return list(obj.format())


class CompactifiedFieldSerializer(serializers.Serializer):
    d = serializers.IntegerField(read_only=True)
    source = PlanarFieldSerializer(read_only=True, allow_null=True)
    charts = serializers.SerializerMethodField()

    def get_charts(self, obj) -> dict:
        return {
            chart.value: ChartFieldSerializer(obj[chart]).data
            for chart in Chart
        }


def charts_listing(cf) -> str:
    """Human-readable chart systems, one block per chart"""
    lines = [f"# chart systems, d = {cf.d}"]
    for chart in Chart:
        fx, fy = cf[chart].format()
        lines.append(f"{chart.value}: x' = {fx}")
        lines.append(f"{chart.value}: y' = {fy}")
    return "\n".join(lines) + "\n"

from rest_framework import serializers


class ChartSupSerializer(serializers.Serializer):
    sup_value = serializers.FloatField(read_only=True)
    sup_derivative = serializers.FloatField(read_only=True)
    argmax_value = serializers.ListField(child=serializers.FloatField(), read_only=True)
    argmax_derivative = serializers.ListField(
        child=serializers.FloatField(), read_only=True
    )


class C1ReportSerializer(serializers.Serializer):
    overall = serializers.FloatField(read_only=True)
    grid_n = serializers.IntegerField(read_only=True)
    radius = serializers.FloatField(read_only=True)
    per_chart = serializers.SerializerMethodField()

    def get_per_chart(self, obj) -> dict:
        return {
            chart.value: ChartSupSerializer(sup).data
            for chart, sup in obj.per_chart.items()
        }

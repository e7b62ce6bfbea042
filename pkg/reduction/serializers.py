from rest_framework import serializers

CONVERGENCE_CSV_COLUMNS = (
    "eps",
    "tau_eps",
    "lambda2_eps",
    "c1_distance",
    "sup_wperp_h1",
)


class MomentTableSerializer(serializers.Serializer):
    m = serializers.ListField(child=serializers.FloatField(), read_only=True)
    phi0 = serializers.FloatField(read_only=True)


class ConvergenceRowSerializer(serializers.Serializer):
    eps = serializers.FloatField(read_only=True)
    tau_eps = serializers.FloatField(read_only=True)
    lambda2_eps = serializers.FloatField(read_only=True)
    c1_distance = serializers.FloatField(read_only=True)
    sup_wperp_h1 = serializers.FloatField(read_only=True)


def convergence_rows(rows) -> list[dict]:
    data = ConvergenceRowSerializer(rows, many=True).data
    return [{column: row[column] for column in CONVERGENCE_CSV_COLUMNS} for row in data]

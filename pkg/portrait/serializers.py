from rest_framework import serializers

from equilibria.serializers import EquilibriumCensusSerializer

TRAJECTORY_CSV_COLUMNS = ("trajectory", "p", "q", "chart_id")


class DiskTrajectorySerializer(serializers.Serializer):
    termination = serializers.CharField(source="termination.value", read_only=True)
    direction = serializers.CharField(source="direction.value", read_only=True)
    elapsed = serializers.FloatField(read_only=True)
    points = serializers.SerializerMethodField()
    chart_log = serializers.SerializerMethodField()

    def get_points(self, obj) -> list[list[float]]:
        return obj.points.tolist()

    def get_chart_log(self, obj) -> list[dict]:
        return [{"index": index, "chart": chart.value} for index, chart in obj.chart_log]


class MorseSmaleReportSerializer(serializers.Serializer):
    all_hyperbolic = serializers.BooleanField(read_only=True)
    saddle_connection_suspected = serializers.BooleanField(read_only=True)
    census = EquilibriumCensusSerializer(read_only=True)
    separatrices = serializers.SerializerMethodField()

    def get_separatrices(self, obj) -> list[dict]:
        return [
            {
                "saddle": list(branch.saddle.disk_position),
                "stable": branch.stable,
                "side": branch.side,
                "termination": branch.trajectory.termination.value,
                "end": branch.trajectory.end.tolist(),
            }
            for branch in obj.separatrices
        ]


class ClaimSerializer(serializers.Serializer):
    name = serializers.CharField(read_only=True)
    passed = serializers.BooleanField(read_only=True)
    detail = serializers.CharField(read_only=True)


class ReproductionReportSerializer(serializers.Serializer):
    passed = serializers.BooleanField(read_only=True)
    claims = ClaimSerializer(many=True, read_only=True)


def trajectory_rows(trajectories) -> list[dict]:
    """One row per disk point, trajectories numbered in input order"""
    rows = []
    for number, item in enumerate(trajectories):
        trajectory = getattr(item, "trajectory", item)
        for (p, q), chart in zip(trajectory.points, trajectory.charts):
            rows.append(
                {"trajectory": number, "p": float(p), "q": float(q), "chart_id": chart.value}
            )
    return rows

from rest_framework import serializers

from simulate.statistics import project

TRAJECTORY_CSV_COLUMNS = ("t", "v", "u", "wperp_L2", "wperp_H1", "blowup")
SNAPSHOT_CSV_COLUMNS = ("t", "x", "w")


class SimSampleSerializer(serializers.Serializer):
    """One stored state split along phi (passed in the context)"""

    t = serializers.FloatField(read_only=True)
    v = serializers.FloatField(read_only=True)

    def to_representation(self, instance):
        data = super().to_representation(instance)
        u, wperp = project(instance, self.context["phi"])
        data.update(u=u, wperp_L2=wperp.l2_norm(), wperp_H1=wperp.h1_norm())
        return data


class TrajectorySerializer(serializers.Serializer):
    eps = serializers.FloatField(read_only=True)
    dt = serializers.FloatField(read_only=True)
    sample_stride = serializers.IntegerField(read_only=True)
    blowup = serializers.BooleanField(read_only=True)
    samples = serializers.SerializerMethodField()

    def get_samples(self, obj) -> list[dict]:
        return SimSampleSerializer(obj.states, many=True, context=self.context).data


def trajectory_rows(trajectory, phi) -> list[dict]:
    data = SimSampleSerializer(trajectory.states, many=True, context={"phi": phi}).data
    last = len(data) - 1
    return [
        {
            **{column: row[column] for column in TRAJECTORY_CSV_COLUMNS[:-1]},
            "blowup": int(trajectory.blowup and k == last),
        }
        for k, row in enumerate(data)
    ]


def snapshot_rows(trajectory, stride: int) -> list[dict]:
    """Full fields (t, x, w) of every stride-th stored state; stride 0 disables"""
    if stride <= 0:
        return []
    return [
        {"t": state.t, "x": float(x), "w": float(w)}
        for state in trajectory.states[::stride]
        for x, w in zip(state.w.x, state.w.values)
    ]

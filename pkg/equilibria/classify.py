from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from compactify.charts import Chart

HYPERBOLICITY_TOL = 1e-8


class Classification(str, Enum):
    SADDLE = "Saddle"
    STABLE_NODE = "StableNode"
    UNSTABLE_NODE = "UnstableNode"
    STABLE_FOCUS = "StableFocus"
    UNSTABLE_FOCUS = "UnstableFocus"
    CENTER = "Center"
    NON_HYPERBOLIC = "NonHyperbolic"
    DEGENERATE = "Degenerate"

    @property
    def is_hyperbolic(self) -> bool:
        return self in HYPERBOLIC_TYPES


HYPERBOLIC_TYPES = frozenset(
    {
        Classification.SADDLE,
        Classification.STABLE_NODE,
        Classification.UNSTABLE_NODE,
        Classification.STABLE_FOCUS,
        Classification.UNSTABLE_FOCUS,
    }
)


@dataclass(frozen=True)
class Equilibrium:
    """
    An equilibrium of the compactified field, located by chart coordinates.
    `alias` holds the coordinates of the same sphere point in another chart
    for points on the equator seen by both U1 and U2.
    """

    chart: Chart
    coords: tuple[float, float]
    disk_position: tuple[float, float]
    eigenvalues: tuple[complex, complex]
    classification: Classification
    at_infinity: bool = False
    alias: tuple[Chart, float, float] | None = None
    jacobian: np.ndarray = field(default=None, compare=False, repr=False)
    note: str = ""

    @property
    def hyperbolic(self) -> bool:
        return self.classification.is_hyperbolic


def classify(
    J, tol: float = HYPERBOLICITY_TOL
) -> tuple[tuple[complex, complex], Classification]:
    """
    Eigenvalues from trace and determinant and the linear type. The
    tolerance is relative to the Frobenius norm of J.
    """
    J = np.asarray(J, float)
    a, b, c, d = J[0, 0], J[0, 1], J[1, 0], J[1, 1]
    threshold = tol * float(np.linalg.norm(J))
    trace, det = a + d, a * d - b * c
    disc = trace * trace - 4.0 * det

    if disc < 0.0:
        re, im = trace / 2.0, math.sqrt(-disc) / 2.0
        eigenvalues = (complex(re, -im), complex(re, im))
        if abs(re) <= threshold:
            return eigenvalues, Classification.CENTER
        if re < 0.0:
            return eigenvalues, Classification.STABLE_FOCUS
        return eigenvalues, Classification.UNSTABLE_FOCUS

    root = math.sqrt(disc)
    big = (trace + math.copysign(root, trace)) / 2.0
    small = det / big if big != 0.0 else 0.0
    lo, hi = sorted((big, small))
    eigenvalues = (complex(lo), complex(hi))
    if min(abs(lo), abs(hi)) <= threshold:
        return eigenvalues, Classification.NON_HYPERBOLIC
    if lo < 0.0 < hi:
        return eigenvalues, Classification.SADDLE
    if hi < 0.0:
        return eigenvalues, Classification.STABLE_NODE
    return eigenvalues, Classification.UNSTABLE_NODE


def eigenvectors(J) -> tuple[np.ndarray, np.ndarray]:
    """Unit eigenvectors for the ascending real eigenvalues of a saddle"""
    values, vectors = np.linalg.eig(np.asarray(J, float))
    order = np.argsort(values.real)
    return tuple(
        np.real_if_close(vectors[:, k]).real / np.linalg.norm(vectors[:, k])
        for k in order
    )


def equilibrium_at(
    system,
    chart: Chart,
    x: float,
    y: float,
    disk_position: tuple[float, float],
    tol: float = HYPERBOLICITY_TOL,
    **extra,
) -> Equilibrium:
    J = np.asarray(system.jacobian(x, y), float)
    eigenvalues, classification = classify(J, tol)
    return Equilibrium(
        chart=Chart(chart),
        coords=(float(x), float(y)),
        disk_position=disk_position,
        eigenvalues=eigenvalues,
        classification=classification,
        jacobian=J,
        **extra,
    )

"""
Brute-force root oracle: sign changes on a fine grid, refined by
recursive quadrisection and a final polish with MINPACK's hybrid method.
Shares no code with the Newton multistart it is used to check.
"""

from __future__ import annotations

import numpy as np
from scipy import optimize
from scipy.spatial import cKDTree

from polyfield.fields import PolynomialPair

ORACLE_CELLS = 2000
MIN_CELL = 1e-7
ORACLE_RESIDUAL_TOL = 1e-9


def _changes_sign(values: np.ndarray) -> bool:
    return values.min() <= 0.0 <= values.max()


def _refine(field: PolynomialPair, lo: np.ndarray, size: float, min_cell: float):
    """Yield centres of sub-cells where both components change sign"""
    stack = [(lo, size)]
    while stack:
        corner, width = stack.pop()
        if width <= min_cell:
            yield corner + width / 2.0
            continue
        half = width / 2.0
        xs = corner[0] + np.array([0.0, half, width])
        ys = corner[1] + np.array([0.0, half, width])
        uu, vv = np.meshgrid(xs, ys, indexing="ij")
        values = field(uu, vv)
        for a in range(2):
            for b in range(2):
                block = values[a:a + 2, b:b + 2]
                if _changes_sign(block[..., 0]) and _changes_sign(block[..., 1]):
                    stack.append(
                        (corner + np.array([a * half, b * half]), half)
                    )


def _distinct(points: np.ndarray, radius: float) -> np.ndarray:
    """First point of every radius-ball in lexicographic order"""
    points = np.asarray(points, float).reshape(-1, 2)
    if not len(points):
        return points
    tree = cKDTree(points)
    taken = np.zeros(len(points), bool)
    kept = []
    for k in np.lexsort((points[:, 1], points[:, 0])):
        if taken[k]:
            continue
        taken[tree.query_ball_point(points[k], radius)] = True
        kept.append(points[k])
    return np.array(kept)


def _polish(field: PolynomialPair, centre: np.ndarray) -> np.ndarray | None:
    result = optimize.root(
        lambda z: np.asarray(field(z[0], z[1]), float),
        centre,
        jac=lambda z: np.asarray(field.jacobian(z[0], z[1]), float),
        method="hybr",
    )
    if not result.success:
        return None
    return result.x


def grid_roots(
    field: PolynomialPair,
    radius: float,
    cells: int = ORACLE_CELLS,
    min_cell: float = MIN_CELL,
) -> np.ndarray:
    """
    Roots of F = 0 in [-R, R]^2 located by sign changes of both components
    over the corners of a cells x cells grid.
    """
    axis = np.linspace(-radius, radius, cells + 1)
    width = axis[1] - axis[0]
    uu, vv = np.meshgrid(axis, axis, indexing="ij")
    values = field(uu, vv)
    hit = np.ones((cells, cells), bool)
    for k in range(2):
        c = values[..., k]
        corners = np.stack([c[:-1, :-1], c[1:, :-1], c[:-1, 1:], c[1:, 1:]])
        hit &= (corners.min(axis=0) <= 0.0) & (corners.max(axis=0) >= 0.0)

    centres = [
        centre
        for i, j in np.argwhere(hit)
        for centre in _refine(field, np.array([axis[i], axis[j]]), width, min_cell)
    ]
    roots = []
    # one polish per cluster of surviving sub-cells
    for centre in _distinct(np.array(centres), 10 * min_cell):
        point = _polish(field, centre)
        if point is None or np.linalg.norm(point - centre) > 2 * width:
            continue
        if np.max(np.abs(field(point[0], point[1]))) < ORACLE_RESIDUAL_TOL:
            roots.append(point)
    roots = np.array(roots).reshape(-1, 2)
    roots = roots[np.all(np.abs(roots) <= radius, axis=-1)]
    return _distinct(roots, 1e-6)

"""
Finite equilibria by damped multistart Newton.
"""

from __future__ import annotations

import logging

import numpy as np

from compactify.charts import Chart
from compactify.sphere import central_projection
from equilibria.classify import HYPERBOLICITY_TOL, equilibrium_at
from polyfield.exceptions import DomainError
from polyfield.fields import PolynomialPair

logger = logging.getLogger(__name__)

SEARCH_RADIUS = 10.0
SEEDS_PER_AXIS = 24
DEDUP_RADIUS = 1e-6
RESIDUAL_TOL = 1e-10
MAX_ITERATIONS = 80
MAX_HALVINGS = 30
CONFIRM_DEPTH = 12
MAX_SUBCELLS = 256


class EquilibriumList(list):
    """List of equilibria carrying search warnings"""

    def __init__(self, items=(), warnings=()):
        super().__init__(items)
        self.warnings: list[str] = list(warnings)


def _residual(field: PolynomialPair, z: np.ndarray) -> np.ndarray:
    return np.max(np.abs(field(z[:, 0], z[:, 1])), axis=-1)


def newton_polish(
    field: PolynomialPair,
    seeds: np.ndarray,
    max_iterations: int = MAX_ITERATIONS,
) -> np.ndarray:
    """
    Vectorized damped Newton with backtracking on max(|F1|, |F2|).
    Returns the final iterates; points with a singular Jacobian stop moving.
    """
    z = np.array(seeds, float).reshape(-1, 2)
    with np.errstate(all="ignore"):
        return _damped_newton(field, z, max_iterations)


def _damped_newton(field, z, max_iterations):
    for _ in range(max_iterations):
        F = field(z[:, 0], z[:, 1])
        J = field.jacobian(z[:, 0], z[:, 1])
        norm = np.max(np.abs(F), axis=-1)
        det = J[:, 0, 0] * J[:, 1, 1] - J[:, 0, 1] * J[:, 1, 0]
        active = (norm > 1e-15) & (np.abs(det) > 1e-300) & np.isfinite(norm)
        if not np.any(active):
            break
        step = np.zeros_like(z)
        step[active] = -np.linalg.solve(J[active], F[active][..., None])[..., 0]

        t = np.ones(len(z))
        accepted = ~active
        trial = z.copy()
        for _ in range(MAX_HALVINGS):
            pending = ~accepted
            if not np.any(pending):
                break
            candidate = z[pending] + t[pending, None] * step[pending]
            new_norm = _residual(field, candidate)
            better = new_norm < norm[pending] * (1.0 - 1e-4 * t[pending])
            idx = np.flatnonzero(pending)
            trial[idx[better]] = candidate[better]
            accepted[idx[better]] = True
            t[idx[~better]] *= 0.5
        moved = np.linalg.norm(trial - z, axis=-1)
        z = trial
        if np.all(moved[active] < 1e-15 * (1.0 + np.linalg.norm(z[active], axis=-1))):
            break
    return z


def deduplicate(points: np.ndarray, radius: float = DEDUP_RADIUS) -> np.ndarray:
    kept: list[np.ndarray] = []
    for point in sorted(points.tolist()):
        point = np.asarray(point)
        if all(np.linalg.norm(point - other) > radius for other in kept):
            kept.append(point)
    return np.array(kept).reshape(-1, 2)


def seed_grid(radius: float, seeds_per_axis: int, seed: int = 0) -> np.ndarray:
    """Uniform grid over [-R, R]^2 with a reproducible quarter-cell jitter"""
    axis = np.linspace(-radius, radius, seeds_per_axis)
    spacing = axis[1] - axis[0]
    uu, vv = np.meshgrid(axis, axis, indexing="ij")
    grid = np.column_stack([uu.ravel(), vv.ravel()])
    rng = np.random.default_rng(seed)
    jitter = rng.uniform(-0.25, 0.25, size=grid.shape) * spacing
    return np.clip(grid + jitter, -radius, radius)


def _sign_change_cells(field: PolynomialPair, radius: float, cells: int):
    axis = np.linspace(-radius, radius, cells + 1)
    uu, vv = np.meshgrid(axis, axis, indexing="ij")
    values = field(uu, vv)
    hits = []
    for k in range(2):
        s = np.sign(values[..., k])
        corners = np.stack([s[:-1, :-1], s[1:, :-1], s[:-1, 1:], s[1:, 1:]])
        hits.append((corners.min(axis=0) <= 0) & (corners.max(axis=0) >= 0))
    both = np.argwhere(hits[0] & hits[1])
    return axis, both


def crossing_subcells(
    field: PolynomialPair,
    lo: np.ndarray,
    size: float,
    depth: int = CONFIRM_DEPTH,
) -> np.ndarray:
    """
    Centres of the sub-cells of the square [lo, lo + size] that keep a sign
    change of both components after `depth` quadrisections. Empty when the
    two zero curves pass through the cell without meeting.
    """
    corners = np.asarray(lo, float).reshape(1, 2)
    width = size
    for _ in range(depth):
        width /= 2.0
        offsets = np.array([[0.0, 0.0], [width, 0.0], [0.0, width], [width, width]])
        corners = (corners[:, None, :] + offsets[None]).reshape(-1, 2)
        values = np.stack(
            [field(corners[:, 0] + du, corners[:, 1] + dv) for du, dv in offsets]
        )
        keep = np.all(
            (values.min(axis=0) <= 0.0) & (values.max(axis=0) >= 0.0), axis=-1
        )
        corners = corners[keep][:MAX_SUBCELLS]
        if not len(corners):
            break
    return corners + width / 2.0


def finite_equilibria(
    field: PolynomialPair,
    radius: float = SEARCH_RADIUS,
    seeds_per_axis: int = SEEDS_PER_AXIS,
    seed: int = 0,
    tol: float = HYPERBOLICITY_TOL,
) -> EquilibriumList:
    """
    All roots of P = Q = 0 in [-R, R]^2, each classified by its Jacobian.
    Cells of the seed grid where both zero curves still meet after
    quadrisection, with no root found nearby and no Newton restart from the
    surviving sub-cells converging, are reported as possible misses.
    """
    if radius <= 0:
        raise DomainError(f"search radius must be positive, got {radius}")
    if seeds_per_axis < 8:
        raise DomainError(f"seeds_per_axis must be >= 8, got {seeds_per_axis}")

    z = newton_polish(field, seed_grid(radius, seeds_per_axis, seed))
    with np.errstate(over="ignore", invalid="ignore"):
        residual = np.sum(np.abs(field(z[:, 0], z[:, 1])), axis=-1)
    inside = np.all(np.abs(z) <= radius * (1.0 + 1e-12), axis=-1)
    roots = deduplicate(z[(residual < RESIDUAL_TOL) & inside])
    logger.debug(
        "Newton from %d seeds: %d converged, %d distinct roots",
        len(z), int(np.sum(residual < RESIDUAL_TOL)), len(roots),
    )

    warnings = []
    axis, cells = _sign_change_cells(field, radius, seeds_per_axis - 1)
    spacing = axis[1] - axis[0]
    for i, j in cells:
        lo = np.array([axis[i], axis[j]])
        hi = lo + spacing
        if any(np.all((lo - DEDUP_RADIUS <= r) & (r <= hi + DEDUP_RADIUS)) for r in roots):
            continue
        centres = crossing_subcells(field, lo, spacing)
        if not len(centres):
            continue
        z = newton_polish(field, centres)
        with np.errstate(over="ignore", invalid="ignore"):
            residual = np.sum(np.abs(field(z[:, 0], z[:, 1])), axis=-1)
        near = np.all(np.abs(z - (lo + spacing / 2.0)) <= spacing, axis=-1)
        inside = np.all(np.abs(z) <= radius * (1.0 + 1e-12), axis=-1)
        rescued = z[(residual < RESIDUAL_TOL) & near & inside]
        if len(rescued):
            logger.debug("recovered %d root(s) near cell %s", len(rescued), lo)
            roots = deduplicate(np.vstack([roots, rescued]))
            continue
        message = (
            f"possible missed root in cell [{axis[i]:.4g}, {axis[i + 1]:.4g}]"
            f" x [{axis[j]:.4g}, {axis[j + 1]:.4g}]"
        )
        logger.warning(message)
        warnings.append(message)

    result = EquilibriumList(warnings=warnings)
    for u, v in roots:
        y = central_projection(u, v)
        result.append(
            equilibrium_at(
                field, Chart.U3, u, v, (float(y[0]), float(y[1])), tol
            )
        )
    return result

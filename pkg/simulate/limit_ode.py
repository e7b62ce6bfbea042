from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from polyfield.exceptions import DomainError
from polyfield.fields import PlanarField
from polyfield.problem import ProblemSpec, limit_field
from simulate.pde import BLOWUP_NORM

logger = logging.getLogger(__name__)

RTOL = 1e-9
ATOL = 1e-12


@dataclass(frozen=True, eq=False)
class PlanarTrajectory:
    t: np.ndarray
    points: np.ndarray  # (m, 2): u, v
    blowup: bool
    message: str = ""

    @property
    def final(self) -> np.ndarray:
        return self.points[-1]


def integrate_field(
    X: PlanarField,
    init,
    T: float,
    t_eval=None,
    rtol: float = RTOL,
    atol: float = ATOL,
    blowup_norm: float = BLOWUP_NORM,
) -> PlanarTrajectory:
    """Dormand-Prince 4(5) on u' = P(u, v), v' = Q(u, v)"""
    if not T > 0:
        raise DomainError(f"T must be positive, got {T}")

    def rhs(t, z):
        return X(z[0], z[1])

    def escape(t, z):
        return blowup_norm - np.max(np.abs(z))

    escape.terminal = True
    escape.direction = -1

    with np.errstate(over="ignore", invalid="ignore"):
        solution = solve_ivp(
            rhs, (0.0, T), np.asarray(init, dtype=float),
            method="RK45", t_eval=t_eval, rtol=rtol, atol=atol, events=escape,
        )

    # status -1: step size underflow, which only happens on the way to blow-up
    blowup = solution.status == 1 or solution.status == -1
    if blowup:
        logger.warning(
            "Limit ODE from %s left |z| <= %g before T=%g: %s",
            tuple(init), blowup_norm, T, solution.message,
        )
    t, points = solution.t, solution.y.T
    if t.size == 0:
        t, points = np.array([0.0]), np.asarray(init, dtype=float).reshape(1, 2)
    return PlanarTrajectory(t, points, bool(blowup), solution.message)


def integrate_limit_ode(
    spec: ProblemSpec, init, T: float, t_eval=None, **kwargs
) -> PlanarTrajectory:
    return integrate_field(limit_field(spec), init, T, t_eval=t_eval, **kwargs)

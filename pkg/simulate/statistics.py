"""
Splitting of PDE states along the ground state phi of the diffusion operator:
w = u phi + wperp with u = <w, phi>.
"""

from __future__ import annotations

import logging

import numpy as np

from polyfield.exceptions import DomainError
from polyfield.problem import ProblemSpec
from simulate.limit_ode import integrate_limit_ode
from simulate.pde import SimState, Trajectory
from spectral.grid import GridFunction

logger = logging.getLogger(__name__)

WINDOW = (0.0, 1.0)


def project(state: SimState, phi: GridFunction) -> tuple[float, GridFunction]:
    if state.w.n != phi.n:
        raise DomainError(f"state on n={state.w.n} but phi on n={phi.n}")
    u = state.w.inner(phi)
    return u, state.w - phi * u


def wperp_sup_h1(
    trajectory: Trajectory, phi: GridFunction, window: tuple[float, float] = WINDOW
) -> float:
    """max over stored states with window[0] < t <= window[1] of ||wperp||_H1"""
    t0, t1 = window
    inside = [s for s in trajectory if t0 < s.t <= t1 + 1e-12]
    if not inside:
        raise DomainError(f"no stored state in the window ({t0}, {t1}]")
    if not trajectory.blowup and trajectory.final.t < t1 - 1e-9:
        logger.warning(
            "Trajectory ends at t=%g inside the window (%g, %g]",
            trajectory.final.t, t0, t1,
        )
    return max(project(s, phi)[1].h1_norm() for s in inside)


def reduced_path(trajectory: Trajectory, phi: GridFunction) -> np.ndarray:
    """(t, u, v) for every stored state"""
    return np.array([(s.t, project(s, phi)[0], s.v) for s in trajectory])


def shadowing_gap(
    spec: ProblemSpec, trajectory: Trajectory, phi: GridFunction
) -> float:
    """sup over stored times of |(u, v) - limit ODE from the same (u0, v0)|"""
    path = reduced_path(trajectory, phi)
    times = path[:, 0] - path[0, 0]
    if times[-1] <= 0:
        return 0.0
    ode = integrate_limit_ode(spec, path[0, 1:], float(times[-1]), t_eval=times)
    m = ode.t.shape[0]
    gap = np.linalg.norm(path[:m, 1:] - ode.points, axis=-1)
    value = float(gap.max())
    logger.debug("Shadowing gap %.3g for eps=%g", value, trajectory.eps)
    return value

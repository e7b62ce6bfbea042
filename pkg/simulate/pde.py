"""
Method-of-lines integration of the coupled PDE-ODE system

    w_t = (a_eps w_x)_x - lam w + f1(w)         on (0, 1)
    -a_eps(0) w_x(0) = g1(v),  w_x(1) = 0
    v' = -beta v + f2(w(0)) + g2(v)

on the vertex grid of the spectral module. Diffusion and damping are taken
implicitly, the reaction and boundary source explicitly.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import linalg

from polyfield.exceptions import DomainError
from polyfield.problem import ProblemSpec
from spectral.grid import GridFunction, trapezoid_weights
from spectral.operators import TridiagonalOperator, flux_matrix

logger = logging.getLogger(__name__)

BLOWUP_NORM = 1e6
SAMPLE_STRIDE = 1


@dataclass(frozen=True)
class SimState:
    w: GridFunction
    v: float
    t: float

    @classmethod
    def constant(cls, n: int, w0: float, v0: float, t: float = 0.0) -> SimState:
        return cls(GridFunction.constant(n, w0), float(v0), float(t))

    @property
    def n(self) -> int:
        return self.w.n

    @property
    def size(self) -> float:
        """max(sup |w|, |v|)"""
        return max(float(np.max(np.abs(self.w.values))), abs(self.v))


@dataclass
class Trajectory:
    """Stored states, every sample_stride time steps of length dt"""

    dt: float
    eps: float
    sample_stride: int = 1
    states: list[SimState] = field(default_factory=list)
    blowup: bool = False

    @property
    def times(self) -> np.ndarray:
        return np.array([s.t for s in self.states])

    @property
    def final(self) -> SimState:
        return self.states[-1]

    def __len__(self) -> int:
        return len(self.states)

    def __iter__(self):
        return iter(self.states)


def _implicit_factor(spec: ProblemSpec, eps: float, n: int, dt: float) -> np.ndarray:
    """Cholesky factor of (1 + dt lam) W + dt S in upper band layout"""
    S = flux_matrix(spec, eps, n)
    weights = trapezoid_weights(n)
    M = TridiagonalOperator(
        (1.0 + dt * spec.lam) * weights + dt * S.diagonal, dt * S.offdiagonal
    )
    return linalg.cholesky_banded(M.upper_banded())


def _ode_rate(spec: ProblemSpec, boundary_value: float, v: float) -> float:
    return -spec.beta * v + float(spec.f2(boundary_value)) + float(spec.g2(v))


def _blown_up(w: np.ndarray, v: float, threshold: float) -> bool:
    if not (np.all(np.isfinite(w)) and math.isfinite(v)):
        return True
    return max(float(np.max(np.abs(w))), abs(v)) > threshold


def integrate_pde(
    spec: ProblemSpec,
    eps: float,
    init: SimState,
    T: float,
    dt: float,
    sample_stride: int = SAMPLE_STRIDE,
    blowup_norm: float = BLOWUP_NORM,
) -> Trajectory:
    """
    IMEX Euler for w and Heun for v, both advanced from the same state:

        ((1 + dt lam) W + dt S) w+ = W (w + dt f1(w)) + dt g1(v) e0

    with W the trapezoid masses and S the flux matrix, so the boundary flux
    g1(v) enters the half cell at x = 0. Crossing blowup_norm (or leaving the
    floats) ends the run with trajectory.blowup set; the crossing state is
    kept when finite.
    """
    if not T > 0:
        raise DomainError(f"T must be positive, got {T}")
    if not 0 < dt <= T:
        raise DomainError(f"dt must satisfy 0 < dt <= T, got dt={dt}, T={T}")
    if sample_stride < 1:
        raise DomainError(f"sample_stride must be >= 1, got {sample_stride}")

    n = init.n
    steps = max(int(math.ceil(T / dt - 1e-9)), 1)
    weights = trapezoid_weights(n)
    factor = _implicit_factor(spec, eps, n, dt)

    trajectory = Trajectory(dt=dt, eps=eps, sample_stride=sample_stride)
    trajectory.states.append(init)
    w, v = np.array(init.w.values), init.v

    for step in range(1, steps + 1):
        with np.errstate(over="ignore", invalid="ignore"):
            rhs = weights * (w + dt * spec.f1(w))
            rhs[0] += dt * float(spec.g1(v))

            boundary = float(w[0])
            k1 = _ode_rate(spec, boundary, v)
            k2 = _ode_rate(spec, boundary, v + dt * k1)
            v = v + 0.5 * dt * (k1 + k2)
        if not np.all(np.isfinite(rhs)):
            w = rhs
        else:
            w = linalg.cho_solve_banded((factor, False), rhs)

        t = init.t + step * dt
        if _blown_up(w, v, blowup_norm):
            trajectory.blowup = True
            if np.all(np.isfinite(w)) and math.isfinite(v):
                trajectory.states.append(SimState(GridFunction(n, w), v, t))
            logger.warning(
                "Blow-up at t=%.6g for eps=%g (state norm above %g)",
                t, eps, blowup_norm,
            )
            break
        if step % sample_stride == 0 or step == steps:
            trajectory.states.append(SimState(GridFunction(n, w), v, t))

    logger.debug(
        "Integrated eps=%g to t=%.6g with %d stored states",
        eps, trajectory.final.t, len(trajectory),
    )
    return trajectory

import logging
from dataclasses import dataclass

import numpy as np

from c1norm.norms import GRID_N, c1_distance
from compactify.charts import compactify
from polyfield.exceptions import DomainError
from polyfield.problem import ProblemSpec, limit_field
from reduction.moments import ManifoldMode, reduced_field
from simulate.pde import SimState, integrate_pde
from simulate.statistics import WINDOW, wperp_sup_h1
from spectral.eigen import spectral_result
from spectral.grid import GridFunction

logger = logging.getLogger(__name__)

N = 256
DT = 1e-3
SAMPLE_STRIDE = 10


@dataclass(frozen=True)
class ConvergenceRow:
    eps: float
    tau_eps: float
    lambda2_eps: float
    c1_distance: float
    sup_wperp_h1: float


def rough_initial_state(n: int) -> SimState:
    """w0(x) = 0.1 + 0.05 cos(pi x), v0 = -0.1"""
    return SimState(
        GridFunction.from_callable(n, lambda x: 0.1 + 0.05 * np.cos(np.pi * x)),
        -0.1,
        0.0,
    )


class ConvergenceService:
    """
    Distance of the compactified reduced fields to the compactified limit
    field as eps decreases, next to the homogenization statistic of a PDE run
    """

    def __init__(
        self,
        spec: ProblemSpec,
        n: int = N,
        grid_n: int = GRID_N,
        radius=1.0,
        dt: float = DT,
        sample_stride: int = SAMPLE_STRIDE,
        window: tuple[float, float] = WINDOW,
        init: SimState | None = None,
    ):
        self.spec = spec
        self.n = n
        self.grid_n = grid_n
        self.radius = radius
        self.dt = dt
        self.sample_stride = sample_stride
        self.window = window
        self.init = init or rough_initial_state(n)
        self.limit = compactify(limit_field(spec))

    def row(self, eps: float) -> ConvergenceRow:
        result = spectral_result(self.spec, eps, self.n)
        X_eps = reduced_field(self.spec, result, ManifoldMode.ZERO)
        distance = c1_distance(
            compactify(X_eps, d=self.limit.d), self.limit, self.grid_n, self.radius
        ).overall

        trajectory = integrate_pde(
            self.spec, eps, self.init, T=self.window[1], dt=self.dt,
            sample_stride=self.sample_stride,
        )
        if trajectory.blowup:
            sup_wperp = float("inf")
        else:
            sup_wperp = wperp_sup_h1(trajectory, result.phi, self.window)

        row = ConvergenceRow(
            eps=float(eps),
            tau_eps=result.tau,
            lambda2_eps=result.lambda2,
            c1_distance=distance,
            sup_wperp_h1=sup_wperp,
        )
        logger.info(
            "eps=%g: tau=%.6g, lambda2=%.10g, C1 distance=%.3g, sup wperp H1=%.3g",
            row.eps, row.tau_eps, row.lambda2_eps, row.c1_distance, row.sup_wperp_h1,
        )
        return row

    def convergence_study(self, eps_list) -> list[ConvergenceRow]:
        eps_list = [float(eps) for eps in eps_list]
        if not eps_list:
            raise DomainError("eps list is empty")
        if any(not eps > 0 for eps in eps_list):
            raise DomainError(f"eps values must be positive, got {eps_list}")
        if any(b >= a for a, b in zip(eps_list, eps_list[1:])):
            raise DomainError(f"eps list must be strictly descending, got {eps_list}")
        return [self.row(eps) for eps in eps_list]


def convergence_study(
    spec: ProblemSpec, eps_list, n: int = N, grid_n: int = GRID_N, **options
) -> list[ConvergenceRow]:
    return ConvergenceService(spec, n=n, grid_n=grid_n, **options).convergence_study(
        eps_list
    )

"""
Lowest eigenpairs of symmetric tridiagonal matrices and the spectral data of
the diffusion operator.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from polyfield.exceptions import DomainError, EigenSolveError
from polyfield.problem import ProblemSpec
from spectral.grid import GridFunction, trapezoid_weights
from spectral.operators import (
    TridiagonalOperator,
    assemble_B,
    face_coefficients,
    flux_energy,
)

logger = logging.getLogger(__name__)

RESIDUAL_TOL = 1e-8
MAX_RETRIES = 5
INVERSE_STEPS = 3
DEFAULT_K = 4


@dataclass(frozen=True, eq=False)
class SpectralResult:
    eps: float
    mu: tuple[float, ...]
    phi: GridFunction
    lambdaA: tuple[float, ...]
    beta: float
    tau: float

    @property
    def n(self) -> int:
        return self.phi.n

    @property
    def lambda2(self) -> float:
        """Ground state of B_eps, second in the product-operator ordering"""
        return self.mu[0]


def _residuals(T: TridiagonalOperator, values, vectors) -> np.ndarray:
    return np.linalg.norm(T.matvec(vectors) - vectors * values, axis=0)


def _inverse_iteration(
    T: TridiagonalOperator, value: float, start: np.ndarray, others: np.ndarray,
    attempt: int,
) -> tuple[float, np.ndarray]:
    # alternate sides of the eigenvalue, farther away on each attempt
    scale = max(T.norm(), 1.0)
    shift = value + (-1) ** attempt * attempt * 1e-10 * scale
    ab = T.shifted(-shift).banded()
    x = start + 1e-3 * np.cos(np.arange(start.shape[0]) * (attempt + 1.0))
    for _ in range(INVERSE_STEPS):
        if others.size:
            x = x - others @ (others.T @ x)
        x = linalg.solve_banded((1, 1), ab, x)
        x /= np.linalg.norm(x)
    return float(x @ T.matvec(x)), x


def eigen_lowest(T: TridiagonalOperator, k: int) -> tuple[np.ndarray, np.ndarray]:
    """
    k ascending eigenpairs: Sturm-sequence bisection for the values, inverse
    iteration for the vectors (LAPACK stebz/stein). Pairs whose residual
    exceeds 1e-8 ||T|| are recomputed by inverse iteration at a perturbed
    shift, at most five times each.

    Returns (values of shape (k,), unit vectors as columns of shape (n, k)).
    """
    n = T.size
    if not 1 <= k <= n:
        raise DomainError(f"k must satisfy 1 <= k <= n={n}, got {k}")

    try:
        values, vectors = linalg.eigh_tridiagonal(
            T.diagonal, T.offdiagonal,
            select="i", select_range=(0, k - 1), lapack_driver="stebz",
        )
    except linalg.LinAlgError as e:
        logger.warning("Tridiagonal eigensolver failed (%s), falling back", e)
        values = linalg.eigvalsh_tridiagonal(
            T.diagonal, T.offdiagonal, select="i", select_range=(0, k - 1)
        )
        vectors = np.eye(n, k)

    bound = RESIDUAL_TOL * max(T.norm(), np.finfo(float).tiny)
    residuals = _residuals(T, values, vectors)
    for j in np.flatnonzero(residuals > bound):
        for attempt in range(1, MAX_RETRIES + 1):
            logger.warning(
                "Eigenpair %d residual %.3g above %.3g, retry %d",
                j, residuals[j], bound, attempt,
            )
            others = np.delete(vectors, j, axis=1)
            value, vector = _inverse_iteration(
                T, values[j], vectors[:, j], others, attempt
            )
            values[j], vectors[:, j] = value, vector
            residuals[j] = _residuals(T, values[j:j + 1], vectors[:, j:j + 1])[0]
            if residuals[j] <= bound:
                break
        else:
            raise EigenSolveError(
                f"eigenpair {j} did not converge after {MAX_RETRIES} retries "
                f"(residual {residuals[j]:.3g})"
            )

    order = np.argsort(values, kind="stable")
    return values[order], vectors[:, order]


def spectral_result(
    spec: ProblemSpec, eps: float, n: int, k: int = DEFAULT_K
) -> SpectralResult:
    T = assemble_B(spec, eps, n)
    values, vectors = eigen_lowest(T, k)

    weights = trapezoid_weights(n)
    coefficients = face_coefficients(spec, eps, n)
    phis = vectors / np.sqrt(weights)[:, None]

    mu = []
    for j in range(k):
        mass = float(weights @ phis[:, j] ** 2)
        # Rayleigh quotient of the flux energy keeps mu >= lam to round-off
        mu.append(spec.lam + flux_energy(coefficients, phis[:, j]) / mass)
    mu = sorted(mu)

    ground = phis[:, int(np.argmin(values))]
    ground = ground / np.sqrt(weights @ ground**2)
    if weights @ ground < 0:
        ground = -ground

    logger.info(
        "Spectrum of B for eps=%g, n=%d: mu_1=%.10g, mu_2=%.6g",
        eps, n, mu[0], mu[1] if k > 1 else float("nan"),
    )
    return SpectralResult(
        eps=float(eps),
        mu=tuple(float(m) for m in mu),
        phi=GridFunction(n, ground),
        lambdaA=tuple(sorted([float(spec.beta), *mu])),
        beta=float(spec.beta),
        tau=spec.tau(eps),
    )

"""
Vertex-centred finite volumes for B_eps u = -(a_eps u_x)_x + lam u on [0, 1]
with zero-flux ends.

The flux matrix S and the trapezoid masses W give the generalized problem
S phi = (mu - lam) W phi. assemble_B returns its symmetric form
W^{-1/2} S W^{-1/2} + lam I.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from polyfield.exceptions import DomainError
from polyfield.problem import ProblemSpec
from spectral.grid import MIN_N, trapezoid_weights, vertex_grid

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class TridiagonalOperator:
    """Symmetric tridiagonal matrix stored as its two diagonals"""

    diagonal: np.ndarray
    offdiagonal: np.ndarray

    def __post_init__(self):
        diagonal = np.asarray(self.diagonal, dtype=float).reshape(-1)
        offdiagonal = np.asarray(self.offdiagonal, dtype=float).reshape(-1)
        if offdiagonal.shape[0] != max(diagonal.shape[0] - 1, 0):
            raise DomainError(
                f"off-diagonal of length {offdiagonal.shape[0]} "
                f"does not fit a diagonal of length {diagonal.shape[0]}"
            )
        object.__setattr__(self, "diagonal", diagonal)
        object.__setattr__(self, "offdiagonal", offdiagonal)

    @property
    def size(self) -> int:
        return self.diagonal.shape[0]

    def dense(self) -> np.ndarray:
        return (
            np.diag(self.diagonal)
            + np.diag(self.offdiagonal, 1)
            + np.diag(self.offdiagonal, -1)
        )

    def matvec(self, x: np.ndarray) -> np.ndarray:
        """T @ x for a vector or a stack of column vectors"""
        x = np.asarray(x, dtype=float)
        d = self.diagonal if x.ndim == 1 else self.diagonal[:, None]
        e = self.offdiagonal if x.ndim == 1 else self.offdiagonal[:, None]
        y = d * x
        y[:-1] += e * x[1:]
        y[1:] += e * x[:-1]
        return y

    def shifted(self, shift: float) -> TridiagonalOperator:
        return TridiagonalOperator(self.diagonal + shift, self.offdiagonal)

    def banded(self) -> np.ndarray:
        """(1, 1) band layout for scipy.linalg.solve_banded"""
        ab = np.zeros((3, self.size))
        ab[0, 1:] = self.offdiagonal
        ab[1] = self.diagonal
        ab[2, :-1] = self.offdiagonal
        return ab

    def upper_banded(self) -> np.ndarray:
        """Upper band layout for scipy.linalg.cholesky_banded"""
        ab = np.zeros((2, self.size))
        ab[0, 1:] = self.offdiagonal
        ab[1] = self.diagonal
        return ab

    def norm(self) -> float:
        """Infinity norm (max absolute row sum)"""
        rows = np.abs(self.diagonal).copy()
        rows[:-1] += np.abs(self.offdiagonal)
        rows[1:] += np.abs(self.offdiagonal)
        return float(rows.max()) if rows.size else 0.0


def _check_grid(eps: float, n: int) -> None:
    if not eps > 0:
        raise DomainError(f"eps must be positive, got {eps}")
    if n < MIN_N:
        raise DomainError(f"grid resolution n must be >= {MIN_N}, got {n}")


def face_coefficients(spec: ProblemSpec, eps: float, n: int) -> np.ndarray:
    """a_eps at the cell faces x_{k+1/2}, k = 0..n-2"""
    _check_grid(eps, n)
    x = vertex_grid(n)
    faces = (x[:-1] + x[1:]) / 2.0
    nodes = spec.diffusion_at(x, eps)
    coefficients = spec.diffusion_at(faces, eps)
    if not (np.all(nodes > 0) and np.all(coefficients > 0)):
        raise DomainError(
            "a(x) must be positive on the grid, "
            f"min a_eps={float(min(nodes.min(), coefficients.min())):g}"
        )
    return coefficients


def flux_matrix(spec: ProblemSpec, eps: float, n: int) -> TridiagonalOperator:
    """S with S @ 1 = 0; the flux between nodes k and k+1 is a_{k+1/2}/h"""
    coefficients = face_coefficients(spec, eps, n) * (n - 1)
    diagonal = np.zeros(n)
    diagonal[:-1] += coefficients
    diagonal[1:] += coefficients
    return TridiagonalOperator(diagonal, -coefficients)


def assemble_B(spec: ProblemSpec, eps: float, n: int) -> TridiagonalOperator:
    S = flux_matrix(spec, eps, n)
    root = np.sqrt(trapezoid_weights(n))
    diagonal = S.diagonal / root**2 + spec.lam
    offdiagonal = S.offdiagonal / (root[:-1] * root[1:])
    logger.debug("Assembled B for eps=%g on n=%d", eps, n)
    return TridiagonalOperator(diagonal, offdiagonal)


def flux_energy(coefficients: np.ndarray, values: np.ndarray) -> float:
    """sum over faces of a_{k+1/2} (phi_{k+1} - phi_k)^2 / h"""
    n = values.shape[0]
    return float(np.sum(coefficients * np.diff(values) ** 2) * (n - 1))

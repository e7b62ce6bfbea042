"""
Reduced planar field on the two slow modes.

With polynomial nonlinearities and the manifold correction set to zero, the
projected reaction term is again a polynomial:

    int f1(u phi) phi dx = sum_k a_k m[k] u^k,   m[k] = int phi^(k+1) dx
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np

from polyfield.exceptions import DomainError
from polyfield.fields import PlanarField
from polyfield.polynomials import Axis, BivariatePoly, UnivariatePoly
from polyfield.problem import ProblemSpec
from spectral.eigen import SpectralResult
from spectral.grid import GridFunction

logger = logging.getLogger(__name__)


class ManifoldMode(str, Enum):
    ZERO = "zero"


@dataclass(frozen=True)
class MomentTable:
    m: tuple[float, ...]
    phi0: float

    def weighted(self, p: UnivariatePoly) -> UnivariatePoly:
        """Coefficients a_k of p rescaled to a_k m[k]"""
        if len(p.coeffs) > len(self.m):
            raise DomainError(
                f"moments up to degree {len(self.m) - 1} cannot weight "
                f"a polynomial of degree {p.degree()}"
            )
        return UnivariatePoly(tuple(a * m for a, m in zip(p.coeffs, self.m)))


def moments(phi: GridFunction, d: int) -> MomentTable:
    if d < 0:
        raise DomainError(f"moment order d must be >= 0, got {d}")
    powers = phi.values[None, :] ** np.arange(1, d + 2)[:, None]
    return MomentTable(
        m=tuple(float(phi.weights @ row) for row in powers),
        phi0=float(phi.values[0]),
    )


def reduced_field(
    spec: ProblemSpec,
    result: SpectralResult,
    manifold_mode: ManifoldMode = ManifoldMode.ZERO,
) -> PlanarField:
    """
    P(u, v) = -lambda2 u + sum_k a_k m[k] u^k + phi(0) g1(v)
    Q(u, v) = -beta v + f2(phi(0) u) + g2(v)
    """
    try:
        ManifoldMode(manifold_mode)
    except ValueError:
        raise DomainError(f"unsupported manifold mode {manifold_mode!r}") from None
    table = moments(result.phi, spec.field_degree)

    u, v = BivariatePoly.u(), BivariatePoly.v()
    P = (
        u * (-result.lambda2)
        + BivariatePoly.from_univariate(table.weighted(spec.f1), Axis.U)
        + BivariatePoly.from_univariate(spec.g1, Axis.V) * table.phi0
    )
    Q = (
        v * (-spec.beta)
        + BivariatePoly.from_univariate(spec.f2.scaled_argument(table.phi0), Axis.U)
        + BivariatePoly.from_univariate(spec.g2, Axis.V)
    )
    X = PlanarField(P, Q)
    logger.debug(
        "Reduced field for eps=%g: P=%s, Q=%s", result.eps, *X.format()
    )
    return X

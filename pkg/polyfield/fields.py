from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from polyfield.exceptions import DomainError
from polyfield.polynomials import Axis, BivariatePoly


class PolynomialPair:
    """Evaluation and Jacobian of a pair of bivariate polynomials"""

    @property
    def components(self) -> tuple[BivariatePoly, BivariatePoly]:
        raise NotImplementedError

    @cached_property
    def partials(self) -> tuple[BivariatePoly, ...]:
        first, second = self.components
        return (
            first.partial(Axis.U),
            first.partial(Axis.V),
            second.partial(Axis.U),
            second.partial(Axis.V),
        )

    def __call__(self, u, v) -> np.ndarray:
        """Field values stacked on the last axis"""
        first, second = self.components
        return np.stack([first(u, v), second(u, v)], axis=-1)

    def jacobian(self, u, v) -> np.ndarray:
        """[[dF1/du, dF1/dv], [dF2/du, dF2/dv]], shape (..., 2, 2)"""
        a, b, c, e = (p(u, v) for p in self.partials)
        return np.stack(
            [np.stack([a, b], axis=-1), np.stack([c, e], axis=-1)],
            axis=-2,
        )


@dataclass(frozen=True)
class PlanarField(PolynomialPair):
    """Polynomial vector field u' = P(u, v), v' = Q(u, v)"""

    P: BivariatePoly
    Q: BivariatePoly

    def __post_init__(self):
        if self.d < 1:
            raise DomainError(
                "a planar field needs degree d >= 1, "
                f"got deg P={self.P.total_degree}, deg Q={self.Q.total_degree}"
            )

    @property
    def d(self) -> int:
        degree = max(self.P.total_degree, self.Q.total_degree)
        return int(degree) if degree >= 0 else -1

    @classmethod
    def linear(cls, a: float, b: float, c: float, e: float) -> PlanarField:
        """Field (a u + b v, c u + e v)"""
        return cls(
            BivariatePoly({(1, 0): a, (0, 1): b}),
            BivariatePoly({(1, 0): c, (0, 1): e}),
        )

    @property
    def components(self) -> tuple[BivariatePoly, BivariatePoly]:
        return self.P, self.Q

    def scaled(self, factor: float) -> PlanarField:
        return PlanarField(self.P * factor, self.Q * factor)

    def format(self, names: tuple[str, str] = ("u", "v")) -> tuple[str, str]:
        return self.P.format(names), self.Q.format(names)

    def to_json(self) -> dict:
        return {"d": self.d, "P": self.P.to_json(), "Q": self.Q.to_json()}


def jacobian(X: PlanarField, u: float, v: float) -> np.ndarray:
    return X.jacobian(u, v)

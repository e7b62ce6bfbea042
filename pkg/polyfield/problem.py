"""
Problem data of the PDE-ODE system and the limit field built from it.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import Any, Mapping

import numpy as np
from django.core.exceptions import ValidationError

from polyfield.fields import PlanarField
from polyfield.polynomials import Axis, BivariatePoly, UnivariatePoly

logger = logging.getLogger(__name__)

DIFFUSION_SAMPLES = 1001
NONLINEARITIES = ("f1", "f2", "g1", "g2")


@dataclass(frozen=True)
class ProblemSpec:
    """
    lam, beta: linear damping of the PDE and ODE components.
    f1, f2, g1, g2: polynomial nonlinearities.
    diffusion: base coefficient a(x); the family is a_eps(x) = a(x) / eps.
    relaxed_degrees: waive d - 1 >= deg g1 (resp. f1) when g1(0) = 0 (f1(0) = 0).
    """

    lam: float
    beta: float
    f1: UnivariatePoly = field(default_factory=UnivariatePoly.zero)
    f2: UnivariatePoly = field(default_factory=UnivariatePoly.zero)
    g1: UnivariatePoly = field(default_factory=UnivariatePoly.zero)
    g2: UnivariatePoly = field(default_factory=UnivariatePoly.zero)
    diffusion: UnivariatePoly = field(
        default_factory=lambda: UnivariatePoly((1.0,))
    )
    relaxed_degrees: bool = False

    @property
    def nonlinearities(self) -> dict[str, UnivariatePoly]:
        return {name: getattr(self, name) for name in NONLINEARITIES}

    @property
    def degree(self) -> int | float:
        return max(p.degree() for p in self.nonlinearities.values())

    @property
    def is_linear(self) -> bool:
        return all(p.is_zero() for p in self.nonlinearities.values())

    @property
    def field_degree(self) -> int:
        """Degree used for every compactification of this problem"""
        return 1 if self.is_linear else int(self.degree)

    def clean(self) -> None:
        """Raise ValidationError keyed by the offending field"""
        errors: dict[str, str] = {}
        if not self.lam > 0:
            errors["lambda"] = f"lambda > 0 fails: lambda={self.lam}"
        if not self.beta > 0:
            errors["beta"] = f"beta > 0 fails: beta={self.beta}"

        d = self.degree
        if self.is_linear and self.relaxed_degrees:
            pass
        elif d < 2:
            errors["degree"] = f"d - 2 >= 0 fails: d={_show(d)}"
        else:
            for name in ("g1", "f1"):
                poly = getattr(self, name)
                if poly.degree() <= d - 1:
                    continue
                if self.relaxed_degrees and poly(0.0) == 0.0:
                    continue
                message = (
                    f"d - 1 >= deg {name} fails: "
                    f"d={d}, deg {name}={poly.degree()}"
                )
                if self.relaxed_degrees:
                    message += f" and {name}(0) != 0"
                errors[name] = message

        samples = self.diffusion(np.linspace(0.0, 1.0, DIFFUSION_SAMPLES))
        samples = np.broadcast_to(samples, (DIFFUSION_SAMPLES,))
        if not np.all(samples > 0):
            errors["diffusion"] = (
                f"a(x) > 0 on [0, 1] fails: min a={float(np.min(samples)):g}"
            )
        if errors:
            raise ValidationError(errors)

    def diffusion_at(self, x, eps: float):
        return np.broadcast_to(self.diffusion(np.asarray(x, float)), np.shape(x)) / eps

    def tau(self, eps: float) -> float:
        """min over [0, 1] of a_eps, on the validation sample"""
        return float(np.min(self.diffusion_at(
            np.linspace(0.0, 1.0, DIFFUSION_SAMPLES), eps
        )))

    def with_relaxed_degrees(self, relaxed: bool = True) -> ProblemSpec:
        return replace(self, relaxed_degrees=relaxed)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> ProblemSpec:
        """Build from the validated JSON layout (ascending coefficient arrays)"""
        polys = {
            name: UnivariatePoly(tuple(data.get(name) or ()))
            for name in NONLINEARITIES
        }
        return cls(
            lam=float(data["lambda"]),
            beta=float(data["beta"]),
            diffusion=UnivariatePoly(tuple(data.get("diffusion") or (1.0,))),
            relaxed_degrees=bool(data.get("relaxed_degrees", False)),
            **polys,
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "lambda": self.lam,
            "beta": self.beta,
            **{name: p.to_list() for name, p in self.nonlinearities.items()},
            "diffusion": self.diffusion.to_list(),
            "relaxed_degrees": self.relaxed_degrees,
        }


def _show(degree: int | float) -> str:
    return "-inf" if degree < 0 else str(int(degree))


def limit_field(spec: ProblemSpec) -> PlanarField:
    """
    P0(u, v) = -lam u + f1(u) + g1(v)
    Q0(u, v) = -beta v + f2(u) + g2(v)
    """
    spec.clean()
    u, v = BivariatePoly.u(), BivariatePoly.v()
    P = (
        u * (-spec.lam)
        + BivariatePoly.from_univariate(spec.f1, Axis.U)
        + BivariatePoly.from_univariate(spec.g1, Axis.V)
    )
    Q = (
        v * (-spec.beta)
        + BivariatePoly.from_univariate(spec.f2, Axis.U)
        + BivariatePoly.from_univariate(spec.g2, Axis.V)
    )
    X = PlanarField(P, Q)
    logger.debug("limit field P0=%s, Q0=%s", *X.format())
    return X


def worked_example_spec() -> ProblemSpec:
    """lam = beta = 1, f1 = -u^2, g1 = v^2, f2 = u^2, g2 = v^2 + 2v, a = 1"""
    return ProblemSpec(
        lam=1.0,
        beta=1.0,
        f1=UnivariatePoly((0.0, 0.0, -1.0)),
        f2=UnivariatePoly((0.0, 0.0, 1.0)),
        g1=UnivariatePoly((0.0, 0.0, 1.0)),
        g2=UnivariatePoly((0.0, 2.0, 1.0)),
        relaxed_degrees=True,
    )

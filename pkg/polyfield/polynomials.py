"""
Sparse real polynomials in one and two variables.

Coefficients are floats, exponents are exact integers. Everything the chart
expansion needs (sums, products, derivatives, restriction to a line) is done
coefficient by coefficient, so integer-coefficient fields stay exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Mapping

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

ZERO_DEGREE = -math.inf
ROOT_RESIDUAL_TOL = 1e-9
ROOT_CLUSTER = 10.0


def _cluster(points: np.ndarray, multiplicity: int) -> list[np.ndarray]:
    """
    Single-linkage groups of companion eigenvalues. An m-fold root is
    perturbed by about eps^(1/m), so the linking radius is set by the
    largest multiplicity still expected.
    """
    radius = ROOT_CLUSTER * np.finfo(float).eps ** (1.0 / multiplicity)
    size = 1.0 + np.maximum.outer(np.abs(points), np.abs(points))
    linked = np.abs(points[:, None] - points[None, :]) <= radius * size
    count, labels = connected_components(csr_matrix(linked), directed=False)
    return [points[labels == k] for k in range(count)]


class Axis(str, Enum):
    U = "u"
    V = "v"


def _format_coefficient(value: float) -> str:
    if float(value).is_integer():
        return str(int(value))
    return format(value, ".12g")


@dataclass(frozen=True, eq=False)
class UnivariatePoly:
    """Polynomial c0 + c1 x + ... + cn x^n, trailing zeros trimmed"""

    coeffs: tuple[float, ...] = ()

    def __post_init__(self):
        values = [float(c) for c in self.coeffs]
        while values and values[-1] == 0.0:
            values.pop()
        object.__setattr__(self, "coeffs", tuple(values))

    @classmethod
    def zero(cls) -> UnivariatePoly:
        return cls(())

    @classmethod
    def monomial(cls, k: int, coefficient: float = 1.0) -> UnivariatePoly:
        return cls((0.0,) * k + (coefficient,))

    def __eq__(self, other):
        if not isinstance(other, UnivariatePoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UnivariatePoly({self.format()})"

    def degree(self) -> int | float:
        """Index of the last nonzero coefficient, -inf for the zero polynomial"""
        if not self.coeffs:
            return ZERO_DEGREE
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        result = 0.0
        for c in reversed(self.coeffs):
            result = result * x + c
        return result

    def __neg__(self) -> UnivariatePoly:
        return UnivariatePoly(tuple(-c for c in self.coeffs))

    def __add__(self, other: UnivariatePoly) -> UnivariatePoly:
        size = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0.0,) * (size - len(self.coeffs))
        b = other.coeffs + (0.0,) * (size - len(other.coeffs))
        return UnivariatePoly(tuple(x + y for x, y in zip(a, b)))

    def __sub__(self, other: UnivariatePoly) -> UnivariatePoly:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, UnivariatePoly):
            if self.is_zero() or other.is_zero():
                return UnivariatePoly.zero()
            product = [0.0] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    product[i + j] += a * b
            return UnivariatePoly(tuple(product))
        return UnivariatePoly(tuple(c * other for c in self.coeffs))

    __rmul__ = __mul__

    def derivative(self) -> UnivariatePoly:
        return UnivariatePoly(
            tuple(k * c for k, c in enumerate(self.coeffs) if k > 0)
        )

    def scaled_argument(self, factor: float) -> UnivariatePoly:
        """Return x -> p(factor * x)"""
        return UnivariatePoly(
            tuple(c * factor**k for k, c in enumerate(self.coeffs))
        )

    def magnitude(self, x: float) -> float:
        """Sum of |c_k| |x|^k, the scale against which p(x) is compared"""
        return float(sum(abs(c) * abs(x) ** k for k, c in enumerate(self.coeffs)))

    def _polish(self, x: float, steps: int = 8) -> float:
        # a Newton step is kept only while it lowers |p|
        slope = self.derivative()
        value = abs(self(x))
        for _ in range(steps):
            d = slope(x)
            if d == 0.0 or value == 0.0:
                break
            candidate = x - self(x) / d
            candidate_value = abs(self(candidate))
            if not candidate_value < value:
                break
            x, value = candidate, candidate_value
        return x

    def _is_root(self, x: float) -> bool:
        return abs(self(x)) <= ROOT_RESIDUAL_TOL * max(self.magnitude(x), np.finfo(float).tiny)

    def _group_root(self, group: np.ndarray, imag_tol: float) -> float | None:
        # an m-fold root is a simple root of the (m-1)-th derivative
        centre = complex(group.mean())
        if abs(centre.imag) > imag_tol * (1.0 + abs(centre)):
            return None
        simple = self
        for _ in range(len(group) - 1):
            simple = simple.derivative()
        x = simple._polish(centre.real)
        return x if self._is_root(x) else None

    def real_roots(self, imag_tol: float = 1e-9) -> tuple[float, ...]:
        """
        Real roots from the companion matrix.

        Eigenvalues that fan out around a multiple root are grouped first and
        a group of m values is replaced by one polished centroid. A group
        that does not collapse onto a root is split with the radius for m - 1
        and retried. Every returned root passes a residual test relative to
        the size of the terms, and roots closer than sqrt(eps) are merged.
        Constant polynomials have no roots (the zero polynomial included).
        """
        if self.degree() < 1:
            return ()
        found: list[float] = []
        pending = [(npoly.polyroots(np.asarray(self.coeffs)), int(self.degree()))]
        while pending:
            points, multiplicity = pending.pop()
            for group in _cluster(points, multiplicity):
                x = self._group_root(group, imag_tol)
                if x is not None:
                    found.append(x)
                elif len(group) > 1 and multiplicity > 1:
                    pending.append((group, multiplicity - 1))
                elif len(group) > 1:
                    pending.extend((group[k : k + 1], 1) for k in range(len(group)))
        roots: list[float] = []
        merge = math.sqrt(np.finfo(float).eps)
        for x in sorted(found):
            if not roots or abs(x - roots[-1]) > merge * (1.0 + abs(x)):
                roots.append(float(x))
        return tuple(roots)

    def to_list(self) -> list[float]:
        return list(self.coeffs)

    def format(self, var: str = "x") -> str:
        terms = [
            (k, c) for k, c in reversed(list(enumerate(self.coeffs))) if c
        ]
        return _join_terms(
            (c, var if k == 1 else f"{var}^{k}" if k else "") for k, c in terms
        )


def _join_terms(terms: Iterable[tuple[float, str]]) -> str:
    text = ""
    for coefficient, monomial in terms:
        sign = "-" if coefficient < 0 else "+"
        magnitude = abs(coefficient)
        if monomial and magnitude == 1.0:
            body = monomial
        elif monomial:
            body = f"{_format_coefficient(magnitude)}*{monomial}"
        else:
            body = _format_coefficient(magnitude)
        if not text:
            text = body if sign == "+" else f"-{body}"
        else:
            text += f" {sign} {body}"
    return text or "0"


@dataclass(frozen=True, eq=False)
class BivariatePoly:
    """Sparse map (i, j) -> c standing for the sum of c u^i v^j"""

    terms: Mapping[tuple[int, int], float] = MappingProxyType({})

    def __post_init__(self):
        clean: dict[tuple[int, int], float] = {}
        for (i, j), c in dict(self.terms).items():
            i, j, c = int(i), int(j), float(c)
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent ({i}, {j})")
            clean[(i, j)] = clean.get((i, j), 0.0) + c
        clean = {key: c for key, c in sorted(clean.items()) if c != 0.0}
        object.__setattr__(self, "terms", MappingProxyType(clean))

    @classmethod
    def zero(cls) -> BivariatePoly:
        return cls({})

    @classmethod
    def constant(cls, value: float) -> BivariatePoly:
        return cls({(0, 0): value})

    @classmethod
    def monomial(cls, i: int, j: int, coefficient: float = 1.0):
        return cls({(i, j): coefficient})

    @classmethod
    def u(cls) -> BivariatePoly:
        return cls.monomial(1, 0)

    @classmethod
    def v(cls) -> BivariatePoly:
        return cls.monomial(0, 1)

    @classmethod
    def from_univariate(cls, p: UnivariatePoly, axis: Axis) -> BivariatePoly:
        if axis == Axis.U:
            return cls({(k, 0): c for k, c in enumerate(p.coeffs)})
        return cls({(0, k): c for k, c in enumerate(p.coeffs)})

    def __eq__(self, other):
        if not isinstance(other, BivariatePoly):
            return NotImplemented
        return dict(self.terms) == dict(other.terms)

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __repr__(self):
        return f"BivariatePoly({self.format()})"

    @property
    def total_degree(self) -> int | float:
        if not self.terms:
            return ZERO_DEGREE
        return max(i + j for i, j in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, i: int, j: int) -> float:
        return self.terms.get((i, j), 0.0)

    def __neg__(self) -> BivariatePoly:
        return BivariatePoly({key: -c for key, c in self.terms.items()})

    def __add__(self, other: BivariatePoly) -> BivariatePoly:
        merged = dict(self.terms)
        for key, c in other.terms.items():
            merged[key] = merged.get(key, 0.0) + c
        return BivariatePoly(merged)

    def __sub__(self, other: BivariatePoly) -> BivariatePoly:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, BivariatePoly):
            product: dict[tuple[int, int], float] = {}
            for (i1, j1), a in self.terms.items():
                for (i2, j2), b in other.terms.items():
                    key = (i1 + i2, j1 + j2)
                    product[key] = product.get(key, 0.0) + a * b
            return BivariatePoly(product)
        return BivariatePoly({key: c * other for key, c in self.terms.items()})

    __rmul__ = __mul__

    def partial(self, axis: Axis) -> BivariatePoly:
        if axis == Axis.U:
            return BivariatePoly(
                {(i - 1, j): i * c for (i, j), c in self.terms.items() if i}
            )
        return BivariatePoly(
            {(i, j - 1): j * c for (i, j), c in self.terms.items() if j}
        )

    @cached_property
    def dense(self) -> np.ndarray:
        """Coefficient matrix C with C[i, j] the coefficient of u^i v^j"""
        if not self.terms:
            return np.zeros((1, 1))
        rows = max(i for i, _ in self.terms) + 1
        cols = max(j for _, j in self.terms) + 1
        matrix = np.zeros((rows, cols))
        for (i, j), c in self.terms.items():
            matrix[i, j] = c
        return matrix

    def __call__(self, u, v):
        """Horner evaluation in v for every power of u, then Horner in u"""
        u, v = np.broadcast_arrays(np.asarray(u, float), np.asarray(v, float))
        return npoly.polyval2d(u, v, self.dense)

    def restrict(self, axis: Axis, value: float) -> UnivariatePoly:
        """Fix the variable `axis` to `value`; return a polynomial in the other"""
        coeffs: dict[int, float] = {}
        for (i, j), c in self.terms.items():
            if axis == Axis.V:
                coeffs[i] = coeffs.get(i, 0.0) + c * value**j
            else:
                coeffs[j] = coeffs.get(j, 0.0) + c * value**i
        size = max(coeffs, default=-1) + 1
        return UnivariatePoly(tuple(coeffs.get(k, 0.0) for k in range(size)))

    def to_json(self) -> dict[str, float]:
        return {f"{i},{j}": c for (i, j), c in self.terms.items()}

    @classmethod
    def from_json(cls, data: Mapping[str, float]) -> BivariatePoly:
        terms = {}
        for key, c in data.items():
            i, j = (int(part) for part in key.split(","))
            terms[(i, j)] = c
        return cls(terms)

    def format(self, names: tuple[str, str] = ("u", "v")) -> str:
        def monomial(i: int, j: int) -> str:
            factors = []
            for name, power in zip(names, (i, j)):
                if power == 1:
                    factors.append(name)
                elif power > 1:
                    factors.append(f"{name}^{power}")
            return "*".join(factors)

        ordered = sorted(
            self.terms.items(), key=lambda item: (-sum(item[0]), -item[0][0])
        )
        return _join_terms((c, monomial(i, j)) for (i, j), c in ordered)


def evaluate(p: BivariatePoly, u: float, v: float) -> float:
    return float(p(u, v))


def partial(p: BivariatePoly, axis: Axis) -> BivariatePoly:
    return p.partial(axis)

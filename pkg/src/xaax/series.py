"""Truncated Taylor data for the scalar function f.

``TaylorSpec`` holds f as its zero ``alpha`` together with the Taylor
coefficients ``c_k = f^(k)(alpha)/k!`` for ``k >= 1``. Because every matrix
this package plugs into f has a one-point spectrum, truncating at order
``n - 1`` loses nothing.

Coefficient tuples are indexed from ``k = 1``: ``coeffs[0]`` is ``c_1``.
"""

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import FirstCoefficientZero
from .scalar import ONE, ZERO, as_scalar

__all__ = [
    "TaylorSpec",
    "series_reversion",
    "series_compose",
    "series_power",
    "log_coeffs",
    "exp_coeffs",
]


def log_coeffs(order):
    """Coefficients of log(1 + s): ``(-1)^(k-1)/k``."""
    return tuple(Fraction((-1) ** (k - 1), k) for k in range(1, order + 1))


def exp_coeffs(order):
    """Coefficients of exp(t) - 1: ``1/k!``."""
    return tuple(Fraction(1, math.factorial(k)) for k in range(1, order + 1))


@dataclass(frozen=True)
class TaylorSpec:
    alpha: object
    coeffs: tuple
    provenance: str = field(default="user", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_scalar(self.alpha))
        object.__setattr__(self, "coeffs", tuple(as_scalar(c) for c in self.coeffs))
        if not self.coeffs:
            raise ValueError("TaylorSpec needs at least one coefficient")

    @classmethod
    def log(cls, order):
        return cls(ONE, log_coeffs(max(order, 1)), provenance="log")

    @classmethod
    def monomial(cls, p, order=None):
        """f(x) = x^p about 0."""
        if p < 1:
            raise ValueError("monomial degree must be >= 1")
        order = p if order is None else max(order, 1)
        coeffs = tuple(ONE if k == p else ZERO for k in range(1, order + 1))
        return cls(ZERO, coeffs, provenance=f"monomial:{p}")

    @property
    def order(self):
        return len(self.coeffs)

    @property
    def is_flat(self):
        return not any(self.coeffs)

    @property
    def derivative(self):
        """f'(alpha)."""
        return self.coeffs[0]

    def coeff(self, k):
        return self.coeffs[k - 1] if 1 <= k <= len(self.coeffs) else ZERO

    def truncated(self, order):
        """Drop terms of degree > ``order`` (which vanish on an (order+1)-dim problem).

        Presets are infinite series, so cutting them is silent; discarding
        nonzero user-supplied terms triggers a warning.
        """
        order = max(order, 1)
        if len(self.coeffs) <= order:
            return self
        if self.provenance == "user" and any(self.coeffs[order:]):
            warnings.warn(
                f"coefficients beyond degree {order} are dropped "
                "(they act as zero on this problem size)", stacklevel=2)
        return TaylorSpec(self.alpha, self.coeffs[:order], provenance=self.provenance)


def _mul(a, b, order):
    # series without constant term, a[i] is the t^(i+1) coefficient
    out = [ZERO] * order
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            k = i + j + 1  # t^(i+1) * t^(j+1) = t^(k+1)
            if k >= order:
                break
            if y:
                out[k] += x * y
    return out


def series_power(s, k, order):
    """``s(t)^k`` truncated at ``t^order``; ``s`` has no constant term."""
    result = list(s[:order]) + [ZERO] * (order - len(s))
    for _ in range(k - 1):
        result = _mul(result, s, order)
    return tuple(result)


def series_compose(outer, inner, order):
    """Coefficients of ``outer(inner(t))`` for series without constant terms."""
    inner = list(inner[:order]) + [ZERO] * (order - len(inner))
    acc = [ZERO] * order
    power = inner
    for a in outer[:order]:
        if a:
            acc = [x + a * y for x, y in zip(acc, power)]
        power = _mul(power, inner, order)
    return tuple(acc)


def series_reversion(f0, coeffs):
    """Compositional inverse of ``f(t) = f0 + sum c_k t^k`` about ``f0``.

    Returns ``(g_1, ..., g_order)`` with ``g(f0 + s) = sum g_k s^k`` and
    ``g(f(t)) = t`` modulo ``t^(order+1)``. Solved order by order: the
    ``t^m`` coefficient of the composition is ``g_m c_1^m`` plus terms in
    earlier ``g_k``.
    """
    as_scalar(f0)  # the expansion point does not enter the coefficients
    c = tuple(as_scalar(x) for x in coeffs)
    order = len(c)
    if order == 0:
        return ()
    if not c[0]:
        raise FirstCoefficientZero("f'(0) = 0: the series has no compositional inverse")
    powers = [None] + [series_power(c, k, order) for k in range(1, order + 1)]
    g = [ZERO] * (order + 1)
    for m in range(1, order + 1):
        rhs = ONE if m == 1 else ZERO
        for k in range(1, m):
            if g[k]:
                rhs -= g[k] * powers[k][m - 1]
        g[m] = rhs / powers[m][m - 1]
    return tuple(g[1:])

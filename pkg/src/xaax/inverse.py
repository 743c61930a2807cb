"""The equation ``f(XA - AX) = X``.

When ``f'(0) != 0`` the local inverse ``g`` of ``f`` turns it into the
direct equation ``XA - AX = g(X)`` about ``alpha = f(0)``. When
``f'(0) = 0`` only two closed-form families are provided: the 3x3
solutions of ``(XA - AX)^2 = X`` and the 2x2 solutions of
``(XA - AX)^2 = X^2``, both for diagonal A.
"""

from dataclasses import dataclass, field

from .core import nilpotency_index
from .errors import NOT_INVERTIBLE, ConstraintViolation, PreconditionFailed, Unsupported
from .family import Slot, SolutionFamily
from .jordan import JordanStructure
from .matrix import Matrix, diag
from .regular import solve_regular
from .scalar import ONE, ZERO, as_scalar, format_scalar
from .series import TaylorSpec, exp_coeffs, series_reversion

__all__ = [
    "InverseSpec",
    "Dim3Params",
    "SquareParams",
    "reduce_inverse",
    "solve_inverse",
    "solve_exp",
    "dim3_family",
    "dim3_solution_family",
    "square_family",
    "kostant_check",
]


@dataclass(frozen=True)
class InverseSpec:
    """``f(t) = f0 + sum_k coeffs[k-1] t^k`` expanded about ``t = 0``."""

    f0: object
    coeffs: tuple
    provenance: str = field(default="user", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "f0", as_scalar(self.f0))
        object.__setattr__(self, "coeffs", tuple(as_scalar(c) for c in self.coeffs))
        if not self.coeffs:
            raise ValueError("InverseSpec needs at least one coefficient")

    @classmethod
    def exp(cls, order):
        return cls(ONE, exp_coeffs(max(order, 1)), provenance="exp")

    @classmethod
    def identity(cls):
        return cls(ZERO, (ONE,), provenance="identity")

    @classmethod
    def square(cls):
        return cls(ZERO, (ZERO, ONE), provenance="square")

    def coeff(self, k):
        return self.coeffs[k - 1] if 1 <= k <= len(self.coeffs) else ZERO

    def truncated(self, order):
        order = max(order, 1)
        if len(self.coeffs) <= order:
            return self
        return InverseSpec(self.f0, self.coeffs[:order], provenance=self.provenance)


def reduce_inverse(spec, n):
    """Direct-equation ``TaylorSpec`` equivalent to ``f(XA - AX) = X``, or
    ``NOT_INVERTIBLE`` when ``f'(0) = 0``."""
    spec = spec.truncated(max(n - 1, 1))
    if not spec.coeffs[0]:
        return NOT_INVERTIBLE
    provenance = "log" if spec.provenance == "exp" else "inverse"
    return TaylorSpec(spec.f0, series_reversion(spec.f0, spec.coeffs), provenance=provenance)


def solve_inverse(A, spec, eigenvalues=None):
    direct = reduce_inverse(spec, A.n)
    if direct is NOT_INVERTIBLE:
        raise Unsupported(
            "f'(0) = 0: only the dim3 and square closed-form families are available")
    return solve_regular(A, direct, eigenvalues)


def solve_exp(A, eigenvalues=None):
    """Solutions of ``exp(XA - AX) = X``; the same family as for ``XA - AX = log X``."""
    return solve_inverse(A, InverseSpec.exp(max(A.n - 1, 1)), eigenvalues)


# -- closed-form families ------------------------------------------------------

@dataclass(frozen=True)
class Dim3Params:
    u: object
    v: object
    w: object
    q: object
    r: object

    def __post_init__(self):
        for name in "uvwqr":
            object.__setattr__(self, name, as_scalar(getattr(self, name)))
        if len({self.u, self.v, self.w}) != 3:
            raise ConstraintViolation("u, v, w must be pairwise distinct")
        if not self.q or not self.r:
            raise ConstraintViolation("q and r must be nonzero")


@dataclass(frozen=True)
class SquareParams:
    u: object
    v: object
    a: object
    b: object
    c: object

    def __post_init__(self):
        for name in "uvabc":
            object.__setattr__(self, name, as_scalar(getattr(self, name)))
        if self.u == self.v:
            raise ConstraintViolation("u and v must differ")
        if self.residual():
            raise ConstraintViolation(
                f"a^2 + b*c*((u-v)^2 + 1) = {format_scalar(self.residual())}, must be 0")

    def residual(self):
        d = self.u - self.v
        return self.a * self.a + self.b * self.c * (d * d + 1)


def dim3_family(p):
    """Nonzero solution of ``(XA - AX)^2 = X`` for ``A = diag(u, v, w)``."""
    u, v, w, q, r = p.u, p.v, p.w, p.q, p.r
    uv, vw, wu = u - v, v - w, w - u
    return Matrix([
        [1 / (wu * uv), q, q * r * uv * vw],
        [1 / (q * uv * uv * vw * wu), 1 / (uv * vw), r],
        [1 / (q * r * uv * uv * vw * vw * wu * wu), 1 / (r * vw * vw * wu * uv), 1 / (vw * wu)],
    ])


def dim3_solution_family(u, v, w):
    """:func:`dim3_family` as a two-parameter family in ``(q, r)``."""
    u, v, w = (as_scalar(x) for x in (u, v, w))
    Dim3Params(u, v, w, 1, 1)  # validates distinctness

    def check(values):
        q, r = values
        return [f"{name} must be nonzero" for name, x in (("q", q), ("r", r)) if not as_scalar(x)]

    return SolutionFamily(
        kind="inverse-special",
        A=diag(u, v, w),
        alpha=ZERO,
        slots=(Slot(0, ((1, 2), (2, 3)), ("x[1,2] != 0", "x[2,3] != 0")),),
        assembly=JordanStructure(((u, 1), (v, 1), (w, 1))),
        builder=lambda values: dim3_family(Dim3Params(u, v, w, *values)),
        checker=check,
    )


def square_family(p):
    """``[[a, b], [c, -a]]``, a solution of ``(XA - AX)^2 = X^2`` for ``A = diag(u, v)``."""
    return Matrix([[p.a, p.b], [p.c, -p.a]])


def kostant_check(N, A):
    """Whether ``NA`` and ``AN`` are both nilpotent, for nilpotent ``N``
    commuting with ``NA - AN``."""
    if nilpotency_index(N) is None:
        raise PreconditionFailed("N is not nilpotent")
    Y = N @ A - A @ N
    if N @ Y != Y @ N:
        raise PreconditionFailed("N does not commute with NA - AN")
    return nilpotency_index(N @ A) is not None and nilpotency_index(A @ N) is not None

"""Exact residual checks and invariant probes for candidate solutions.

Everything here is recomputed from ``(A, X, f)`` with plain matrix powers;
no solver code is called, so a solver bug cannot hide behind a shared
helper.
"""

from dataclasses import dataclass

from .linsolve import nullspace
from .matrix import identity, zeros
from .scalar import as_scalar, format_scalar

__all__ = ["Check", "VerificationReport", "verify_direct", "verify_inverse", "verify_mixed"]


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    residual_zero: bool
    spectrum_point: object
    nilpotency_index_of_N: object
    checks: tuple

    @property
    def all_pass(self):
        return self.residual_zero and all(c.passed for c in self.checks)

    def failed(self):
        return [c.name for c in self.checks if not c.passed]

    def to_json(self):
        return {
            "residual_zero": self.residual_zero,
            "all_pass": self.all_pass,
            "spectrum_point": None if self.spectrum_point is None
            else format_scalar(self.spectrum_point),
            "nilpotency_index_of_N": self.nilpotency_index_of_N,
            "checks": [{"name": c.name, "pass": c.passed, "detail": c.detail}
                       for c in self.checks],
        }


def _powers(M, upto):
    """``[I, M, M^2, ..., M^upto]``."""
    out = [identity(M.n)]
    for _ in range(upto):
        out.append(out[-1] @ M)
    return out


def _index(M):
    n = M.n
    P = M
    for k in range(1, n + 1):
        if P.is_zero():
            return k
        P = P @ M
    return None


def _series_at(coeffs, pw, constant=0):
    n = pw[0].n
    acc = identity(n).scale(constant) if as_scalar(constant) else zeros(n)
    for k, c in enumerate(coeffs, start=1):
        if k >= len(pw):
            break
        if c:
            acc = acc + pw[k].scale(c)
    return acc


def _kernel_invariance(N, A, upto):
    bad = []
    P = N
    for j in range(1, upto + 1):
        for v in nullspace(P):
            if any(P.apply(A.apply(v))):
                bad.append(j)
                break
        P = P @ N
    return bad


def _eigenspace_invariance(A, X, eigenvalues):
    n = A.n
    bad = []
    for lam in eigenvalues:
        B = A.shift(-as_scalar(lam)) ** n
        for v in nullspace(B):
            if any(B.apply(X.apply(v))):
                bad.append(format_scalar(lam))
                break
    return bad


def verify_direct(A, X, spec, eigenvalues=None):
    """Check ``XA - AX = f(X)`` exactly, plus consequences of it."""
    n = A.n
    alpha = spec.alpha
    N = X - identity(n).scale(alpha)
    idx = _index(N)
    if idx is None:
        return VerificationReport(False, None, None, (
            Check("spectrum-point", False, f"X - {format_scalar(alpha)}*I is not nilpotent"),))
    pw = _powers(N, n)
    fX = _series_at(spec.coeffs[:n - 1], pw)
    C = X @ A - A @ X
    residual_zero = C == fX
    checks = [Check("spectrum-point", True, f"sigma(X) = {{{format_scalar(alpha)}}}")]

    xpw = _powers(X, n)
    bad = [i for i in range(1, n + 1)
           if xpw[i] @ A - A @ xpw[i] != (xpw[i - 1] @ fX).scale(i)]
    checks.append(Check("power-relation-X", not bad,
                        "X^i A - A X^i = i X^(i-1) f(X) for i = 1..n"
                        + (f"; fails at i = {bad}" if bad else "")))
    bad = [i for i in range(1, n + 1)
           if pw[i] @ A - A @ pw[i] != (pw[i - 1] @ fX).scale(i)]
    checks.append(Check("power-relation-N", not bad,
                        "N^i A - A N^i = i N^(i-1) f(X) for i = 1..n"
                        + (f"; fails at i = {bad}" if bad else "")))
    bad = _kernel_invariance(N, A, idx)
    checks.append(Check("kernel-invariance", not bad,
                        "A ker(N^j) within ker(N^j)" + (f"; fails at j = {bad}" if bad else "")))
    cidx = _index(C)
    checks.append(Check("commutator-nilpotent", cidx is not None,
                        f"index {cidx}" if cidx is not None else "XA - AX is not nilpotent"))
    if eigenvalues is None and A.is_upper_triangular():
        eigenvalues = list(dict.fromkeys(A.diagonal()))
    if not spec.coeff(1) and eigenvalues is not None:
        bad = _eigenspace_invariance(A, X, eigenvalues)
        checks.append(Check("eigenspace-invariance", not bad,
                            "X preserves every generalized eigenspace of A"
                            + (f"; fails for {bad}" if bad else "")))
    return VerificationReport(residual_zero, alpha, idx, tuple(checks))


def verify_inverse(A, X, spec):
    """Check ``f(XA - AX) = X`` exactly, plus the nilpotency probes."""
    n = A.n
    C = X @ A - A @ X
    cidx = _index(C)
    if cidx is None:
        return VerificationReport(False, None, None, (
            Check("commutator-nilpotent", False, "XA - AX is not nilpotent"),))
    pw = _powers(C, n)
    fC = _series_at(spec.coeffs[:n - 1], pw, spec.f0)
    residual_zero = fC == X
    checks = [Check("commutator-nilpotent", True, f"index {cidx}")]
    N = X - identity(n).scale(spec.f0)
    idx = _index(N)
    checks.append(Check("spectrum-point", idx is not None,
                        f"sigma(X) = {{{format_scalar(spec.f0)}}}" if idx is not None
                        else f"X - {format_scalar(spec.f0)}*I is not nilpotent"))
    if idx is not None:
        Y = N @ A - A @ N
        if N @ Y != Y @ N:
            checks.append(Check("kostant", False, "N does not commute with NA - AN"))
        else:
            ok = _index(N @ A) is not None and _index(A @ N) is not None
            checks.append(Check("kostant", ok, "NA and AN nilpotent" if ok
                                else "NA or AN is not nilpotent"))
    return VerificationReport(residual_zero, spec.f0 if idx is not None else None, idx,
                              tuple(checks))


def _poly_at(coeffs, M):
    """``sum_k coeffs[k] M^k`` with ``coeffs[0]`` the constant term."""
    pw = _powers(M, max(len(coeffs) - 1, 0))
    acc = zeros(M.n)
    for c, P in zip(coeffs, pw):
        c = as_scalar(c)
        if c:
            acc = acc + P.scale(c)
    return acc


def verify_mixed(A, X, lhs, rhs):
    """Check ``p(XA - AX) = q(X)`` for polynomial coefficient lists ``lhs``, ``rhs``
    (constant term first)."""
    C = X @ A - A @ X
    residual_zero = _poly_at(lhs, C) == _poly_at(rhs, X)
    return VerificationReport(residual_zero, None, _index(X), ())

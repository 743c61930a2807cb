"""Commutators, nilpotency, false diagonals and exact evaluation of f(X)."""

from .errors import (DimensionMismatch, IndexOutOfRange, NotStrictlyUpper,
                     SpectrumNotPoint, SpectrumRequired)
from .matrix import zeros
from .scalar import as_scalar

__all__ = [
    "commutator",
    "nilpotency_index",
    "false_diagonal",
    "eval_f",
    "eval_poly",
    "spectrum_from_input",
]


def commutator(X, A):
    """``XA - AX``."""
    if X.shape != A.shape or not X.is_square():
        raise DimensionMismatch(f"commutator needs equal square shapes, got {X.shape}, {A.shape}")
    return X @ A - A @ X


def nilpotency_index(M):
    """Smallest ``k`` with ``M^k = 0``, or ``None`` if ``M`` is not nilpotent."""
    n = M.n
    if M.is_zero():
        return 0 if n == 0 else 1
    power = M
    for k in range(2, n + 1):
        power = power @ M
        if power.is_zero():
            return k
    return None


def false_diagonal(M, i):
    """``(m[1,1+i], ..., m[n-i,n])`` of a strictly upper triangular matrix."""
    n = M.n
    if not M.is_strictly_upper():
        raise NotStrictlyUpper("false diagonals are defined for strictly upper triangular matrices")
    if not 1 <= i <= n - 1:
        raise IndexOutOfRange(f"false diagonal index must lie in 1..{n - 1}, got {i}")
    return tuple(M[r, r + i] for r in range(n - i))


def eval_poly(coeffs, N, constant=0):
    """``constant*I + sum_k coeffs[k-1] N^k`` by Horner's rule."""
    n = N.n
    acc = zeros(n)
    for c in reversed(coeffs):
        acc = acc.shift(c) @ N
    return acc.shift(constant) if as_scalar(constant) else acc


def eval_f(spec, X):
    """f(X) for ``X`` whose spectrum is the single point ``spec.alpha``.

    With ``N = X - alpha*I`` nilpotent, f(X) equals the Taylor polynomial
    ``sum_{k<n} c_k N^k`` exactly.
    """
    n = X.n
    N = X.shift(-spec.alpha)
    if n and nilpotency_index(N) is None:
        raise SpectrumNotPoint(
            f"X - {spec.alpha}*I is not nilpotent; f(X) would need the contour definition")
    return eval_poly(spec.coeffs[:max(n - 1, 0)], N)


def spectrum_from_input(A, eigenvalues=None):
    """Distinct eigenvalue candidates: the supplied list, else the diagonal of a
    triangular ``A``. Order of first appearance is kept."""
    if eigenvalues is None:
        if not A.is_upper_triangular():
            raise SpectrumRequired("A is not upper triangular; supply its eigenvalues")
        eigenvalues = A.diagonal()
    out = []
    for lam in eigenvalues:
        lam = as_scalar(lam)
        if lam not in out:
            out.append(lam)
    return out

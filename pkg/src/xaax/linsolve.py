"""Exact linear systems over Q(i).

Rows are first cleared of denominators, then reduced by fraction-free
(Bareiss) forward elimination so intermediate entries stay integral; only
the final back-substitution divides.
"""

import math
from fractions import Fraction
from typing import NamedTuple

from .errors import DimensionMismatch, INCONSISTENT
from .matrix import Matrix, identity
from .scalar import ONE, ZERO, GaussianRational, as_scalar

__all__ = [
    "LinearSolution",
    "echelon",
    "rref",
    "linear_solve",
    "nullspace",
    "rank",
    "inverse",
    "in_span",
]


class LinearSolution(NamedTuple):
    particular: tuple
    kernel_basis: tuple
    # free_columns[t] is the unknown set to 1 in kernel_basis[t]
    free_columns: tuple


def _denominator(x):
    if isinstance(x, GaussianRational):
        return math.lcm(x.re.denominator, x.im.denominator)
    return x.denominator


def _clear_denominators(row):
    d = 1
    for x in row:
        if x:
            d = math.lcm(d, _denominator(x))
    if d == 1:
        return list(row)
    scale = Fraction(d)
    return [x * scale for x in row]


def echelon(rows, ncols):
    """Fraction-free forward elimination.

    Returns ``(rows, pivot_columns)`` where ``rows`` is a row echelon form
    (nonzero rows only) with entries in Z[i] whenever the input was.
    """
    work = [_clear_denominators(r) for r in rows]
    m = len(work)
    prev = ONE
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        piv = next((i for i in range(r, m) if work[i][c]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        prow = work[r]
        p = prow[c]
        for i in range(r + 1, m):
            row = work[i]
            a = row[c]
            if a:
                for j in range(c + 1, len(row)):
                    row[j] = (p * row[j] - a * prow[j]) / prev
            else:
                for j in range(c + 1, len(row)):
                    if row[j]:
                        row[j] = (p * row[j]) / prev
            row[c] = ZERO
        prev = p
        pivots.append(c)
        r += 1
    return work[:r], pivots


def rref(rows, ncols):
    """Reduced row echelon form: unit pivots, zeros above and below."""
    ech, pivots = echelon(rows, ncols)
    ech = [list(r) for r in ech]
    for k in range(len(pivots) - 1, -1, -1):
        c = pivots[k]
        row = ech[k]
        p = row[c]
        if p != ONE:
            inv = ONE / p
            ech[k] = row = [x * inv if x else ZERO for x in row]
        for i in range(k):
            a = ech[i][c]
            if a:
                ech[i] = [x - a * y if y else x for x, y in zip(ech[i], row)]
    return ech, pivots


def linear_solve(M, b):
    """Solve ``M x = b`` exactly.

    Returns a :class:`LinearSolution` or the ``INCONSISTENT`` marker when
    ``b`` is outside the range of ``M``.
    """
    b = tuple(as_scalar(x) for x in b)
    if len(b) != M.nrows:
        raise DimensionMismatch("right-hand side length does not match row count")
    n = M.ncols
    aug = [list(r) + [bi] for r, bi in zip(M.rows(), b)]
    red, pivots = rref(aug, n + 1)
    if pivots and pivots[-1] == n:
        return INCONSISTENT
    particular = [ZERO] * n
    for k, c in enumerate(pivots):
        particular[c] = red[k][n]
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    basis = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for k, c in enumerate(pivots):
            a = red[k][f]
            if a:
                v[c] = -a
        basis.append(tuple(v))
    return LinearSolution(tuple(particular), tuple(basis), tuple(free))


def nullspace(M):
    """Kernel basis of ``M`` (one vector per free column, in column order)."""
    return linear_solve(M, [ZERO] * M.nrows).kernel_basis


def rank(M):
    return len(echelon(M.rows(), M.ncols)[1])


def inverse(M):
    n = M.n
    aug = [list(r) + list(e) for r, e in zip(M.rows(), identity(n).rows())]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return Matrix._raw([row[n:] for row in red[:n]], n, n)


def in_span(vectors, v):
    """True iff ``v`` lies in the span of ``vectors``."""
    v = tuple(as_scalar(x) for x in v)
    if not any(v):
        return True
    if not vectors:
        return False
    M = Matrix.from_columns(vectors)
    return linear_solve(M, v) is not INCONSISTENT

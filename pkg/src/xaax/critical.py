"""Solutions of ``XA - AX = f(X)`` when ``f'(alpha) = 0`` and A is non derogatory.

Writing ``t = x - alpha`` the equation becomes ``NA - AN = N^p g(N)`` with
``g(0) != 0``. On a Jordan block ``J_m`` every nilpotent solution is strictly
upper triangular and fixed by its last column; the remaining entries follow
false diagonal by false diagonal, each from one affine scalar equation.
"""

from dataclasses import dataclass

from .errors import (ConstraintViolation, DerogatoryInput, FLAT, NOT_CRITICAL,
                     NotCriticalError, PivotFailure, ShapeMismatch)
from .family import Slot, SolutionFamily
from .jordan import JordanStructure, generalized_eigenspaces, jordan_structure
from .linsolve import INCONSISTENT, linear_solve, nullspace
from .matrix import Matrix, block_diag, jordan_block, zeros
from .scalar import ONE, ZERO, as_scalar, format_scalar

__all__ = [
    "CriticalForm",
    "Existence",
    "derive_critical_form",
    "existence_check",
    "witness_solution",
    "solve_jordan_block",
    "commutant_nilpotents",
    "critical_family",
    "solve_nonderogatory",
    "generalized_eigenspaces_preserved",
]


@dataclass(frozen=True)
class CriticalForm:
    p: int
    g_coeffs: tuple
    k2: object

    def __post_init__(self):
        if self.p < 2:
            raise ValueError("critical form needs valuation p >= 2")
        if not self.g_coeffs or not self.g_coeffs[0]:
            raise ValueError("g(0) must be nonzero")

    def h_coeff(self, s):
        """Coefficient of ``t^s`` in ``t^p g(t)``."""
        i = s - self.p
        return self.g_coeffs[i] if 0 <= i < len(self.g_coeffs) else ZERO


def derive_critical_form(spec, n):
    """``CriticalForm``, or the ``NOT_CRITICAL`` / ``FLAT`` markers."""
    spec = spec.truncated(max(n - 1, 1))
    c = spec.coeffs
    if not any(c):
        return FLAT
    if c[0]:
        return NOT_CRITICAL
    p = next(k for k, ck in enumerate(c, start=1) if ck)
    g = list(c[p - 1:])
    while len(g) > 1 and not g[-1]:
        g.pop()
    return CriticalForm(p, tuple(g), g[0] if p == 2 else ZERO)


@dataclass(frozen=True)
class Existence:
    nontrivial: bool
    witness: tuple = None


def existence_check(spectrum, spec):
    """Nonzero ``N`` exists iff two spectrum entries (distinct positions of the
    multiset) differ by ``f'(alpha)``."""
    lams = [as_scalar(x) for x in spectrum]
    d = spec.coeff(1)
    for i, lam in enumerate(lams):
        for j, mu in enumerate(lams):
            if i != j and lam - mu == d:
                return Existence(True, (lam, mu))
    return Existence(False)


def witness_solution(A, spec, witness):
    """Rank-one solution ``alpha*I + v w^T`` for a witness ``(lam, mu)``.

    ``v`` is a right eigenvector for ``mu`` and ``w`` a left eigenvector for
    ``lam`` with ``w.v = 0``, so ``N = v w^T`` has ``N^2 = 0`` and
    ``NA - AN = (lam - mu) N = f'(alpha) N = f(alpha*I + N)``.
    Returns ``None`` if no such pair exists.
    """
    lam, mu = (as_scalar(x) for x in witness)
    n = A.n
    right = nullspace(A.shift(-mu))
    left = nullspace(A.T.shift(-lam))
    for v in right:
        pairing = Matrix([[sum((a * b for a, b in zip(w, v)), ZERO) for w in left]])
        if left and not pairing.is_zero():
            coords = nullspace(pairing)
        else:
            coords = [tuple(ONE if t == s else ZERO for t in range(len(left)))
                      for s in range(len(left))]
        for a in coords:
            w = [sum((c * wt[k] for c, wt in zip(a, left)), ZERO) for k in range(n)]
            if any(w):
                N = Matrix._raw([[vi * wj for wj in w] for vi in v], n, n)
                return N.shift(spec.alpha)
    return None


def _check_condition(m, k2, x_last, block=None):
    where = f" (block {block})" if block is not None else ""
    for i in range(1, m - 1):
        if ONE - i * k2 * x_last == 0:
            raise ConstraintViolation(
                f"1 - {i}*k*x[{m - 1},{m}] = 0 with k = {format_scalar(k2)}, "
                f"x[{m - 1},{m}] = {format_scalar(x_last)}{where}")


def solve_jordan_block(m, form, last_column, block=None):
    """The nilpotent solution of ``X J_m - J_m X = X^p g(X)`` with the given
    last column ``(x[1,m], ..., x[m-1,m])``.

    ``form=None`` means the right side vanishes (commutant of ``J_m``).
    Unknowns are taken false diagonal by false diagonal, rows bottom-up; the
    entry ``x[i, i+D]`` enters its equation only through the quadratic term,
    with coefficient ``k * x[i+D, i+D+1]``.
    """
    last = [as_scalar(v) for v in last_column]
    if len(last) != max(m - 1, 0):
        raise ShapeMismatch(f"block of size {m} needs {m - 1} last-column entries")
    if m == 1:
        return zeros(1)
    x = [[ZERO] * m for _ in range(m)]
    for i, v in enumerate(last):
        x[i][m - 1] = v
    h = {}
    if form is not None:
        h = {s: form.h_coeff(s) for s in range(form.p, m)}
        h = {s: c for s, c in h.items() if c}
    k = h.get(2, ZERO)
    if k:
        _check_condition(m, k, last[-1], block)
    top = max(h, default=0)
    # powers[q] holds X^q on the false diagonals computed so far
    powers = {1: x}
    for q in range(2, top):
        powers[q] = [[ZERO] * m for _ in range(m)]
    for D in range(1, m - 1):
        for q in range(2, top):
            if q > D:
                break
            prev, cur = powers[q - 1], powers[q]
            for a in range(m - D):
                b = a + D
                row = x[a]
                acc = ZERO
                for t in range(a + 1, b):
                    u = row[t]
                    if u:
                        w = prev[t][b]
                        if w:
                            acc += u * w
                cur[a][b] = acc
        for i in range(m - D - 2, -1, -1):
            j = i + D + 1
            row = x[i]
            rest = ZERO
            for s, c in h.items():
                prev = powers[s - 1]
                acc = ZERO
                stop = j - 1 if s == 2 else j  # skip the unknown x[i][i+D] * x[i+D][j]
                for t in range(i + 1, stop):
                    u = row[t]
                    if u:
                        w = prev[t][j]
                        if w:
                            acc += u * w
                if acc:
                    rest += c * acc
            pivot = ONE - k * x[i + D][j] if k else ONE
            if not pivot:
                raise PivotFailure(i + 1, D, block)
            value = x[i + 1][j] + rest
            row[i + D] = value / pivot if pivot != ONE else value
    return Matrix._raw(x, m, m)


def _last_column_slot(block, offset, m, constraints=()):
    return Slot(block, tuple((offset + i, offset + m) for i in range(1, m)), tuple(constraints))


def commutant_nilpotents(m):
    """Nilpotent matrices commuting with ``J_m``: strictly upper triangular
    Toeplitz matrices, parameterized by their last column."""
    J = jordan_block(m)
    return SolutionFamily(
        kind="commutant",
        A=J,
        alpha=ZERO,
        slots=(_last_column_slot(0, 0, m),) if m > 1 else (),
        assembly=JordanStructure(((ZERO, m),)),
        builder=lambda values: solve_jordan_block(m, None, values),
    )


def _condition_text(m, k2, offset):
    r, c = offset + m - 1, offset + m
    return f"1 - i*({format_scalar(k2)})*x[{r},{c}] != 0 for i = 1..{m - 2}"


def critical_family(A, spec, eigenvalues=None):
    """All solutions of ``XA - AX = f(X)`` (``f'(alpha) = 0``, A non derogatory)."""
    n = A.n
    form = derive_critical_form(spec, n)
    if form is NOT_CRITICAL:
        raise NotCriticalError("f'(alpha) != 0: use the regular solver")
    form = None if form is FLAT else form
    js = jordan_structure(A, eigenvalues)
    if not js.non_derogatory:
        raise DerogatoryInput(
            "A is derogatory; the critical case is only solved for non derogatory A")
    slots = []
    plan = []
    for b, ((lam, m), off) in enumerate(zip(js.blocks, js.offsets())):
        active = form if form is not None and form.p < m else None
        constraints = ()
        if active is not None and active.k2 and m >= 3:
            constraints = (_condition_text(m, active.k2, off),)
        if m > 1:
            slots.append(_last_column_slot(b, off, m, constraints))
        plan.append((b, m, active))

    alpha = spec.alpha

    def split(values):
        out, pos = [], 0
        for b, m, active in plan:
            out.append(values[pos:pos + m - 1])
            pos += m - 1
        return out

    def build(values):
        blocks = []
        for (b, m, active), col in zip(plan, split(values)):
            blocks.append(solve_jordan_block(m, active, col, block=b))
        return js.from_jordan_basis(block_diag(*blocks)).shift(alpha)

    def check(values):
        bad = []
        for (b, m, active), col in zip(plan, split(values)):
            if active is None or not active.k2 or m < 3:
                continue
            try:
                _check_condition(m, active.k2, as_scalar(col[-1]), b)
            except ConstraintViolation as exc:
                bad.append(str(exc))
        return bad

    kind = "commutant" if form is None else "critical-nonderogatory"
    return SolutionFamily(kind, A, alpha, tuple(slots), js, form, build, check)


def solve_nonderogatory(A, spec, per_block_last_columns=None, eigenvalues=None):
    """Instantiate :func:`critical_family`; missing blocks get a zero column."""
    family = critical_family(A, spec, eigenvalues)
    per_block_last_columns = per_block_last_columns or {}
    values = []
    for b, (lam, m) in enumerate(family.assembly.blocks):
        col = per_block_last_columns.get(b)
        if col is None:
            col = [ZERO] * (m - 1)
        if len(col) != m - 1:
            raise ShapeMismatch(f"block {b} has size {m}: needs {m - 1} entries")
        values.extend(col)
    return family.instantiate(values), family


def generalized_eigenspaces_preserved(A, X, eigenvalues=None):
    """True iff ``X`` maps each generalized eigenspace of ``A`` into itself."""
    dec = generalized_eigenspaces(A, eigenvalues)
    for _, basis, _ in dec.spaces:
        M = Matrix.from_columns(basis)
        for v in basis:
            if linear_solve(M, X.apply(v)) is INCONSISTENT:
                return False
    return True

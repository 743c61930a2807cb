"""Dense exact matrices over Q(i).

Matrices are immutable: rows are stored as tuples of canonical scalars and
every operation returns a new object. Indexing is 0-based; the 1-based
(row, col) convention only appears in serialized family descriptions.
"""

from .errors import DimensionMismatch, ShapeMismatch
from .scalar import ONE, ZERO, as_scalar, format_scalar

__all__ = ["Matrix", "identity", "zeros", "jordan_block", "diag", "block_diag"]


class Matrix:
    __slots__ = ("_rows", "nrows", "ncols", "_hash")

    def __init__(self, rows):
        rows = tuple(tuple(as_scalar(x) for x in row) for row in rows)
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ShapeMismatch("ragged rows")
        self._set(rows, len(rows), ncols)

    def _set(self, rows, nrows, ncols):
        object.__setattr__(self, "_rows", rows)
        object.__setattr__(self, "nrows", nrows)
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, rows, nrows=None, ncols=None):
        # rows must already hold canonical scalars
        m = object.__new__(cls)
        rows = tuple(tuple(r) for r in rows)
        if nrows is None:
            nrows = len(rows)
            ncols = len(rows[0]) if rows else 0
        m._set(rows, nrows, ncols)
        return m

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # -- shape & access -------------------------------------------------

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def n(self):
        if self.nrows != self.ncols:
            raise ShapeMismatch(f"matrix is {self.nrows}x{self.ncols}, not square")
        return self.nrows

    def is_square(self):
        return self.nrows == self.ncols

    def __getitem__(self, idx):
        i, j = idx
        return self._rows[i][j]

    def row(self, i):
        return self._rows[i]

    def column(self, j):
        return tuple(r[j] for r in self._rows)

    def rows(self):
        return self._rows

    def to_lists(self):
        return [list(r) for r in self._rows]

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    @classmethod
    def from_columns(cls, cols, nrows=None):
        cols = [tuple(as_scalar(x) for x in c) for c in cols]
        if not cols:
            return zeros(nrows or 0, 0)
        return cls._raw(zip(*cols))

    def submatrix(self, r0, r1, c0, c1):
        return Matrix._raw([row[c0:c1] for row in self._rows[r0:r1]],
                           r1 - r0, c1 - c0)

    def diagonal(self):
        return tuple(self._rows[i][i] for i in range(min(self.shape)))

    @property
    def T(self):
        return Matrix._raw(zip(*self._rows), self.ncols, self.nrows) if self.nrows else self

    # -- predicates -----------------------------------------------------

    def is_zero(self):
        return not any(x for r in self._rows for x in r)

    def is_upper_triangular(self):
        return all(not self._rows[i][j]
                   for i in range(self.nrows) for j in range(min(i, self.ncols)))

    def is_strictly_upper(self):
        return all(not self._rows[i][j]
                   for i in range(self.nrows) for j in range(min(i + 1, self.ncols)))

    # -- arithmetic -----------------------------------------------------

    def _check_same(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_same(other)
        return Matrix._raw([[a + b for a, b in zip(r, s)]
                            for r, s in zip(self._rows, other._rows)],
                           self.nrows, self.ncols)

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_same(other)
        return Matrix._raw([[a - b for a, b in zip(r, s)]
                            for r, s in zip(self._rows, other._rows)],
                           self.nrows, self.ncols)

    def __neg__(self):
        return Matrix._raw([[-a for a in r] for r in self._rows], self.nrows, self.ncols)

    def scale(self, c):
        c = as_scalar(c)
        return Matrix._raw([[c * a for a in r] for r in self._rows], self.nrows, self.ncols)

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise DimensionMismatch(
                f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}")
        orows = other._rows
        p = other.ncols
        out = []
        for r in self._rows:
            acc = [ZERO] * p
            for a, orow in zip(r, orows):
                if a:
                    for j, b in enumerate(orow):
                        if b:
                            acc[j] += a * b
            out.append(acc)
        return Matrix._raw(out, self.nrows, p)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return self @ other
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __truediv__(self, other):
        c = as_scalar(other)
        return self.scale(ONE / c)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = identity(self.n)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def apply(self, vec):
        """Matrix-vector product."""
        if len(vec) != self.ncols:
            raise DimensionMismatch("vector length does not match column count")
        out = []
        for r in self._rows:
            acc = ZERO
            for a, b in zip(r, vec):
                if a and b:
                    acc += a * b
            out.append(acc)
        return tuple(out)

    def trace(self):
        return sum(self.diagonal(), ZERO)

    def shift(self, lam):
        """``self + lam * I``."""
        lam = as_scalar(lam)
        n = self.n
        return Matrix._raw([[a + lam if i == j else a for j, a in enumerate(r)]
                            for i, r in enumerate(self._rows)], n, n)

    # -- equality & display ---------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.shape, self._rows)))
        return self._hash

    def __repr__(self):
        body = ", ".join("[" + ", ".join(format_scalar(x) for x in r) + "]"
                         for r in self._rows)
        return f"Matrix([{body}])"

    def __str__(self):
        cells = [[format_scalar(x) for x in r] for r in self._rows]
        if not cells:
            return "[]"
        width = max(len(c) for r in cells for c in r)
        return "\n".join("[" + " ".join(c.rjust(width) for c in r) + "]" for r in cells)


def zeros(nrows, ncols=None):
    ncols = nrows if ncols is None else ncols
    return Matrix._raw([[ZERO] * ncols for _ in range(nrows)], nrows, ncols)


def identity(n):
    return Matrix._raw([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], n, n)


def jordan_block(m, eigenvalue=0):
    """``eigenvalue*I_m + J_m`` with ones on the superdiagonal."""
    lam = as_scalar(eigenvalue)
    return Matrix._raw([[lam if i == j else (ONE if j == i + 1 else ZERO)
                         for j in range(m)] for i in range(m)], m, m)


def diag(*values):
    vals = [as_scalar(v) for v in values]
    n = len(vals)
    return Matrix._raw([[vals[i] if i == j else ZERO for j in range(n)] for i in range(n)], n, n)


def block_diag(*blocks):
    n = sum(b.nrows for b in blocks)
    m = sum(b.ncols for b in blocks)
    rows = [[ZERO] * m for _ in range(n)]
    r0 = c0 = 0
    for b in blocks:
        for i, row in enumerate(b.rows()):
            rows[r0 + i][c0:c0 + b.ncols] = row
        r0 += b.nrows
        c0 += b.ncols
    return Matrix._raw(rows, n, m)


"""Generalized eigenspaces and exact Jordan structure.

Eigenvalues are never computed here: the caller supplies them (or ``A`` is
triangular) and completeness is validated by dimension counting.
"""

from dataclasses import dataclass

from .core import spectrum_from_input
from .errors import IncompleteSpectrum
from .linsolve import inverse, nullspace, rank
from .matrix import Matrix, block_diag, identity, jordan_block
from .scalar import as_scalar

__all__ = [
    "EigenspaceDecomposition",
    "JordanStructure",
    "generalized_eigenspaces",
    "jordan_structure",
]


@dataclass(frozen=True)
class EigenspaceDecomposition:
    # (eigenvalue, basis vectors, algebraic multiplicity)
    spaces: tuple

    def dims(self):
        return tuple(len(basis) for _, basis, _ in self.spaces)

    def basis_for(self, lam):
        lam = as_scalar(lam)
        for mu, basis, _ in self.spaces:
            if mu == lam:
                return basis
        raise KeyError(lam)

    def multiset(self):
        """The spectrum with algebraic multiplicities, in decomposition order."""
        return [lam for lam, _, mult in self.spaces for _ in range(mult)]


def _kernel_filtration(B, n):
    """Kernels of ``B, B^2, ...`` until the dimension stops growing."""
    kernels = [()]
    power = B
    while True:
        K = nullspace(power)
        if len(K) == len(kernels[-1]):
            return kernels
        kernels.append(K)
        if len(K) == n:
            return kernels
        power = power @ B


def generalized_eigenspaces(A, eigenvalues=None):
    n = A.n
    lams = spectrum_from_input(A, eigenvalues)
    spaces = []
    for lam in lams:
        basis = nullspace(A.shift(-lam) ** n) if n else ()
        if basis:
            spaces.append((lam, basis, len(basis)))
    total = sum(len(b) for _, b, _ in spaces)
    if total != n:
        raise IncompleteSpectrum(
            f"generalized eigenspaces span dimension {total}, expected {n}")
    return EigenspaceDecomposition(tuple(spaces))


@dataclass(frozen=True)
class JordanStructure:
    """Jordan blocks ``(eigenvalue, size)`` with ``P_inverse @ A @ P`` equal to
    the block diagonal Jordan matrix. ``P is None`` stands for the identity."""

    blocks: tuple
    P: Matrix = None
    P_inverse: Matrix = None

    @property
    def n(self):
        return sum(size for _, size in self.blocks)

    @property
    def is_identity(self):
        return self.P is None

    @property
    def non_derogatory(self):
        lams = [lam for lam, _ in self.blocks]
        return len(lams) == len(set(lams))

    def eigenvalues(self):
        out = []
        for lam, _ in self.blocks:
            if lam not in out:
                out.append(lam)
        return out

    def offsets(self):
        """Starting index of every block."""
        out, pos = [], 0
        for _, size in self.blocks:
            out.append(pos)
            pos += size
        return out

    def jordan_matrix(self):
        return block_diag(*(jordan_block(size, lam) for lam, size in self.blocks))

    def to_jordan_basis(self, M):
        """``P^-1 M P``."""
        return M if self.P is None else self.P_inverse @ M @ self.P

    def from_jordan_basis(self, M):
        """``P M P^-1``."""
        return M if self.P is None else self.P @ M @ self.P_inverse


def _chains(B, n):
    """Jordan chains of the nilpotent restriction of ``B`` to its generalized
    kernel, longest first; ties go to the lowest kernel-basis column."""
    kernels = _kernel_filtration(B, n)
    top = len(kernels) - 1
    chains = []  # (top vector, length)
    for level in range(top, 0, -1):
        spanning = list(kernels[level - 1])
        for v, length in chains:
            w = v
            for _ in range(length - level):
                w = B.apply(w)
            spanning.append(w)
        current = rank(Matrix.from_columns(spanning)) if spanning else 0
        for b in kernels[level]:
            trial = spanning + [b]
            r = rank(Matrix.from_columns(trial))
            if r > current:
                spanning, current = trial, r
                chains.append((b, level))
    columns_per_chain = []
    for v, length in chains:
        cols = [v]
        for _ in range(length - 1):
            cols.append(B.apply(cols[-1]))
        columns_per_chain.append((length, cols[::-1]))
    return columns_per_chain


def jordan_structure(A, eigenvalues=None):
    """Jordan form of ``A``; blocks follow the order of ``eigenvalues``.

    Within one eigenvalue, blocks are sorted by decreasing size.
    """
    n = A.n
    lams = spectrum_from_input(A, eigenvalues)
    blocks = []
    columns = []
    for lam in lams:
        B = A.shift(-lam)
        for size, cols in _chains(B, n):
            blocks.append((lam, size))
            columns.extend(cols)
    if len(columns) != n:
        raise IncompleteSpectrum(
            f"Jordan chains span dimension {len(columns)}, expected {n}")
    blocks = tuple(blocks)
    J = block_diag(*(jordan_block(size, lam) for lam, size in blocks))
    if A == J:
        return JordanStructure(blocks)
    P = Matrix.from_columns(columns)
    if P == identity(n):
        return JordanStructure(blocks)
    return JordanStructure(blocks, P, inverse(P))

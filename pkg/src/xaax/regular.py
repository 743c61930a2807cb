"""Solutions of ``XA - AX = f(X)`` when ``f'(alpha) != 0``.

Dividing by ``c_1 = f'(alpha)`` turns the equation into
``N A' - A' N = N g(N)`` with ``g(0) = 1`` and ``A' = A / c_1``. Nonzero
solutions only couple eigenvalues differing by exactly 1, so the spectrum
splits into chains ``lam, lam+1, ..., lam+c`` that are solved separately.
"""

import threading
from dataclasses import dataclass
from typing import NamedTuple

from .errors import ShapeMismatch, ZeroDerivative
from .family import Slot, SolutionFamily
from .jordan import generalized_eigenspaces, jordan_structure
from .linsolve import INCONSISTENT, linear_solve
from .matrix import Matrix, block_diag, jordan_block, zeros
from .multipoly import MultiPoly
from .scalar import ONE, ZERO, as_scalar, scalar_key
from .series import TaylorSpec

__all__ = [
    "RegularForm",
    "Chain",
    "ChainPartition",
    "ChainBlock",
    "ReducedForm",
    "SylvesterSolution",
    "normalize_regular",
    "chain_partition",
    "block_reduce",
    "sylvester_operator",
    "sylvester_solve",
    "compute_Pr",
    "alpha_name",
    "solve_chain_general",
    "solve_chain_diag",
    "solve_regular",
    "solve_log",
]


def alpha_name(s):
    return f"α_{s}"


@dataclass(frozen=True)
class RegularForm:
    g_coeffs: tuple
    alpha: object
    scale: object

    def __post_init__(self):
        if not self.g_coeffs or self.g_coeffs[0] != 1:
            raise ValueError("g(0) must equal 1")

    def a(self, s):
        """``alpha_s``: coefficient of ``t^s`` in ``t*g(t)``."""
        return self.g_coeffs[s - 1] if s - 1 < len(self.g_coeffs) else ZERO

    def assignment(self, r):
        return {alpha_name(s): self.a(s) for s in range(2, r + 1)}


def normalize_regular(spec, n=None):
    if n is not None:
        spec = spec.truncated(max(n - 1, 1))
    c1 = spec.coeff(1)
    if not c1:
        raise ZeroDerivative("f'(alpha) = 0: use the critical solver")
    g = [c / c1 for c in spec.coeffs]
    while len(g) > 1 and not g[-1]:
        g.pop()
    return RegularForm(tuple(g), spec.alpha, c1)


@dataclass(frozen=True)
class Chain:
    base: object
    length: int
    multiplicities: tuple

    def values(self):
        return [self.base + j for j in range(self.length)]


@dataclass(frozen=True)
class ChainPartition:
    chains: tuple

    def __len__(self):
        return len(self.chains)

    def __iter__(self):
        return iter(self.chains)

    def eigenvalue_order(self):
        return [v for c in self.chains for v in c.values()]


def chain_partition(spectrum):
    """Maximal chains ``lam, lam+1, ...`` of a spectrum multiset, sorted by base."""
    counts = {}
    for lam in spectrum:
        lam = as_scalar(lam)
        counts[lam] = counts.get(lam, 0) + 1
    chains = []
    for lam in sorted(counts, key=scalar_key):
        if lam - 1 in counts:
            continue
        mults = []
        v = lam
        while v in counts:
            mults.append(counts[v])
            v = v + 1
        chains.append(Chain(lam, len(mults), tuple(mults)))
    return ChainPartition(tuple(chains))


@dataclass(frozen=True)
class ChainBlock:
    """One chain in Jordan coordinates: ``U = base*I + diag(n_0, I+n_1, ...)``."""

    chain: Chain
    offset: int
    sizes: tuple
    nilpotents: tuple

    @property
    def dim(self):
        return sum(self.sizes)

    def matrix(self):
        return block_diag(*(n.shift(self.chain.base + j) for j, n in enumerate(self.nilpotents)))


@dataclass(frozen=True)
class ReducedForm:
    structure: object
    partition: ChainPartition
    chain_blocks: tuple


def block_reduce(A, eigenvalues=None, partition=None):
    """Jordan form of ``A`` with eigenvalues grouped chain by chain."""
    if partition is None:
        partition = chain_partition(generalized_eigenspaces(A, eigenvalues).multiset())
    js = jordan_structure(A, partition.eigenvalue_order())
    sizes_of = {}
    for lam, m in js.blocks:
        sizes_of.setdefault(lam, []).append(m)
    out, offset = [], 0
    for chain in partition:
        nils = tuple(block_diag(*(jordan_block(m) for m in sizes_of[v])) for v in chain.values())
        block = ChainBlock(chain, offset, tuple(n.n for n in nils), nils)
        out.append(block)
        offset += block.dim
    return ReducedForm(js, partition, tuple(out))


# -- Sylvester operators ----------------------------------------------------

def _vec_index(p, q):
    """Position order of a ``p x q`` unknown: rows bottom-up, columns left to
    right. Triangular ``B`` and ``C`` then give a triangular operator."""
    return [(a, b) for a in range(p - 1, -1, -1) for b in range(q)]


def sylvester_operator(B, C):
    """Matrix of ``x -> x B - C x`` on ``p x q`` matrices, plus the index map."""
    p, q = C.n, B.n
    index = _vec_index(p, q)
    where = {ab: t for t, ab in enumerate(index)}
    size = p * q
    rows = [[ZERO] * size for _ in range(size)]
    for out, (a, b) in enumerate(index):
        row = rows[out]
        for t in range(q):
            c = B[t, b]
            if c:
                row[where[a, t]] += c
        for t in range(p):
            c = C[a, t]
            if c:
                row[where[t, b]] -= c
    return Matrix._raw([tuple(r) for r in rows], size, size), index


class SylvesterSolution(NamedTuple):
    particular: Matrix
    kernel_basis: tuple
    # (row, col) of the free coordinate of each kernel matrix, 0-based
    free_positions: tuple


def sylvester_solve(B, C, D):
    """All ``x`` with ``x B - C x = D``, or ``INCONSISTENT``.

    Kernel matrices are sorted by the row-major position of their free
    coordinate, and each has entry 1 there and 0 at the other free positions.
    """
    p, q = C.n, B.n
    if D.shape != (p, q):
        raise ShapeMismatch(f"right side must be {p}x{q}, got {D.shape}")
    M, index = sylvester_operator(B, C)
    rhs = [D[a, b] for a, b in index]
    sol = linear_solve(M, rhs)
    if sol is INCONSISTENT:
        return INCONSISTENT

    def unvec(v):
        rows = [[ZERO] * q for _ in range(p)]
        for t, (a, b) in enumerate(index):
            rows[a][b] = v[t]
        return Matrix._raw([tuple(r) for r in rows], p, q)

    pairs = sorted(zip((index[c] for c in sol.free_columns), sol.kernel_basis))
    return SylvesterSolution(unvec(sol.particular),
                             tuple(unvec(v) for _, v in pairs),
                             tuple(ab for ab, _ in pairs))


# -- P_r polynomials ----------------------------------------------------------

_PR_MEMO = {1: MultiPoly.constant(ONE)}
_PR_LOCK = threading.Lock()


def _compositions_products(s, m, P):
    """Sums over compositions of ``m`` into 2..``s`` parts of the product of
    ``P``; only ``P[1..m-1]`` are needed."""
    # table[t][k]: compositions of k into t parts
    table = {1: {k: P[k] for k in range(1, m)}}
    for t in range(2, s + 1):
        row = {}
        for k in range(t, m + 1):
            acc = MultiPoly()
            for a in range(1, k - t + 2):
                acc = acc + P[a] * table[t - 1][k - a]
            row[k] = acc
        table[t] = row
    return table


def compute_Pr(r):
    """``P_r`` in the variables ``α_2 .. α_r``, with
    ``(r-1) P_r = sum_s α_s * sum_{compositions of r into s parts} prod P``."""
    if r < 1:
        raise ValueError("r must be positive")
    cached = _PR_MEMO.get(r)
    if cached is not None:
        return cached
    with _PR_LOCK:
        for m in range(2, r + 1):
            if m in _PR_MEMO:
                continue
            table = _compositions_products(m, m, _PR_MEMO)
            acc = MultiPoly()
            for s in range(2, m + 1):
                acc = acc + MultiPoly.variable(alpha_name(s)) * table[s][m]
            _PR_MEMO[m] = acc.scale(ONE / (m - 1))
    return _PR_MEMO[r]


def _eval_Pr(r, form):
    poly = compute_Pr(r)
    return poly.substitute({v: form.a(int(v.split("_")[1])) for v in poly.variables})


# -- chain solvers ------------------------------------------------------------

def _chain_shape(sizes):
    offs, pos = [], 0
    for s in sizes:
        offs.append(pos)
        pos += s
    return offs, pos


def _get_block(X, offs, sizes, j, l):
    r0, c0 = offs[j], offs[l]
    return Matrix._raw([tuple(X[r0 + a][c0:c0 + sizes[l]]) for a in range(sizes[j])],
                       sizes[j], sizes[l])


def _put_block(X, offs, j, l, B):
    r0, c0 = offs[j], offs[l]
    for a, row in enumerate(B.rows()):
        X[r0 + a][c0:c0 + len(row)] = list(row)


def _as_matrix(X, d):
    return Matrix._raw([tuple(r) for r in X], d, d)


class _GeneralChainPlan:
    """Kernel bases of the first block diagonal, computed once per chain."""

    def __init__(self, nilpotents, form):
        self.nils = [Matrix(n) if not isinstance(n, Matrix) else n for n in nilpotents]
        for n in self.nils:
            if not n.is_strictly_upper():
                raise ShapeMismatch("chain nilpotents must be strictly upper triangular")
        self.form = form
        self.sizes = tuple(n.n for n in self.nils)
        self.offs, self.dim = _chain_shape(self.sizes)
        self.kernels = []
        for j in range(len(self.nils) - 1):
            sol = sylvester_solve(self.nils[j + 1], self.nils[j],
                                  zeros(self.sizes[j], self.sizes[j + 1]))
            self.kernels.append(sol)

    def free_positions(self, j):
        """0-based chain-local positions of the parameters of block ``(j, j+1)``."""
        r0, c0 = self.offs[j], self.offs[j + 1]
        return tuple((r0 + a, c0 + b) for a, b in self.kernels[j].free_positions)

    def build(self, kernel_choices):
        k, d = len(self.nils), self.dim
        X = [[ZERO] * d for _ in range(d)]
        for j in range(k - 1):
            coeffs = kernel_choices[j]
            basis = self.kernels[j].kernel_basis
            if len(coeffs) != len(basis):
                raise ShapeMismatch(
                    f"block ({j},{j + 1}) has {len(basis)} kernel directions, got {len(coeffs)}")
            x = zeros(self.sizes[j], self.sizes[j + 1])
            for c, K in zip(coeffs, basis):
                c = as_scalar(c)
                if c:
                    x = x + K.scale(c)
            _put_block(X, self.offs, j, j + 1, x)
        for i in range(2, k):
            Xm = _as_matrix(X, d)
            power = Xm
            psi_total = zeros(d)
            for s in range(2, i + 1):
                power = power @ Xm
                a = self.form.a(s)
                if a:
                    psi_total = psi_total + power.scale(a)
            inv = ONE / (i - 1)
            for j in range(k - i):
                l = j + i
                psi = _get_block(psi_total.to_lists(), self.offs, self.sizes, j, l)
                # (i-1) x + nu(x) = psi, nu nilpotent: Neumann series terminates
                x = zeros(self.sizes[j], self.sizes[l])
                term = psi.scale(inv)
                sign = ONE
                while not term.is_zero():
                    x = x + term.scale(sign)
                    term = (term @ self.nils[l] - self.nils[j] @ term).scale(inv)
                    sign = -sign
                _put_block(X, self.offs, j, l, x)
        return _as_matrix(X, d)


def _chain_matrix(nils):
    return block_diag(*(n.shift(j) for j, n in enumerate(nils)))


def solve_chain_general(nilpotents, form, kernel_choices=None):
    """Nilpotent ``X`` with ``XU - UX = X g(X)`` for
    ``U = diag(n_0, I+n_1, ..., (k-1)I+n_{k-1})``.

    Parameters are the kernel coordinates of the first block diagonal; every
    higher block diagonal is then fixed.
    """
    plan = _GeneralChainPlan(nilpotents, form)
    k = len(plan.nils)
    slots = tuple(Slot(j, tuple((r + 1, c + 1) for r, c in plan.free_positions(j)))
                  for j in range(k - 1) if plan.kernels[j].kernel_basis)
    counts = [len(plan.kernels[j].kernel_basis) for j in range(k - 1)]

    def build(values):
        choices, pos = [], 0
        for c in counts:
            choices.append(values[pos:pos + c])
            pos += c
        return plan.build(choices)

    U = _chain_matrix(plan.nils)
    family = SolutionFamily("regular-chain", U, ZERO, slots, _structure_of(U), form, build)
    if kernel_choices is None:
        kernel_choices = [[ZERO] * c for c in counts]
    return plan.build(kernel_choices), family


def _structure_of(U):
    return jordan_structure(U, range(U.n))


def solve_chain_diag(sizes, form, free_blocks=None):
    """Nilpotent ``X`` with ``XU - UX = X g(X)`` for ``U = diag(0, I, 2I, ...)``:
    ``x[i, i+r] = P_r(α) x[i,i+1] x[i+1,i+2] ... x[i+r-1,i+r]``."""
    sizes = tuple(sizes)
    k = len(sizes)
    offs, d = _chain_shape(sizes)
    P = {r: _eval_Pr(r, form) for r in range(2, k)}

    def assemble(blocks):
        X = [[ZERO] * d for _ in range(d)]
        for j, B in enumerate(blocks):
            _put_block(X, offs, j, j + 1, B)
        for j in range(k):
            prod = None
            for r in range(1, k - j):
                prod = blocks[j] if prod is None else prod @ blocks[j + r - 1]
                if r >= 2:
                    _put_block(X, offs, j, j + r, prod.scale(P[r]))
        return _as_matrix(X, d)

    def blocks_from(values):
        blocks, pos = [], 0
        for j in range(k - 1):
            p, q = sizes[j], sizes[j + 1]
            flat = values[pos:pos + p * q]
            pos += p * q
            blocks.append(Matrix._raw([tuple(flat[a * q:(a + 1) * q]) for a in range(p)], p, q))
        return blocks

    slots = tuple(
        Slot(j, tuple((offs[j] + a + 1, offs[j + 1] + b + 1)
                      for a in range(sizes[j]) for b in range(sizes[j + 1])))
        for j in range(k - 1))
    U = block_diag(*(zeros(s).shift(j) for j, s in enumerate(sizes)))
    family = SolutionFamily("regular-chain", U, ZERO, slots, _structure_of(U), form,
                            lambda values: assemble(blocks_from(values)))
    if free_blocks is None:
        free_blocks = [zeros(sizes[j], sizes[j + 1]) for j in range(k - 1)]
    free_blocks = [B if isinstance(B, Matrix) else Matrix(B) for B in free_blocks]
    if len(free_blocks) != k - 1:
        raise ShapeMismatch(f"need {k - 1} free blocks, got {len(free_blocks)}")
    for j, B in enumerate(free_blocks):
        if B.shape != (sizes[j], sizes[j + 1]):
            raise ShapeMismatch(
                f"free block {j} must be {sizes[j]}x{sizes[j + 1]}, got {B.shape}")
    return assemble(free_blocks), family


# -- full pipeline ------------------------------------------------------------

def solve_regular(A, spec, eigenvalues=None):
    """Every solution of ``XA - AX = f(X)`` with ``f'(alpha) != 0``."""
    n = A.n
    form = normalize_regular(spec, n)
    A1 = A / form.scale
    eigs1 = None if eigenvalues is None else [as_scalar(e) / form.scale for e in eigenvalues]
    reduced = block_reduce(A1, eigs1)
    plans, slots, counts = [], [], []
    for c, cb in enumerate(reduced.chain_blocks):
        plan = _GeneralChainPlan(cb.nilpotents, form)
        plans.append(plan)
        per = []
        for j in range(len(cb.nilpotents) - 1):
            size = len(plan.kernels[j].kernel_basis)
            per.append(size)
            if size:
                slots.append(Slot(c, tuple((cb.offset + r + 1, cb.offset + q + 1)
                                           for r, q in plan.free_positions(j))))
        counts.append(per)
    js = reduced.structure
    alpha = form.alpha

    def build(values):
        pos, parts = 0, []
        for plan, per in zip(plans, counts):
            choices = []
            for size in per:
                choices.append(values[pos:pos + size])
                pos += size
            parts.append(plan.build(choices))
        return js.from_jordan_basis(block_diag(*parts)).shift(alpha)

    return SolutionFamily("regular-chain", A, alpha, tuple(slots), js, form, build)


def solve_log(A, eigenvalues=None):
    """Solutions ``X = I + N`` of ``XA - AX = log X``."""
    return solve_regular(A, TaylorSpec.log(max(A.n - 1, 1)), eigenvalues)

"""Shared test utilities: every solver output in the suite goes through
``assert_verified`` so the invariant battery sees the whole corpus."""

import random

from xaax.matrix import Matrix, block_diag, jordan_block
from xaax.verify import verify_direct

from oracles import random_similarity

BATTERY_LOG = []


def assert_verified(A, X, spec, eigenvalues=None):
    report = verify_direct(A, X, spec, eigenvalues)
    BATTERY_LOG.append(report.all_pass)
    assert report.residual_zero, "residual XA - AX - f(X) is nonzero"
    assert report.all_pass, f"failed checks: {report.failed()}"
    return report


def conjugate(J, rng, eigenvalues=None):
    """A random integer similarity of ``J``; returns ``(A, P, P^-1)``."""
    P, Pi = random_similarity(J.n, rng)
    return P @ J @ Pi, P, Pi


def random_nonderogatory(rng, n_max=8, values=range(-3, 4)):
    """Random Jordan data with one block per eigenvalue."""
    n = rng.randint(1, n_max)
    k = rng.randint(1, min(n, len(values)))
    eigs = rng.sample(list(values), k)
    cuts = sorted(rng.sample(range(1, n), k - 1)) if k > 1 else []
    sizes = [b - a for a, b in zip([0] + cuts, cuts + [n])]
    J = block_diag(*(jordan_block(m, lam) for lam, m in zip(eigs, sizes)))
    return J, eigs, sizes


def random_upper_triangular(rng, n, values=range(-2, 3), off=range(-2, 3)):
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = rng.choice(list(values))
        for j in range(i + 1, n):
            rows[i][j] = rng.choice(list(off))
    return Matrix(rows)


def seeded(seed):
    return random.Random(seed)

from fractions import Fraction

import pytest
import sympy as sp

from helpers import conjugate, random_nonderogatory, seeded
from oracles import jordan_block_sizes, to_sympy
from xaax.core import (commutator, eval_f, eval_poly, false_diagonal, nilpotency_index,
                       spectrum_from_input)
from xaax.errors import (DimensionMismatch, IncompleteSpectrum, IndexOutOfRange,
                         NotStrictlyUpper, SpectrumNotPoint, SpectrumRequired)
from xaax.jordan import generalized_eigenspaces, jordan_structure
from xaax.matrix import Matrix, block_diag, diag, identity, jordan_block, zeros
from xaax.series import TaylorSpec


def test_commutator_and_shape_check():
    X, A = jordan_block(2), diag(0, 1)
    assert commutator(X, A) == X
    with pytest.raises(DimensionMismatch):
        commutator(identity(2), identity(3))


def test_nilpotency_index():
    assert nilpotency_index(zeros(3)) == 1
    assert nilpotency_index(jordan_block(4)) == 4
    assert nilpotency_index(identity(2)) is None


def test_false_diagonal():
    M = Matrix([[0, 1, 2], [0, 0, 3], [0, 0, 0]])
    assert false_diagonal(M, 1) == (1, 3)
    assert false_diagonal(M, 2) == (2,)
    with pytest.raises(IndexOutOfRange):
        false_diagonal(M, 3)
    with pytest.raises(NotStrictlyUpper):
        false_diagonal(identity(3), 1)


def test_eval_f_log_on_unipotent_block():
    s = sp.Symbol("s")
    N = jordan_block(3)
    expected = sp.zeros(3, 3)
    ser = sp.series(sp.log(1 + s), s, 0, 3).removeO()
    for k in range(1, 3):
        expected += ser.coeff(s, k) * to_sympy(N) ** k
    got = eval_f(TaylorSpec.log(5), identity(3) + N)
    assert to_sympy(got) == expected
    assert got == Matrix([[0, 1, Fraction(-1, 2)], [0, 0, 1], [0, 0, 0]])


def test_eval_f_requires_point_spectrum():
    with pytest.raises(SpectrumNotPoint):
        eval_f(TaylorSpec.log(2), diag(1, 2))


def test_eval_poly_horner_matches_powers():
    N = jordan_block(4)
    assert eval_poly((2, 3, 5), N) == N * 2 + (N @ N) * 3 + (N @ N @ N) * 5


def test_spectrum_input():
    assert spectrum_from_input(Matrix([[1, 5], [0, 1]])) == [1]
    with pytest.raises(SpectrumRequired):
        spectrum_from_input(Matrix([[0, 1], [1, 0]]))


def test_generalized_eigenspaces():
    A = Matrix([[1, 1, 0], [0, 1, 0], [0, 0, 2]])
    dec = generalized_eigenspaces(A)
    assert dec.dims() == (2, 1)
    assert sorted(dec.multiset()) == [1, 1, 2]
    with pytest.raises(IncompleteSpectrum):
        generalized_eigenspaces(A, [1])


def test_jordan_examples():
    js = jordan_structure(Matrix([[0, 1], [0, 1]]))
    assert js.blocks == ((0, 1), (1, 1))
    assert js.P == Matrix([[1, 1], [0, 1]])
    assert jordan_structure(jordan_block(4)).is_identity
    assert not jordan_structure(diag(3, 3)).non_derogatory


@pytest.mark.parametrize("seed", range(25))
def test_jordan_structure_against_sympy(seed):
    rng = seeded(seed)
    J, eigs, _ = random_nonderogatory(rng, n_max=6)
    if rng.random() < 0.5:
        # add a second block for some eigenvalue to exercise derogatory input
        J = block_diag(J, jordan_block(rng.randint(1, 2), eigs[0]))
    A, _, _ = conjugate(J, rng)
    js = jordan_structure(A, eigs)
    assert js.to_jordan_basis(A) == js.jordan_matrix()
    assert js.from_jordan_basis(js.jordan_matrix()) == A
    ours = {}
    for lam, m in js.blocks:
        ours.setdefault(lam, []).append(m)
    theirs = jordan_block_sizes(A)
    assert {sp.Rational(k.numerator, k.denominator): v for k, v in ours.items()} == theirs

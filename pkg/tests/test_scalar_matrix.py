from fractions import Fraction

import pytest
import sympy as sp
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from geninv.errors import DimensionMismatch, ParseError, Singular
from geninv.matrix import (Matrix, commutation, full_rank_factorize, inverse, is_positive_definite, kron,
                           rank, rref_rank, solve_general, unvec, vec)
from geninv.scalar import Scalar, make, parse_rational, to_pair
from strategies import gaussians, matrices, square

I = make(0, 1)


def to_sympy(A):
    return sp.Matrix(A.rows, A.cols, lambda i, j: sp.Rational(str(A.entry(i, j).re))
                     + sp.I * sp.Rational(str(A.entry(i, j).im)))


def test_parse_rational_forms():
    assert parse_rational("0.5") == mpq(1, 2)
    assert parse_rational(" -3/6 ") == mpq(-1, 2)
    assert parse_rational("7") == 7
    with pytest.raises(ParseError):
        parse_rational("1/0")
    with pytest.raises(ParseError):
        parse_rational("pi")


def test_complex_demotes_to_real():
    z = make(1, 2)
    assert isinstance(z, Scalar)
    w = z * z.conjugate()
    assert type(w) is type(mpq(0)) and w == 5
    assert make(3, 0) == 3 and type(make(3, 0)) is type(mpq(0))
    assert I * I == -1


@given(gaussians, gaussians)
def test_field_axioms(a, b):
    A, B = Matrix([[a]]), Matrix([[b]])
    assert (A + B) == (B + A)
    assert (A @ B) == (B @ A)
    if b:
        assert Matrix([[a / b * b]]) == A


def test_matrix_is_immutable_and_hashable():
    A = Matrix([[1, 2], [3, 4]])
    with pytest.raises(AttributeError):
        A.rows = 5
    assert hash(A) == hash(Matrix([["1", "2"], ["3", "4"]]))


def test_shape_errors():
    with pytest.raises(DimensionMismatch):
        Matrix([[1, 2], [3]])
    with pytest.raises(DimensionMismatch):
        Matrix([[1, 2]]) @ Matrix([[1, 2]])
    with pytest.raises(Singular):
        inverse(Matrix([[1, 2], [2, 4]]))


def test_conjugate_transpose():
    A = Matrix([[1, I], [0, 2]])
    assert A.H == Matrix([[1, 0], [-I, 2]])
    assert A.T == Matrix([[1, 0], [I, 2]])


@given(matrices(max_dim=4))
def test_rank_matches_sympy(A):
    assert rank(A) == to_sympy(A).rank()


@given(matrices(max_dim=4, entries=gaussians))
def test_full_rank_factorization(A):
    if A.is_zero():
        return
    F, G = full_rank_factorize(A)
    r = rank(A)
    assert F.shape == (A.rows, r) and G.shape == (r, A.cols)
    assert F @ G == A
    assert rank(F) == r == rank(G)


@given(square(max_dim=4, entries=gaussians))
def test_inverse_round_trip(A):
    if rank(A) < A.rows:
        return
    assert A @ inverse(A) == Matrix.identity(A.rows)


@given(matrices(max_dim=4), st.integers(1, 3), st.data())
def test_solve_general_describes_all_solutions(A, k, data):
    B = data.draw(matrices(rows=A.rows, cols=k))
    sol = solve_general(A, B)
    if not sol.solvable:
        assert to_sympy(A).rank() < to_sympy(A).row_join(to_sympy(B)).rank()
        return
    assert A @ sol.particular == B
    for Z in sol.null_basis:
        assert (A @ Z).is_zero()
    assert len(sol.null_basis) == A.cols - rank(A)


def test_rref_is_deterministic():
    R = rref_rank(Matrix([[0, 2, 4], [0, 1, 2], [1, 0, 1]]))
    assert R.pivot_cols == (0, 1)
    assert R.rref == Matrix([[1, 0, 1], [0, 1, 2], [0, 0, 0]])


@given(matrices(max_dim=3), matrices(max_dim=3), st.data())
def test_vec_kron_identity(A, B, data):
    X = data.draw(matrices(rows=A.cols, cols=B.rows))
    assert vec(A @ X @ B) == kron(B.T, A) @ vec(X)
    assert unvec(vec(X), X.rows, X.cols) == X
    assert commutation(X.rows, X.cols) @ vec(X) == vec(X.T)


def test_positive_definite():
    assert is_positive_definite(Matrix([[2, 1], [1, 2]]))
    assert not is_positive_definite(Matrix([[1, 2], [2, 1]]))
    assert not is_positive_definite(Matrix([[0, 0], [0, 1]]))
    assert is_positive_definite(Matrix([[2, I], [-I, 2]]))


def test_to_pairs_is_lossless():
    A = Matrix([["1/3", make(Fraction(-1, 2), 2)]])
    assert A.to_pairs() == [[["1/3", "0"], ["-1/2", "2"]]]
    assert to_pair(mpq(5)) == ["5", "0"]

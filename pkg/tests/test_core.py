import pytest
import sympy as sp
from hypothesis import given

from geninv.core import (core_ep_inverse, core_inverse, drazin_inverse, group_inverse, ind, index,
                         mp_inverse, require_group_inverse, w_core_ep_residuals, w_weighted_core_ep)
from geninv.equations import DEFINING, InverseKind, check_membership
from geninv.errors import DimensionMismatch, IndexTooHigh, NotSquare
from geninv.matrix import Matrix
from geninv.scalar import make
from strategies import gaussians, matrices, square
from test_scalar_matrix import to_sympy

I = make(0, 1)


def q(*rows):
    return Matrix([list(r) for r in rows])


# values below were computed with sympy's pinv and frozen
def test_mp_frozen_real():
    A = q([1, 2, 3], [2, 4, 6], [1, 0, 1])
    assert mp_inverse(A) == q(["-1/30", "-1/15", "5/6"], ["1/15", "2/15", "-2/3"], ["1/30", "1/15", "1/6"])


def test_mp_frozen_complex():
    assert mp_inverse(q([1, I], [0, 0])) == q(["1/2", 0], [make(0, "-1/2"), 0])


def test_core_inverse_of_idempotent_row():
    # A = [[1,1],[0,0]] is idempotent so A# = A; A A+ projects onto e1
    A = q([1, 1], [0, 0])
    assert group_inverse(A) == A
    assert core_inverse(A) == q([1, 0], [0, 0])


def test_nilpotent_has_no_group_inverse():
    J = q([0, 1], [0, 0])
    assert ind(J) == 2
    assert group_inverse(J) is None
    assert core_inverse(J) is None
    assert drazin_inverse(J).is_zero()
    assert core_ep_inverse(J).is_zero()
    with pytest.raises(IndexTooHigh):
        require_group_inverse(J)


def test_index_conventions():
    assert index(Matrix.identity(3)).k == 0
    assert index(Matrix.zeros(2)).k == 1
    assert index(q([0, 1, 0], [0, 0, 1], [0, 0, 0])).rank_chain == (3, 2, 1, 0, 0)
    with pytest.raises(NotSquare):
        index(q([1, 2]))


@given(matrices(max_dim=4, entries=gaussians))
def test_mp_matches_sympy_and_equations(A):
    X = mp_inverse(A)
    assert check_membership(A, X, DEFINING[InverseKind.MP]).holds
    assert sp.simplify(to_sympy(X) - to_sympy(A).pinv()) == sp.zeros(A.cols, A.rows)


@given(square(max_dim=4, entries=gaussians))
def test_square_kinds_satisfy_definitions(A):
    k = max(ind(A), 1)
    for kind, fn in ((InverseKind.DRAZIN, drazin_inverse), (InverseKind.CORE_EP, core_ep_inverse),
                     (InverseKind.GROUP, group_inverse), (InverseKind.CORE, core_inverse)):
        X = fn(A)
        if X is None:
            assert ind(A) >= 2
            continue
        assert check_membership(A, X, DEFINING[kind], k=k).holds


@given(square(max_dim=4))
def test_group_inverse_exists_iff_index_le_one(A):
    assert (group_inverse(A) is not None) == (ind(A) <= 1)


@given(matrices(max_dim=3, entries=gaussians).flatmap(
    lambda A: matrices(rows=A.cols, cols=A.rows, entries=gaussians).map(lambda W: (A, W))))
def test_w_weighted_core_ep(pair):
    A, W = pair
    X = w_weighted_core_ep(A, W)
    assert all(r.is_zero() for r in w_core_ep_residuals(A, W, X))


def test_w_weighted_core_ep_shape_check():
    with pytest.raises(DimensionMismatch):
        w_weighted_core_ep(q([1, 2]), q([1, 2]))

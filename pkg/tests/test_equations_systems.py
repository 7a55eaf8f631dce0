import numpy as np
import pytest
from hypothesis import given

from geninv.core import group_inverse, mp_inverse
from geninv.equations import (EquationTag, check_equation, check_membership, float_tolerance, parse_tag,
                              parse_tags, residual)
from geninv.errors import DimensionMismatch, MissingContext, ParseError, UnsupportedTag
from geninv.matrix import Matrix
from geninv.systems import PolyStatus, solve_linear_penrose, solve_quadratic, tag_constraint
from strategies import gaussians, index_one_with_weights, matrices

T = EquationTag


def q(*rows):
    return Matrix([list(r) for r in rows])


def test_tag_aliases():
    assert parse_tag("3M") is T.P3M and parse_tag("3^M") is T.P3M and parse_tag("P4N") is T.P4N
    assert parse_tags("1, 2,6^k") == (T.P1, T.P2, T.P6k)
    with pytest.raises(ParseError):
        parse_tag("10")


def test_missing_context_and_shape():
    A = q([1, 0], [0, 0])
    with pytest.raises(MissingContext):
        residual(T.P3M, A, A)
    with pytest.raises(MissingContext):
        residual(T.P1k, A, A)
    with pytest.raises(DimensionMismatch):
        residual(T.P1, A, q([1, 0]))


def test_residual_values_are_exact():
    A, X = q([1, 1], [0, 0]), q([1, 0], [0, 0])
    assert residual(T.P3, A, X).is_zero()
    assert residual(T.P4, A, X) == q([0, -1], [1, 0])


def test_float_mode_uses_tolerance():
    A = q([1, 0], [0, 0])
    X = q(["1000000001/1000000000", 0], [0, 0])
    assert not check_equation(T.P1, A, X).holds
    c = check_equation(T.P1, A, X, mode="float")
    assert c.holds and c.norm < float_tolerance(A, X)
    assert not check_equation(T.P1, A, X, mode="float", tolerance=1e-12).holds
    with pytest.raises(ValueError):
        check_equation(T.P1, A, X, tolerance=0.1)


@given(matrices(max_dim=3, entries=gaussians))
def test_float_mode_accepts_exact_inverses(A):
    X = mp_inverse(A)
    res = check_membership(A, X, "1,2,3,4", mode="float")
    assert res.holds
    assert all(isinstance(c.residual, np.ndarray) for c in res.checks)


def test_nonlinear_tags_are_rejected_by_linear_builder():
    A = q([1, 0], [0, 0])
    for tag in (T.P2, T.P7, T.P9):
        with pytest.raises(UnsupportedTag):
            tag_constraint(tag, A)


@given(matrices(max_dim=3, entries=gaussians))
def test_linear_solution_family(A):
    S = solve_linear_penrose(A, "1,3,4")
    assert not S.empty
    for X in [S.X0] + [S.point([1 if j == i else 0 for j in range(S.dimension)]) for i in range(S.dimension)]:
        assert check_membership(A, X, "1,3,4").holds


@given(matrices(max_dim=3, entries=gaussians))
def test_penrose_system_is_unique(A):
    sol = solve_quadratic(A, "1,3,4", "2")
    assert sol.status is PolyStatus.UNIQUE
    assert sol.witnesses[0] == mp_inverse(A)


@given(index_one_with_weights(max_dim=3))
def test_group_inverse_via_solver(inst):
    A = inst[0]
    sol = solve_quadratic(A, "1,5", "2")
    assert sol.status is PolyStatus.UNIQUE and sol.witnesses[0] == group_inverse(A)


def test_solver_reports_empty_and_multiple():
    J = q([0, 1], [0, 0])
    assert solve_quadratic(J, "1,5", "2").status is PolyStatus.EMPTY
    assert not solve_quadratic(J, "1,5", "2").exists
    assert solve_quadratic(q([1, 0], [0, 0]), "1", []).status is PolyStatus.MULTIPLE

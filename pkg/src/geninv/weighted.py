"""Weighted core inverses, the generalized weighted Moore-Penrose inverse and
their idempotent characterizations.

With Hermitian weights every object has a closed form in the full-rank
factorization A = F G:

    A{1,3^M} nonempty  <=>  F*MF invertible
    A{1,4^N} nonempty  <=>  G N^-1 G* invertible
    M-weighted core      F (GF)^-1 (F*MF)^-1 F*M
    N-weighted dual core N^-1 G* (G N^-1 G*)^-1 (GF)^-1 G
    weighted MP          N^-1 G* (G N^-1 G*)^-1 (F*MF)^-1 F*M

Those formulas are the fast path.  The linear feasibility solves in
``systems`` are an independent route, used for non-Hermitian weights and as
a cross-check.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, Optional, Tuple

from .core import group_inverse, mp_inverse
from .equations import DEFINING, InverseKind, first_residual
from .errors import (IndexTooHigh, InverseNotExists, MissingContext, NotHermitian, NotSquare,
                     PostconditionFailed, Singular, DimensionMismatch)
from .matrix import Matrix, full_rank_factorize, inverse, is_invertible, range_equal, range_subset
from .systems import AffineSet, Constraint, Term, hermitian_constraint, solve_constraints, solve_linear_penrose


class WeightPolicy(Enum):
    REQUIRE_HERMITIAN = "RequireHermitian"
    ALLOW_NON_HERMITIAN = "AllowNonHermitian"


class ExistStatus(Enum):
    EXISTS = "Exists"
    NOT_EXISTS = "NotExists"


class Reason(Enum):
    INDEX_TOO_HIGH = "IndexTooHigh"
    FEASIBILITY_EMPTY = "FeasibilityEmpty"
    IDEMPOTENT_TEST_FAILED = "IdempotentTestFailed"


class Flavor(Enum):
    CORE = "CoreFlavor"
    DUAL = "DualFlavor"
    MP = "MpFlavor"


@dataclass(frozen=True)
class ExistenceOutcome:
    status: ExistStatus
    witness: Optional[Matrix] = None
    reason: Optional[Reason] = None

    @property
    def exists(self):
        return self.status is ExistStatus.EXISTS

    @classmethod
    def found(cls, X):
        return cls(ExistStatus.EXISTS, X)

    @classmethod
    def missing(cls, reason):
        return cls(ExistStatus.NOT_EXISTS, None, reason)


@dataclass(frozen=True)
class IdempotentPair:
    P: Matrix
    Q: Matrix

    def __post_init__(self):
        if self.P @ self.P != self.P or self.Q @ self.Q != self.Q:
            raise PostconditionFailed("idempotent pair is not idempotent")


@dataclass(frozen=True)
class WeightedProblem:
    A: Matrix
    M: Optional[Matrix] = None
    N: Optional[Matrix] = None
    policy: WeightPolicy = WeightPolicy.REQUIRE_HERMITIAN

    def __post_init__(self):
        if not self.A.is_square:
            raise NotSquare("weighted inverses need a square A")
        for name in ("M", "N"):
            W = getattr(self, name)
            if W is None:
                continue
            if W.shape != self.A.shape:
                raise DimensionMismatch("%s must be %dx%d" % ((name,) + self.A.shape))
            if not is_invertible(W):
                raise Singular("weight %s is singular" % name)
            if self.policy is WeightPolicy.REQUIRE_HERMITIAN and not W.is_hermitian():
                raise NotHermitian("weight %s is not Hermitian" % name)

    @property
    def hermitian(self):
        return self.policy is WeightPolicy.REQUIRE_HERMITIAN

    def need(self, name):
        W = getattr(self, name)
        if W is None:
            raise MissingContext("this inverse needs the weight %s" % name)
        return W


# ---------------------------------------------------------------------------
# range helpers


def range_gap(U: Matrix, V: Matrix) -> Matrix:
    """``(I - V V^+) U``: zero exactly when R(U) is inside R(V)."""
    return U - V @ mp_inverse(V) @ U


def row_range_subset(U: Matrix, V: Matrix) -> bool:
    """R(U^T) inside R(V^T), with the plain transpose."""
    return range_subset(U.T, V.T)


# ---------------------------------------------------------------------------
# {1,3^M} and {1,4^N}


def one_3m(A: Matrix, M: Matrix, hermitian=True) -> Optional[Matrix]:
    """A member of A{1,3^M}, or None when the class is empty."""
    if A.is_zero():
        return Matrix.zeros(A.cols, A.rows)
    if not hermitian:
        S = solve_linear_penrose(A, ["1", "3M"], M=M)
        return None if S.empty else S.X0
    F, G = full_rank_factorize(A)
    FhM = F.H @ M
    W = FhM @ F
    if not is_invertible(W):
        return None
    P = F @ inverse(W) @ FhM
    return mp_inverse(A) @ P


def one_4n(A: Matrix, N: Matrix, hermitian=True) -> Optional[Matrix]:
    """A member of A{1,4^N}, or None when the class is empty."""
    if A.is_zero():
        return Matrix.zeros(A.cols, A.rows)
    if not hermitian:
        S = solve_linear_penrose(A, ["1", "4N"], N=N)
        return None if S.empty else S.X0
    F, G = full_rank_factorize(A)
    NiGh = inverse(N) @ G.H
    W = G @ NiGh
    if not is_invertible(W):
        return None
    Q = NiGh @ inverse(W) @ G
    return Q @ mp_inverse(A)


def feasible_3m(A, M) -> AffineSet:
    return solve_linear_penrose(A, ["1", "3M"], M=M)


def feasible_4n(A, N) -> AffineSet:
    return solve_linear_penrose(A, ["1", "4N"], N=N)


# ---------------------------------------------------------------------------
# weighted core inverses


def _verified(kind, A, X, M=None, N=None):
    if first_residual(A, X, DEFINING[kind], M=M, N=N) is not None:
        raise PostconditionFailed("%s witness fails its defining equations" % kind.value)
    return X


def m_core_closed(A: Matrix, M: Matrix) -> ExistenceOutcome:
    if A.is_zero():
        return ExistenceOutcome.found(Matrix.zeros(A.rows))
    F, G = full_rank_factorize(A)
    GF = G @ F
    if not is_invertible(GF):
        return ExistenceOutcome.missing(Reason.INDEX_TOO_HIGH)
    FhM = F.H @ M
    W = FhM @ F
    if not is_invertible(W):
        return ExistenceOutcome.missing(Reason.FEASIBILITY_EMPTY)
    return ExistenceOutcome.found(F @ inverse(GF) @ inverse(W) @ FhM)


def m_core_feasible(A: Matrix, M: Matrix, X13: Optional[Matrix] = None) -> ExistenceOutcome:
    """Representation A# A A^(1,3^M) with A^(1,3^M) from the linear solve."""
    Ag = group_inverse(A)
    if Ag is None:
        return ExistenceOutcome.missing(Reason.INDEX_TOO_HIGH)
    if X13 is None:
        S = feasible_3m(A, M)
        if S.empty:
            return ExistenceOutcome.missing(Reason.FEASIBILITY_EMPTY)
        X13 = S.X0
    return ExistenceOutcome.found(Ag @ A @ X13)


def n_core_closed(A: Matrix, N: Matrix) -> ExistenceOutcome:
    if A.is_zero():
        return ExistenceOutcome.found(Matrix.zeros(A.rows))
    F, G = full_rank_factorize(A)
    GF = G @ F
    if not is_invertible(GF):
        return ExistenceOutcome.missing(Reason.INDEX_TOO_HIGH)
    NiGh = inverse(N) @ G.H
    W = G @ NiGh
    if not is_invertible(W):
        return ExistenceOutcome.missing(Reason.FEASIBILITY_EMPTY)
    return ExistenceOutcome.found(NiGh @ inverse(W) @ inverse(GF) @ G)


def n_core_feasible(A: Matrix, N: Matrix, X14: Optional[Matrix] = None) -> ExistenceOutcome:
    """Representation A^(1,4^N) A A# with A^(1,4^N) from the linear solve."""
    Ag = group_inverse(A)
    if Ag is None:
        return ExistenceOutcome.missing(Reason.INDEX_TOO_HIGH)
    if X14 is None:
        S = feasible_4n(A, N)
        if S.empty:
            return ExistenceOutcome.missing(Reason.FEASIBILITY_EMPTY)
        X14 = S.X0
    return ExistenceOutcome.found(X14 @ A @ Ag)


def _cross(first: ExistenceOutcome, second: ExistenceOutcome, what):
    if first.exists != second.exists or (first.exists and first.witness != second.witness):
        raise PostconditionFailed("%s: closed form and feasibility route disagree" % what)


def m_weighted_core(problem: WeightedProblem, cross_check=False) -> ExistenceOutcome:
    """M-weighted core inverse as an existence outcome with a verified witness."""
    A, M = problem.A, problem.need("M")
    if problem.hermitian:
        out = m_core_closed(A, M)
        if cross_check:
            _cross(out, m_core_feasible(A, M), "M-weighted core")
    else:
        out = m_core_feasible(A, M)
    if out.exists:
        _verified(InverseKind.M_CORE, A, out.witness, M=M)
    return out


def n_weighted_dual_core(problem: WeightedProblem, cross_check=False) -> ExistenceOutcome:
    A, N = problem.A, problem.need("N")
    if problem.hermitian:
        out = n_core_closed(A, N)
        if cross_check:
            _cross(out, n_core_feasible(A, N), "N-weighted dual core")
    else:
        out = n_core_feasible(A, N)
    if out.exists:
        _verified(InverseKind.N_DUAL_CORE, A, out.witness, N=N)
    return out


def m_core(A, M, hermitian=True) -> Optional[Matrix]:
    """Convenience: the M-weighted core inverse or None."""
    policy = WeightPolicy.REQUIRE_HERMITIAN if hermitian else WeightPolicy.ALLOW_NON_HERMITIAN
    return m_weighted_core(WeightedProblem(A, M=M, policy=policy)).witness


def n_core(A, N, hermitian=True) -> Optional[Matrix]:
    policy = WeightPolicy.REQUIRE_HERMITIAN if hermitian else WeightPolicy.ALLOW_NON_HERMITIAN
    return n_weighted_dual_core(WeightedProblem(A, N=N, policy=policy)).witness


# ---------------------------------------------------------------------------
# generalized weighted Moore-Penrose inverse


def wmp_closed(A: Matrix, M: Matrix, N: Matrix) -> ExistenceOutcome:
    if A.is_zero():
        return ExistenceOutcome.found(Matrix.zeros(A.cols, A.rows))
    F, G = full_rank_factorize(A)
    FhM = F.H @ M
    W1 = FhM @ F
    NiGh = inverse(N) @ G.H
    W2 = G @ NiGh
    if not (is_invertible(W1) and is_invertible(W2)):
        return ExistenceOutcome.missing(Reason.FEASIBILITY_EMPTY)
    return ExistenceOutcome.found(NiGh @ inverse(W2) @ inverse(W1) @ FhM)


def wmp_feasible(A: Matrix, M: Matrix, N: Matrix, A1: Optional[Matrix] = None) -> ExistenceOutcome:
    """``Q A^(1) P`` with ``P = A A^(1,3^M)`` and ``Q = A^(1,4^N) A`` from linear solves."""
    S3, S4 = feasible_3m(A, M), feasible_4n(A, N)
    if S3.empty or S4.empty:
        return ExistenceOutcome.missing(Reason.FEASIBILITY_EMPTY)
    P, Q = A @ S3.X0, S4.X0 @ A
    A1 = mp_inverse(A) if A1 is None else A1
    return ExistenceOutcome.found(Q @ A1 @ P)


def weighted_mp(problem: WeightedProblem, cross_check=False) -> ExistenceOutcome:
    A, M, N = problem.A, problem.need("M"), problem.need("N")
    if problem.hermitian:
        out = wmp_closed(A, M, N)
        if cross_check:
            _cross(out, wmp_feasible(A, M, N), "weighted Moore-Penrose")
    else:
        out = wmp_feasible(A, M, N)
    if out.exists:
        _verified(InverseKind.WEIGHTED_MP, A, out.witness, M=M, N=N)
    return out


def wmp(A, M, N) -> Optional[Matrix]:
    return weighted_mp(WeightedProblem(A, M=M, N=N)).witness


# ---------------------------------------------------------------------------
# duality


def duality_transform(A: Matrix, M: Matrix) -> Tuple[Matrix, Callable[[Matrix], Matrix]]:
    """``B = M^-1 A* M`` and the pullback ``Y -> M^-1 Y* M``."""
    Mi = inverse(M)
    B = Mi @ A.H @ M

    def pullback(Y: Matrix) -> Matrix:
        return Mi @ Y.H @ M

    return B, pullback


# ---------------------------------------------------------------------------
# idempotent characterizations


def p_side_solutions(A: Matrix, M: Matrix) -> AffineSet:
    """All Y with P = F Y idempotent onto R(A) and M P Hermitian (YF = I)."""
    F, _ = full_rank_factorize(A)
    r = F.cols
    cons = [Constraint((Term(Matrix.identity(r), F),), Matrix.identity(r)),
            hermitian_constraint(M @ F, Matrix.identity(A.rows))]
    return solve_constraints(cons, (r, A.rows))


def q_side_solutions(A: Matrix, N: Matrix) -> AffineSet:
    """All Y with Q = Y G idempotent, R(Q^T) = R(A^T) and N Q Hermitian (GY = I)."""
    _, G = full_rank_factorize(A)
    r = G.rows
    cons = [Constraint((Term(G, Matrix.identity(r)),), Matrix.identity(r)),
            hermitian_constraint(N, G)]
    return solve_constraints(cons, (A.cols, r))


def idempotent_pair(problem: WeightedProblem, flavor: Flavor) -> IdempotentPair:
    A = problem.A
    if flavor is Flavor.CORE:
        out = m_weighted_core(problem)
        if not out.exists:
            raise InverseNotExists("M-weighted core inverse", out.reason.value)
        X = out.witness
        pair = IdempotentPair(A @ X, X @ A)
        M = problem.M
        ok = ((M @ pair.P).is_hermitian() and range_equal(pair.P, A) and range_equal(pair.Q, A)
              and range_equal(pair.Q.T, A.T))
    elif flavor is Flavor.DUAL:
        out = n_weighted_dual_core(problem)
        if not out.exists:
            raise InverseNotExists("N-weighted dual core inverse", out.reason.value)
        X = out.witness
        pair = IdempotentPair(A @ group_inverse(A), X @ A)
        N = problem.N
        ok = ((N @ pair.Q).is_hermitian() and range_equal(pair.P, A)
              and range_equal(pair.P.T, A.T) and range_equal(pair.Q.T, A.T))
    else:
        out = weighted_mp(problem)
        if not out.exists:
            raise InverseNotExists("weighted Moore-Penrose inverse", out.reason.value)
        X = out.witness
        pair = IdempotentPair(A @ X, X @ A)
        ok = ((problem.M @ pair.P).is_hermitian() and (problem.N @ pair.Q).is_hermitian()
              and range_equal(pair.P, A) and range_equal(pair.Q.T, A.T))
    if not ok:
        raise PostconditionFailed("idempotent pair fails its characterization")
    return pair


# ---------------------------------------------------------------------------
# weighted-EP


@dataclass(frozen=True)
class WeightedEpResult:
    value: bool
    clauses: Dict[str, bool] = field(default_factory=dict)


def weighted_ep_range_clauses(A: Matrix, M: Matrix, N: Matrix) -> Dict[str, bool]:
    """Range conditions as printed, keyed by theorem and clause letter."""
    Mi, Ni, Ah = inverse(M), inverse(N), A.H
    return {
        "T3_17(f)": row_range_subset(A, Ah @ M),
        "T3_17(g)": range_subset(A, Mi @ Ah),
        "T3_17(h)": range_subset(Ah, M @ A),
        "T3_18(d)": range_subset(A, Ni @ Ah) and row_range_subset(A, Ah @ M),
        "T3_18(e)": row_range_subset(A @ Ni, Ah) and range_subset(A, Mi @ Ah),
        "T3_18(f)": range_subset(Ni @ Ah, A) and row_range_subset(Ah, A @ Mi),
        "T3_18(g)": row_range_subset(Ah, A @ Ni) and range_subset(A, A @ M),
    }


def is_weighted_ep(problem: WeightedProblem) -> WeightedEpResult:
    """Whether A^+_{M,N} exists and equals A# (N defaults to M)."""
    A, M = problem.A, problem.need("M")
    N = problem.N if problem.N is not None else M
    Ag = group_inverse(A)
    if Ag is None:
        raise IndexTooHigh("weighted-EP test")
    out = weighted_mp(WeightedProblem(A, M=M, N=N, policy=problem.policy))
    value = out.exists and out.witness == Ag
    clauses = weighted_ep_range_clauses(A, M, N)
    Xm = m_core_closed(A, M)
    Xd = n_core_closed(A, M)
    clauses["T3_17(d)"] = Xm.exists and Xd.exists and Xm.witness == Ag == Xd.witness
    return WeightedEpResult(value, clauses)

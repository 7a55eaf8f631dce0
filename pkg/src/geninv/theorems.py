"""Instance-wise verification of the characterization, identity and
reverse-order-law results.

Each check produces a list of clauses.  Roles decide how a clause feeds the
verdict:

* ``hypothesis``  any false one gives HypothesisNotMet and stops evaluation;
* ``equivalent``  all must share one truth value, a split is a Fail;
* ``conclusion``  must hold, a false one is a Fail;
* ``as-printed``  a statement kept in its printed form although it is known
  to be false in general; a false one downgrades Pass to InterpretationNote;
* ``info``        recorded only.

Every false clause carries a nonzero witness matrix so a Fail is always
backed by a concrete residual.
"""

import hashlib
import json
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Dict, List, Optional

from .core import drazin_inverse, group_inverse, ind, mp_inverse
from .equations import EquationTag, float_tolerance, residual
from .errors import MalformedInputs, Undecided
from .ids import ROL_IDS, SIGNATURE, TheoremId, parse_theorem
from .matrix import (Matrix, full_rank_factorize, inverse, is_invertible, is_positive_definite,
                     range_subset, solve_general)
from .sampler import SplitMix64
from .systems import PolyStatus, solve_constraints, solve_quadratic, tag_constraint
from .weighted import (m_core_closed, n_core_closed, one_3m, one_4n, p_side_solutions,
                       q_side_solutions, range_gap, row_range_subset, weighted_ep_range_clauses,
                       wmp_closed)

T = EquationTag

HYP = "hypothesis"
EQV = "equivalent"
CON = "conclusion"
PRINTED = "as-printed"
INFO = "info"

ROLES = (HYP, EQV, CON, PRINTED, INFO)

NONEMPTY_NOTE = ("hypothesis read as: the class is nonempty (the printed emptiness "
                 "condition contradicts the conclusions)")

PERTURBATIONS = 5
POWERS = 4


class Verdict(Enum):
    PASS = "Pass"
    FAIL = "Fail"
    HYPOTHESIS_NOT_MET = "HypothesisNotMet"
    INTERPRETATION_NOTE = "InterpretationNote"


@dataclass
class Clause:
    name: str
    holds: bool
    role: str = CON
    residual: Optional[Matrix] = None
    detail: str = ""

    def to_dict(self):
        return {
            "name": self.name,
            "role": self.role,
            "holds": self.holds,
            "residual": None if self.residual is None else self.residual.to_pairs(),
            "detail": self.detail,
        }

    @classmethod
    def from_dict(cls, d):
        res = d.get("residual")
        return cls(d["name"], bool(d["holds"]), d.get("role", CON),
                   None if res is None else Matrix(res), d.get("detail", ""))


@dataclass
class VerificationReport:
    theorem: TheoremId
    instance_digest: str
    clauses: List[Clause] = field(default_factory=list)
    verdict: Verdict = Verdict.PASS
    notes: List[str] = field(default_factory=list)

    def clause(self, name) -> Clause:
        for c in self.clauses:
            if c.name == name:
                return c
        raise KeyError(name)

    def failing(self) -> List[Clause]:
        return [c for c in self.clauses if not c.holds and c.role in (CON, EQV)]

    def to_dict(self):
        return {
            "theorem": self.theorem.value,
            "instanceDigest": self.instance_digest,
            "verdict": self.verdict.value,
            "clauses": [c.to_dict() for c in self.clauses],
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, d):
        return cls(parse_theorem(d["theorem"]), d["instanceDigest"],
                   [Clause.from_dict(c) for c in d["clauses"]],
                   Verdict(d["verdict"]), list(d.get("notes", [])))


def instance_digest(inputs: Dict[str, Matrix]) -> str:
    payload = {k: inputs[k].to_pairs() for k in sorted(inputs)}
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()


def _marker(n=1):
    """Witness for a statement that fails by nonexistence rather than by value."""
    return Matrix.identity(n)


# ---------------------------------------------------------------------------
# cached building blocks (inputs are immutable and hashable)


@lru_cache(maxsize=512)
def _mcore(A, M):
    out = m_core_closed(A, M)
    return out.witness if out.exists else None


@lru_cache(maxsize=512)
def _ncore(A, N):
    out = n_core_closed(A, N)
    return out.witness if out.exists else None


@lru_cache(maxsize=512)
def _wmp(A, M, N):
    out = wmp_closed(A, M, N)
    return out.witness if out.exists else None


@lru_cache(maxsize=512)
def _group(A):
    return group_inverse(A)


@lru_cache(maxsize=512)
def _mp(A):
    return mp_inverse(A)


def _ind_le1(A) -> bool:
    return _group(A) is not None


# ---------------------------------------------------------------------------


class _Checker:
    """Collects clauses for one instance."""

    def __init__(self, tid, inputs, mode="exact", tolerance=None):
        self.tid = tid
        self.inputs = inputs
        self.mode = mode
        self.tol = None
        if mode == "float":
            self.tol = tolerance if tolerance is not None else float_tolerance(*inputs.values())
        self.digest = instance_digest(inputs)
        self.clauses: List[Clause] = []
        self.notes: List[str] = []
        self._rng = SplitMix64(int(self.digest[:16], 16))

    # clause constructors ---------------------------------------------------

    def add(self, name, holds, role=CON, residual=None, detail=""):
        if not holds and (residual is None or residual.is_zero()):
            residual = _marker()
        self.clauses.append(Clause(name, bool(holds), role, None if holds else residual, detail))
        return bool(holds)

    def _zero(self, R: Matrix) -> bool:
        if self.tol is None:
            return R.is_zero()
        a = R.to_numpy()
        return a.size == 0 or float(abs(a).max()) <= self.tol

    def equal(self, name, X, Y, role=CON, detail=""):
        """Matrix equality; a missing side (None) makes the clause false."""
        if X is None or Y is None:
            present = X if X is not None else Y
            why = "required inverse does not exist"
            return self.add(name, False, role, present, (detail + "; " if detail else "") + why)
        if X.shape != Y.shape:
            return self.add(name, False, role, None, "shape mismatch")
        D = X - Y
        return self.add(name, self._zero(D), role, D, detail)

    def equations(self, name, A, X, eqs, role=CON, detail=""):
        """``eqs`` is a sequence of (tag, weight) pairs; holds when all residuals vanish."""
        for tag, W in eqs:
            R = _weighted_residual(tag, A, X, W)
            if not self._zero(R):
                return self.add(name, False, role, R, (detail + "; " if detail else "") + "equation %s" % tag)
        return self.add(name, True, role, None, detail)

    def subset(self, name, U, V, role=CON, rows=False):
        if rows:
            ok = row_range_subset(U, V)
            gap = range_gap(U.T, V.T)
        else:
            ok = range_subset(U, V)
            gap = range_gap(U, V)
        return self.add(name, ok, role, gap)

    def hypothesis_weight(self, name, W, pd=False):
        if not W.is_square or W.rows != self.inputs["A"].rows:
            raise MalformedInputs("weight %s must be %dx%d" % ((name,) + self.inputs["A"].shape))
        if pd:
            return self.add("%s Hermitian positive definite" % name, is_positive_definite(W), HYP,
                            W - W.H if not W.is_hermitian() else _marker(W.rows))
        herm = W.is_hermitian()
        inv = is_invertible(W)
        return self.add("%s Hermitian invertible" % name, herm and inv, HYP,
                        (W - W.H) if not herm else _marker(W.rows))

    def hypothesis_index(self, name, A):
        ok = _ind_le1(A)
        return self.add("ind(%s) <= 1" % name, ok, HYP,
                        None if ok else A @ drazin_inverse(A) @ A - A,
                        "" if ok else "index %d" % ind(A))

    # randomized {1}-type representatives -------------------------------------

    def random_matrix(self, n, m=None):
        m = n if m is None else m
        return Matrix._wrap([[self._rng.rational(3) for _ in range(m)] for _ in range(n)])

    def one_inverses(self, A):
        Ap = _mp(A)
        out = [("canonical", Ap)]
        for i in range(PERTURBATIONS):
            Z = self.random_matrix(A.cols, A.rows)
            out.append(("perturbed %d" % (i + 1), Ap + Z - Ap @ A @ Z @ A @ Ap))
        return out

    # verdict -------------------------------------------------------------------

    def report(self) -> VerificationReport:
        clauses = self.clauses
        if any(c.role == HYP and not c.holds for c in clauses):
            verdict = Verdict.HYPOTHESIS_NOT_MET
        else:
            eq = [c.holds for c in clauses if c.role == EQV]
            split = len(set(eq)) > 1
            bad_con = any(c.role == CON and not c.holds for c in clauses)
            if split or bad_con:
                verdict = Verdict.FAIL
            elif any(c.role == PRINTED and not c.holds for c in clauses):
                verdict = Verdict.INTERPRETATION_NOTE
            else:
                verdict = Verdict.PASS
        return VerificationReport(self.tid, self.digest, clauses, verdict, self.notes)


def _weighted_residual(tag, A, X, W):
    tag = T(tag) if not isinstance(tag, EquationTag) else tag
    if tag is T.P3M:
        return residual(tag, A, X, M=W)
    if tag is T.P4N:
        return residual(tag, A, X, N=W)
    return residual(tag, A, X)


def _satisfies(A, X, eqs):
    return all(_weighted_residual(t, A, X, W).is_zero() for t, W in eqs)


def _constraints(A, eqs):
    out = []
    for tag, W in eqs:
        tag = T(tag) if not isinstance(tag, EquationTag) else tag
        out.append(tag_constraint(tag, A, M=W, N=W))
    return out


def solution_exists(A, linear_eqs, nonlinear_eqs):
    """Decide whether some X satisfies all equations.

    Tries the cheap candidates ``X0`` and ``X0 A X0`` from the linear part
    first (the second one is a solution for every system used here when
    ind(A) <= 1), then falls back to the polynomial solver.
    Returns (exists, witness_or_None).
    """
    cons = _constraints(A, linear_eqs)
    S = solve_constraints(cons, (A.cols, A.rows))
    if S.empty:
        return False, None
    eqs = list(linear_eqs) + list(nonlinear_eqs)
    for cand in (S.X0 @ A @ S.X0, S.X0):
        if _satisfies(A, cand, eqs):
            return True, cand
    sol = solve_quadratic(A, [], [t for t, _ in nonlinear_eqs], extra=cons)
    if sol.status is PolyStatus.UNDECIDED:
        raise Undecided("could not decide the quadratic system")
    if sol.status is PolyStatus.EMPTY:
        return False, None
    return True, sol.witnesses[0]


# ---------------------------------------------------------------------------
# input handling


def _validate(tid, inputs):
    need = SIGNATURE[tid]
    missing = [k for k in need if k not in inputs]
    if missing:
        raise MalformedInputs("%s needs inputs %s; missing %s" % (tid, ", ".join(need), ", ".join(missing)))
    out = {}
    for k, v in inputs.items():
        if not isinstance(v, Matrix):
            try:
                v = Matrix(v)
            except Exception as exc:
                raise MalformedInputs("input %s is not a matrix: %s" % (k, exc)) from exc
        out[k] = v
    A = out["A"]
    if not A.is_square:
        raise MalformedInputs("A must be square, got %dx%d" % A.shape)
    for k, v in out.items():
        if v.shape != A.shape:
            raise MalformedInputs("input %s must be %dx%d, got %dx%d" % ((k,) + A.shape + v.shape))
    return out


# ---------------------------------------------------------------------------
# characterization theorems


def _core_representations(ck, A, X, M):
    """X = Q A^(1) P = A# A A^(1,3^M) for canonical and perturbed choices."""
    n = A.rows
    Ag = _group(A)
    Ap = _mp(A)
    I = Matrix.identity(n)
    if A.is_zero():
        P = Q = Matrix.zeros(n)
    else:
        F, G = full_rank_factorize(A)
        S = p_side_solutions(A, M)
        P = F @ S.X0
        Q = F @ inverse(G @ F) @ G
    for label, A1 in ck.one_inverses(A):
        ck.equal("X = Q A^(1) P [%s]" % label, X, Q @ A1 @ P)
    X13 = one_3m(A, M)
    reps = [("canonical", X13)]
    for i in range(PERTURBATIONS):
        reps.append(("perturbed %d" % (i + 1), X13 + (I - Ap @ A) @ ck.random_matrix(n)))
    for label, Y in reps:
        ck.equations("A^(1,3^M) member [%s]" % label, A, Y, [("1", None), ("3^M", M)], INFO)
        ck.equal("X = A# A A^(1,3^M) [%s]" % label, X, Ag @ A @ Y)
    ck.equal("P = A X", P, A @ X)
    ck.equal("A# = X^2 A", Ag, X @ X @ A)
    ck.equal("Q = A# A", Q, Ag @ A)
    ck.equal("Q = X A", Q, X @ A)


def _idempotent_clause(ck, name, S, P_of, fallback_residual):
    """Holds when the parametrized idempotent family is a single point."""
    if S.empty:
        return ck.add(name, False, EQV, fallback_residual, "no idempotent with the stated properties")
    if S.dimension:
        return ck.add(name, False, EQV, P_of(S.directions[0]), "idempotent is not unique")
    return ck.add(name, True, EQV)


def _t3_7(ck, A, M):
    if not (ck.hypothesis_weight("M", M) & ck.hypothesis_index("A", A)):
        return
    Ag = _group(A)
    X = _mcore(A, M)
    # (a): R(X) = R(A) and row space of A*M force X = F C F*M
    if X is not None:
        ok_a = (_satisfies(A, X, [("1", None)]) and range_subset(X, A) and range_subset(A, X)
                and row_range_subset(X, A.H @ M) and row_range_subset(A.H @ M, X))
        ck.add("(a) AXA = A, R(X) = R(A), R(X^T) = R((A*M)^T) solvable", ok_a, EQV,
               residual(T.P1, A, X))
    else:
        ck.add("(a) AXA = A, R(X) = R(A), R(X^T) = R((A*M)^T) solvable", False, EQV,
               range_gap(Ag.T, (A.H @ M).T), "F*MF singular; witness: row-range gap of A#")
    miss = _weighted_residual(T.P3M, A, Ag, M)
    ok, W = solution_exists(A, [("1", None), ("3^M", M), ("6", None)], [("2", None), ("7", None)])
    ck.add("(b) X in A{1,2,3^M,6,7} exists", ok, EQV, miss)
    ok, W = solution_exists(A, [("3^M", M), ("6", None)], [("7", None)])
    ck.add("(c) X in A{3^M,6,7} exists", ok, EQV, miss)
    ck.add("(d) A{1,3^M} nonempty", one_3m(A, M) is not None, EQV,
           _weighted_residual(T.P3M, A, _mp(A), M))
    F = full_rank_factorize(A)[0] if not A.is_zero() else None
    if F is None:
        ck.add("(e) unique idempotent pair", True, EQV)
    else:
        S = p_side_solutions(A, M)
        P0 = A @ Ag
        _idempotent_clause(ck, "(e) unique idempotent pair", S, lambda B: F @ B,
                           (M @ P0).H - M @ P0)
    if X is not None and all(c.holds for c in ck.clauses if c.role == EQV):
        _core_representations(ck, A, X, M)


def _t3_9(ck, A, N):
    if not (ck.hypothesis_weight("N", N) & ck.hypothesis_index("A", A)):
        return
    n = A.rows
    Ag = _group(A)
    Ap = _mp(A)
    X = _ncore(A, N)
    name_a = "(a) AXA = A, R(NX) = R(A*), R(X^T) = R(A^T) solvable"
    if X is not None:
        ok_a = (_satisfies(A, X, [("1", None)]) and range_subset(N @ X, A.H) and range_subset(A.H, N @ X)
                and row_range_subset(X, A) and row_range_subset(A, X))
        ck.add(name_a, ok_a, EQV, residual(T.P1, A, X))
    else:
        ck.add(name_a, False, EQV, range_gap(N @ Ag, A.H), "G N^-1 G* singular; witness: range gap of N A#")
    miss = _weighted_residual(T.P4N, A, Ag, N)
    ok, _ = solution_exists(A, [("1", None), ("4^N", N), ("8", None)], [("2", None), ("9", None)])
    ck.add("(b) X in A{1,2,4^N,8,9} exists", ok, EQV, miss)
    ok, _ = solution_exists(A, [("4^N", N), ("8", None)], [("9", None)])
    ck.add("(c) X in A{4^N,8,9} exists", ok, EQV, miss)
    ck.add("(d) A{1,4^N} nonempty", one_4n(A, N) is not None, EQV,
           _weighted_residual(T.P4N, A, Ap, N))
    if A.is_zero():
        ck.add("(e) unique idempotent pair", True, EQV)
        P = Q = Matrix.zeros(n)
    else:
        F, G = full_rank_factorize(A)
        S = q_side_solutions(A, N)
        Q0 = Ag @ A
        _idempotent_clause(ck, "(e) unique idempotent pair", S, lambda B: B @ G, (N @ Q0).H - N @ Q0)
        P = F @ inverse(G @ F) @ G
        Q = None if S.empty else S.X0 @ G
    if X is None or not all(c.holds for c in ck.clauses if c.role == EQV):
        return
    for label, A1 in ck.one_inverses(A):
        ck.equal("X = Q A^(1) P [%s]" % label, X, Q @ A1 @ P)
    X14 = one_4n(A, N)
    I = Matrix.identity(n)
    reps = [("canonical", X14)]
    for i in range(PERTURBATIONS):
        reps.append(("perturbed %d" % (i + 1), X14 + ck.random_matrix(n) @ (I - A @ Ap)))
    for label, Y in reps:
        ck.equations("A^(1,4^N) member [%s]" % label, A, Y, [("1", None), ("4^N", N)], INFO)
        ck.equal("X = A^(1,4^N) A A# [%s]" % label, X, Y @ A @ Ag)
    ck.equal("A# = A X^2", Ag, A @ X @ X)
    ck.equal("P = A A#", P, A @ Ag)
    ck.equal("P = A X", P, A @ X)
    ck.equal("Q = X A", Q, X @ A)
    ck.equal("QA = X A", Q @ A, X @ A, PRINTED,
             "printed form; the idempotent itself equals XA, so QA = XA only when XA^2 = XA")


def _t3_13(ck, A, M, N):
    if not (ck.hypothesis_weight("M", M) & ck.hypothesis_weight("N", N)):
        return
    X = _wmp(A, M, N)
    Ap = _mp(A)
    if X is not None:
        ck.add("(a) weighted MP exists", True, EQV)
    else:
        R = _weighted_residual(T.P3M, A, Ap, M)
        if R.is_zero():
            R = _weighted_residual(T.P4N, A, Ap, N)
        ck.add("(a) weighted MP exists", False, EQV, R)
    if A.is_zero():
        ck.add("(b) unique idempotent pair", True, EQV)
        return
    F, G = full_rank_factorize(A)
    SP, SQ = p_side_solutions(A, M), q_side_solutions(A, N)
    P0, Q0 = A @ Ap, Ap @ A
    ok_p = _idempotent_clause(ck, "(b.P) unique idempotent P", SP, lambda B: F @ B, (M @ P0).H - M @ P0)
    ok_q = _idempotent_clause(ck, "(b.Q) unique idempotent Q", SQ, lambda B: B @ G, (N @ Q0).H - N @ Q0)
    # the two halves are recorded separately; the equivalent clause is their conjunction
    for c in ck.clauses[-2:]:
        c.role = INFO
    ck.add("(b) unique idempotent pair", ok_p and ok_q, EQV,
           next((c.residual for c in ck.clauses[-2:] if not c.holds), None))
    if X is None or not (ok_p and ok_q):
        return
    P, Q = F @ SP.X0, SQ.X0 @ G
    for label, A1 in ck.one_inverses(A):
        ck.equal("X = Q A^(1) P [%s]" % label, X, Q @ A1 @ P)
    ck.equal("P = A X", P, A @ X)
    ck.equal("Q = X A", Q, X @ A)


def _t3_14(ck, A, M):
    if not (ck.hypothesis_weight("M", M) & ck.hypothesis_index("A", A)):
        return
    ck.notes.append(NONEMPTY_NOTE)
    nonempty = one_3m(A, M) is not None
    ck.add("A{1,3^M} nonempty", nonempty, HYP, _weighted_residual(T.P3M, A, _mp(A), M))
    if not nonempty:
        return
    X = _mcore(A, M)
    Ag = _group(A)
    target = A @ A @ X
    ck.equal("(a) (X)# = A^2 X", _group(X), target)
    ck.equal("(a) (X)+_{M,M} = A^2 X", _wmp(X, M, M), target)
    ck.equal("(a) (X)^{core,M} = A^2 X", _mcore(X, M), target)
    ck.equal("(a) (X)^{M,dual} = A^2 X", _ncore(X, M), target)
    ck.equal("(b) (A#)^{core,M} = A^2 X", _mcore(Ag, M), target)
    ck.equal("(c) A# = X^2 A", Ag, X @ X @ A)
    for p in range(1, POWERS + 1):
        ck.equal("(d) (A^%d)^{core,M} = X^%d" % (p, p), _mcore(A ** p, M), X ** p)
    Y1 = _mcore(X, M)
    Y2 = _mcore(Y1, M) if Y1 is not None else None
    ck.equal("(e) triple core returns X", Y2, X)


def _t3_15(ck, A, N):
    if not (ck.hypothesis_weight("N", N) & ck.hypothesis_index("A", A)):
        return
    ck.notes.append(NONEMPTY_NOTE)
    nonempty = one_4n(A, N) is not None
    ck.add("A{1,4^N} nonempty", nonempty, HYP, _weighted_residual(T.P4N, A, _mp(A), N))
    if not nonempty:
        return
    Y = _ncore(A, N)
    Ag = _group(A)
    target = Y @ A @ A
    ck.equal("(a) (Y)# = Y A^2", _group(Y), target)
    ck.equal("(a) (Y)+_{N,N} = Y A^2", _wmp(Y, N, N), target)
    ck.equal("(a) (Y)^{N,dual} = Y A^2", _ncore(Y, N), target)
    ck.equal("(a) (Y)^{core,N} = Y A^2", _mcore(Y, N), target)
    ck.equal("(b) (A#)^{N,dual} = Y A^2", _ncore(Ag, N), target)
    ck.equal("(c) A# = A Y^2", Ag, A @ Y @ Y)
    for p in range(1, POWERS + 1):
        ck.equal("(d) (A^%d)^{N,dual} = Y^%d" % (p, p), _ncore(A ** p, N), Y ** p)
    Z1 = _ncore(Y, N)
    Z2 = _ncore(Z1, N) if Z1 is not None else None
    ck.equal("(e) triple dual core returns Y", Z2, Y)


def _t3_16cor(ck, A, M, N):
    ok = ck.hypothesis_weight("M", M) & ck.hypothesis_weight("N", N) & ck.hypothesis_index("A", A)
    if not ok:
        return
    ck.notes.append("hypothesis read as: A{1,3^M} and A{1,4^N} are both nonempty")
    h3 = ck.add("A{1,3^M} nonempty", one_3m(A, M) is not None, HYP,
                _weighted_residual(T.P3M, A, _mp(A), M))
    h4 = ck.add("A{1,4^N} nonempty", one_4n(A, N) is not None, HYP,
                _weighted_residual(T.P4N, A, _mp(A), N))
    if not (h3 and h4):
        return
    X, Y, Ag = _mcore(A, M), _ncore(A, N), _group(A)
    ck.equal("(a) (A#)+_{M,N} = Y A^3 X", _wmp(Ag, M, N), Y @ (A ** 3) @ X)
    ck.equal("(b) A# = X A Y", Ag, X @ A @ Y)


def _weighted_ep(A, M, N):
    Ag = _group(A)
    W = _wmp(A, M, N)
    return W is not None and W == Ag


def _ep_residual(A, M, N):
    Ag = _group(A)
    W = _wmp(A, M, N)
    if W is not None:
        return W - Ag
    R = _weighted_residual(T.P3M, A, _mp(A), M)
    return R if not R.is_zero() else _weighted_residual(T.P4N, A, _mp(A), N)


def _t3_17(ck, A, M):
    if not (ck.hypothesis_weight("M", M) & ck.hypothesis_index("A", A)):
        return
    Ag = _group(A)
    ck.add("(a) weighted-EP w.r.t. (M,M)", _weighted_ep(A, M, M), EQV, _ep_residual(A, M, M))
    ok, _ = solution_exists(A, [("3^M", M), ("8", None)], [("9", None)])
    ck.add("(b) (MAX)* = MAX, A^2X = A, X^2A = X solvable", ok, EQV, _weighted_residual(T.P3M, A, Ag, M))
    ok, _ = solution_exists(A, [("4^N", M), ("6", None)], [("7", None)])
    ck.add("(c) (MXA)* = MXA, XA^2 = A, AX^2 = X solvable", ok, EQV, _weighted_residual(T.P4N, A, Ag, M))
    Xm, Xd = _mcore(A, M), _ncore(A, M)
    ok_d = Xm is not None and Xd is not None and Xm == Ag == Xd
    ck.add("(d) A^{core,M} = A# = A^{M,dual}", ok_d, EQV,
           (Xm - Ag) if Xm is not None and Xm != Ag else (Xd - Ag) if Xd is not None else None)
    W = _wmp(A, M, M)
    ok_e = Xm is not None and W is not None and Xd is not None and Xm == W == Xd
    ck.add("(e) A^{core,M} = A+_{M,M} = A^{M,dual}", ok_e, EQV,
           (Xm - Xd) if Xm is not None and Xd is not None else _ep_residual(A, M, M))
    rc = weighted_ep_range_clauses(A, M, M)
    Mi, Ah = inverse(M), A.H
    ck.add("(f) R(A^T) in R((A*M)^T)", rc["T3_17(f)"], EQV, range_gap(A.T, (Ah @ M).T))
    ck.add("(g) R(A) in R(M^-1 A*)", rc["T3_17(g)"], EQV, range_gap(A, Mi @ Ah))
    ck.add("(h) R(A*) in R(MA)", rc["T3_17(h)"], EQV, range_gap(Ah, M @ A))


def _t3_18(ck, A, M, N):
    ok = ck.hypothesis_weight("M", M) & ck.hypothesis_weight("N", N) & ck.hypothesis_index("A", A)
    if not ok:
        return
    Ag = _group(A)
    Mi, Ni, Ah = inverse(M), inverse(N), A.H
    ck.add("(a) weighted-EP w.r.t. (M,N)", _weighted_ep(A, M, N), EQV, _ep_residual(A, M, N))
    ok, _ = solution_exists(A, [("3^M", M), ("3^M", N), ("8", None)], [("9", None)])
    R = _weighted_residual(T.P3M, A, Ag, M)
    ck.add("(b) (MAX)*, (NAX)* Hermitian, A^2X = A, X^2A = X solvable", ok, EQV,
           R if not R.is_zero() else _weighted_residual(T.P3M, A, Ag, N))
    ok, _ = solution_exists(A, [("4^N", M), ("4^N", N), ("6", None)], [("7", None)])
    R = _weighted_residual(T.P4N, A, Ag, M)
    ck.add("(c) (MXA)*, (NXA)* Hermitian, XA^2 = A, AX^2 = X solvable", ok, EQV,
           R if not R.is_zero() else _weighted_residual(T.P4N, A, Ag, N))

    def gap2(*pairs):
        for U, V, rows in pairs:
            G = range_gap(U.T, V.T) if rows else range_gap(U, V)
            if not G.is_zero():
                return G
        return None

    rc = weighted_ep_range_clauses(A, M, N)
    ck.add("(d) R(A) in R(N^-1 A*) and R(A^T) in R((A*M)^T)", rc["T3_18(d)"], EQV,
           gap2((A, Ni @ Ah, False), (A, Ah @ M, True)))
    ck.add("(e) R((AN^-1)^T) in R((A*)^T) and R(A) in R(M^-1 A*)", rc["T3_18(e)"], EQV,
           gap2((A @ Ni, Ah, True), (A, Mi @ Ah, False)))
    ck.add("(f) R(N^-1 A*) in R(A) and R((A*)^T) in R((AM^-1)^T)", rc["T3_18(f)"], EQV,
           gap2((Ni @ Ah, A, False), (Ah, A @ Mi, True)))
    ck.add("(g) R((A*)^T) in R((AN^-1)^T) and R(A) in R(AM)", rc["T3_18(g)"], EQV,
           gap2((Ah, A @ Ni, True), (A, A @ M, False)))


def _t3_19(ck, A, M, N):
    ok = (ck.hypothesis_weight("M", M, pd=True) & ck.hypothesis_weight("N", N, pd=True)
          & ck.hypothesis_index("A", A))
    if not ok:
        return
    Ag = _group(A)
    Xm, Xn = _mcore(A, M), _ncore(A, N)
    ck.add("(a) weighted-EP w.r.t. (M,N)", _weighted_ep(A, M, N), EQV, _ep_residual(A, M, N))

    def powers_clause(name, base):
        for p in range(1, POWERS + 1):
            Bp = base ** p
            D = Bp @ Xm - Xn @ Bp
            if not D.is_zero():
                return ck.add(name, False, EQV, D, "first failure at n = %d" % p)
        return ck.add(name, True, EQV, None, "checked n = 1..%d" % POWERS)

    powers_clause("(b) A^n A^{core,M} = A^{N,dual} A^n", A)
    powers_clause("(c) (A#)^n A^{core,M} = A^{N,dual} (A#)^n", Ag)
    L, R = _mcore(Xm, M), _ncore(Xn, N)
    ck.add("(d) (A^{core,M})^{core,M} = (A^{N,dual})^{N,dual}",
           L is not None and R is not None and L == R, EQV,
           (L - R) if L is not None and R is not None else None)
    ck.add("(e) A^{core,M} = A^{N,dual}", Xm == Xn, EQV, Xm - Xn)


# ---------------------------------------------------------------------------
# lemmas and propositions


def _l2_6(ck, A):
    A2 = A @ A
    g = _group(A)
    D = drazin_inverse(A)
    ck.add("group inverse exists", g is not None, EQV, A @ D @ A - A)
    right = solve_general(A2, A)
    left = solve_general(A2.T, A.T)
    gapr = A - A2 @ _mp(A2) @ A
    gapl = A - A @ _mp(A2) @ A2
    ck.add("A = A^2 X solvable", right.solvable, INFO, gapr)
    ck.add("A = Y A^2 solvable", left.solvable, INFO, gapl)
    ck.add("A = A^2 X = Y A^2 solvable", right.solvable and left.solvable, EQV,
           gapr if not right.solvable else gapl)
    ck.add("ind(A) <= 1 by rank chain", ind(A) <= 1, INFO, A @ D @ A - A)


def _c2_7(ck, A):
    if not ck.hypothesis_index("A", A):
        return
    g = _group(A)
    A2 = A @ A
    right = solve_general(A2, A)
    left = solve_general(A2.T, A.T)
    xs = [("particular", right.particular)]
    ys = [("particular", left.particular.T)]
    for i, B in enumerate(right.null_basis[:2]):
        xs.append(("shifted %d" % (i + 1), right.particular + (B @ ck.random_matrix(1, A.cols))))
    for i, B in enumerate(left.null_basis[:2]):
        ys.append(("shifted %d" % (i + 1), (left.particular + B @ ck.random_matrix(1, A.rows)).T))
    for (lx, X), (ly, Y) in zip(xs, ys):
        ck.equations("A = A^2 X [%s]" % lx, A, X, [("8", None)], INFO)
        ck.equations("A = Y A^2 [%s]" % ly, A, Y, [("6", None)], INFO)
        ck.equal("A# = A X^2 [%s]" % lx, g, A @ X @ X)
        ck.equal("A# = Y A X [%s/%s]" % (ly, lx), g, Y @ A @ X)
        ck.equal("A# = Y^2 A [%s]" % ly, g, Y @ Y @ A)


def _candidates(ck, A, linear_eqs, nonlinear_eqs, given=None):
    """Witnesses for a universally quantified implication over X."""
    if given is not None:
        return [("given", given)]
    cons = _constraints(A, linear_eqs)
    S = solve_constraints(cons, (A.cols, A.rows))
    if S.empty:
        return []
    pts = [S.X0]
    for _ in range(3):
        if not S.directions:
            break
        pts.append(S.point([ck._rng.rational(3) for _ in S.directions]))
    eqs = list(linear_eqs) + list(nonlinear_eqs)
    out = []
    seen = set()
    for i, P in enumerate(pts):
        for label, C in (("point %d" % i, P), ("point %d squeezed" % i, P @ A @ P)):
            if C not in seen and _satisfies(A, C, eqs):
                seen.add(C)
                out.append((label, C))
    if A.rows <= 3:
        sol = solve_quadratic(A, [], [t for t, _ in nonlinear_eqs], extra=cons)
        for j, C in enumerate(sol.witnesses):
            if C not in seen and _satisfies(A, C, eqs):
                seen.add(C)
                out.append(("solver %d" % j, C))
    return out


def _implication(ck, A, premise, linear_eqs, nonlinear_eqs, conclude, given):
    cands = _candidates(ck, A, linear_eqs, nonlinear_eqs, given)
    if given is not None:
        ok = ck.equations("X in A{%s}" % premise, A, given, list(linear_eqs) + list(nonlinear_eqs), HYP)
        if not ok:
            return
    elif not cands:
        ck.add("A{%s} nonempty" % premise, False, HYP, _marker(A.rows), "no member found")
        return
    for label, X in cands:
        conclude(label, X)


def _p3_2(ck, A, X=None):
    _implication(ck, A, "6,7", [("6", None)], [("7", None)],
                 lambda label, Y: ck.equations("X in A{1,2} [%s]" % label, A, Y, [("1", None), ("2", None)]),
                 X)


def _p3_5(ck, A, X=None):
    _implication(ck, A, "8,9", [("8", None)], [("9", None)],
                 lambda label, Y: ck.equations("X in A{1,2} [%s]" % label, A, Y, [("1", None), ("2", None)]),
                 X)


def _p3_11(ck, A, M, X=None):
    if not (ck.hypothesis_weight("M", M) & ck.hypothesis_index("A", A)):
        return
    core = _mcore(A, M)
    _implication(ck, A, "2,3^M,6", [("3^M", M), ("6", None)], [("2", None)],
                 lambda label, Y: ck.equal("X = A^{core,M} [%s]" % label, Y, core), X)


def _p3_12(ck, A, M, X=None):
    if not (ck.hypothesis_weight("M", M) & ck.hypothesis_index("A", A)):
        return
    core = _mcore(A, M)
    _implication(ck, A, "1,3^M,7", [("1", None), ("3^M", M)], [("7", None)],
                 lambda label, Y: ck.equal("X = A^{core,M} [%s]" % label, Y, core), X)


def _l3_8(ck, A, M):
    if not ck.hypothesis_weight("M", M):
        return
    Mi = inverse(M)
    B = Mi @ A.H @ M
    X = _mcore(A, M)
    Y = _ncore(B, M)
    ck.add("A^{core,M} exists", X is not None, EQV, _weighted_residual(T.P3M, A, _mp(A), M))
    ck.add("(M^-1 A* M)^{M,dual} exists", Y is not None, EQV,
           _weighted_residual(T.P4N, B, _mp(B), M))
    if X is not None and Y is not None:
        ck.equal("(M^-1 A* M)^{M,dual} = M^-1 (A^{core,M})* M", Y, Mi @ X.H @ M)
        ck.equal("round trip recovers A^{core,M}", Mi @ Y.H @ M, X)


# ---------------------------------------------------------------------------
# reverse-order laws


def _need_core(ck, name, A, W, dual=False):
    X = _ncore(A, W) if dual else _mcore(A, W)
    label = ("%s^{N,dual} exists" if dual else "%s^{core,M} exists") % name
    res = None
    if X is None:
        res = (_weighted_residual(T.P4N, A, _mp(A), W) if dual
               else _weighted_residual(T.P3M, A, _mp(A), W)) if _ind_le1(A) else A @ drazin_inverse(A) @ A - A
    ck.add(label, X is not None, HYP, res)
    return X


def _rol4_1(ck, A, B, M):
    if not ck.hypothesis_weight("M", M):
        return
    XA, XB = _need_core(ck, "A", A, M), _need_core(ck, "B", B, M)
    if XA is None or XB is None:
        return
    if not (ck.equal("X_A B = X_B A", XA @ B, XB @ A, HYP) & ck.equal("A X_A = B X_A", A @ XA, B @ XA, HYP)):
        return
    XAB = _mcore(A @ B, M)
    ck.equal("(AB)^{core,M} = X_B X_A", XAB, XB @ XA)
    ck.equal("X_B X_A = X_A^2", XB @ XA, XA @ XA)
    ck.equal("X_A^2 = (A^2)^{core,M}", XA @ XA, _mcore(A @ A, M))


def _rol4_2(ck, A, B, N):
    if not ck.hypothesis_weight("N", N):
        return
    YA, YB = _need_core(ck, "A", A, N, True), _need_core(ck, "B", B, N, True)
    if YA is None or YB is None:
        return
    if not (ck.equal("A Y_B = B Y_A", A @ YB, B @ YA, HYP) & ck.equal("Y_B B = Y_B A", YB @ B, YB @ A, HYP)):
        return
    ck.equal("(AB)^{N,dual} = Y_B Y_A", _ncore(A @ B, N), YB @ YA)
    ck.equal("Y_B Y_A = Y_B^2", YB @ YA, YB @ YB)
    ck.equal("Y_B^2 = (B^2)^{N,dual}", YB @ YB, _ncore(B @ B, N))


def _rol_necessary(ck, A, B, M, XA, XB, role=CON):
    AB, BA = A @ B, B @ A
    a1 = range_subset(XB @ A, AB)
    a2 = range_subset(AB, BA)
    C = A @ B @ XB
    Z = B @ XB @ XA
    ok_b = _satisfies(C, Z, [("3^M", M), ("6", None)])
    if role is None:
        return a1 and a2, ok_b
    ck.add("(a) R(X_B A) in R(AB)", a1, role, range_gap(XB @ A, AB))
    ck.add("(a) R(AB) in R(BA)", a2, role, range_gap(AB, BA))
    ck.equations("(b) B X_B X_A in C{3^M,6}, C = A B X_B", C, Z, [("3^M", M), ("6", None)], role)
    return a1 and a2, ok_b


def _rol4_3(ck, A, B, M):
    if not ck.hypothesis_weight("M", M):
        return
    XA, XB = _need_core(ck, "A", A, M), _need_core(ck, "B", B, M)
    if XA is None or XB is None:
        return
    XAB = _need_core(ck, "AB", A @ B, M)
    if XAB is None:
        return
    if not ck.equal("(AB)^{core,M} = X_B X_A", XAB, XB @ XA, HYP):
        return
    _rol_necessary(ck, A, B, M, XA, XB)


def _rol4_4(ck, A, B, M):
    if not (ck.hypothesis_weight("M", M) & ck.hypothesis_index("A", A) & ck.hypothesis_index("B", B)):
        return
    if not ck.equal("A^2 = BA", A @ A, B @ A, HYP):
        return
    XA, XB = _need_core(ck, "A", A, M), _need_core(ck, "B", B, M)
    if XA is None or XB is None:
        return
    AB = A @ B
    ck.add("(a) ind(AB) <= 1", _ind_le1(AB), CON, None if _ind_le1(AB) else AB @ drazin_inverse(AB) @ AB - AB)
    ck.equal("(b) (AB)^{core,M} = X_B X_A", _mcore(AB, M), XB @ XA)


def _rol4_5(ck, A, B, N):
    if not (ck.hypothesis_weight("N", N) & ck.hypothesis_index("A", A) & ck.hypothesis_index("B", B)):
        return
    if not ck.equal("B^2 = BA", B @ B, B @ A, HYP):
        return
    YA, YB = _need_core(ck, "A", A, N, True), _need_core(ck, "B", B, N, True)
    if YA is None or YB is None:
        return
    AB = A @ B
    ck.add("(a) ind(AB) <= 1", _ind_le1(AB), CON, None if _ind_le1(AB) else AB @ drazin_inverse(AB) @ AB - AB)
    ck.equal("(b) (AB)^{N,dual} = Y_B Y_A", _ncore(AB, N), YB @ YA)


def _rol4_6(ck, A, B, M):
    ok = (ck.hypothesis_weight("M", M) & ck.hypothesis_index("A", A) & ck.hypothesis_index("B", B)
          & ck.hypothesis_index("AB", A @ B))
    if not ok:
        return
    XA, XB = _mcore(A, M), _mcore(B, M)
    I = Matrix.identity(A.rows)
    part_a = XA is not None and B.H @ B == I and range_subset(B.H @ XA, XA)
    part_b = XB is not None and A.H @ A == I and range_subset(A, B)
    ck.add("(a) premise: B unitary, R(B* X_A) in R(X_A)", part_a, INFO,
           (B.H @ B - I) if B.H @ B != I else (range_gap(B.H @ XA, XA) if XA is not None else None))
    ck.add("(b) premise: A unitary, R(A) in R(B)", part_b, INFO,
           (A.H @ A - I) if A.H @ A != I else (range_gap(A, B) if XB is not None else None))
    ck.add("some premise holds", part_a or part_b, HYP)
    if not (part_a or part_b):
        return
    XAB = _mcore(A @ B, M)
    if part_a:
        ck.equal("(a) (AB)^{core,M} = B* X_A", XAB, B.H @ XA)
    if part_b:
        ck.equal("(b) (AB)^{core,M} = X_B A*", XAB, XB @ A.H)


def _rol4_7(ck, A, B, M):
    ok = (ck.hypothesis_weight("M", M) & ck.hypothesis_index("A", A) & ck.hypothesis_index("B", B)
          & ck.hypothesis_index("AB", A @ B))
    if not ok:
        return
    AB = A @ B
    U, V = A.H @ M @ B, M @ B @ A.H
    rng_ok = range_subset(U, V) and range_subset(V, U)
    ck.add("R(A*MB) = R(MBA*)", rng_ok, HYP, range_gap(U, V) if not range_subset(U, V) else range_gap(V, U))
    if not rng_ok:
        return
    XA, XB = _need_core(ck, "A", A, M), _need_core(ck, "B", B, M)
    XAB = _need_core(ck, "AB", AB, M)
    if XA is None or XB is None or XAB is None:
        return
    ck.equal("(AB)^{core,M} = X_B X_A", XAB, XB @ XA, EQV)
    a_ok, b_ok = _rol_necessary(ck, A, B, M, XA, XB, role=None)
    L = B @ XB @ A @ XA
    R = A @ XA @ B @ XB
    comm1 = M @ L == M @ R
    comm2 = L == R
    ck.add("(a) R(X_B A) in R(AB) in R(BA)", a_ok, INFO,
           range_gap(XB @ A, AB) if not range_subset(XB @ A, AB) else range_gap(AB, B @ A))
    ck.add("(b) B X_B A X_A = A X_A B X_B (either form)", comm1 or comm2, INFO, L - R)
    ck.add("(a) and (b)", a_ok and (comm1 or comm2), EQV,
           (L - R) if not (comm1 or comm2) else range_gap(XB @ A, AB) if not range_subset(XB @ A, AB)
           else range_gap(AB, B @ A))


_DISPATCH = {
    TheoremId.T3_7: lambda ck, i: _t3_7(ck, i["A"], i["M"]),
    TheoremId.T3_9: lambda ck, i: _t3_9(ck, i["A"], i["N"]),
    TheoremId.T3_13: lambda ck, i: _t3_13(ck, i["A"], i["M"], i["N"]),
    TheoremId.T3_14: lambda ck, i: _t3_14(ck, i["A"], i["M"]),
    TheoremId.T3_15: lambda ck, i: _t3_15(ck, i["A"], i["N"]),
    TheoremId.T3_16cor: lambda ck, i: _t3_16cor(ck, i["A"], i["M"], i["N"]),
    TheoremId.T3_17: lambda ck, i: _t3_17(ck, i["A"], i["M"]),
    TheoremId.T3_18: lambda ck, i: _t3_18(ck, i["A"], i["M"], i["N"]),
    TheoremId.T3_19: lambda ck, i: _t3_19(ck, i["A"], i["M"], i["N"]),
    TheoremId.ROL4_1: lambda ck, i: _rol4_1(ck, i["A"], i["B"], i["M"]),
    TheoremId.ROL4_2: lambda ck, i: _rol4_2(ck, i["A"], i["B"], i["N"]),
    TheoremId.ROL4_3: lambda ck, i: _rol4_3(ck, i["A"], i["B"], i["M"]),
    TheoremId.ROL4_4: lambda ck, i: _rol4_4(ck, i["A"], i["B"], i["M"]),
    TheoremId.ROL4_5: lambda ck, i: _rol4_5(ck, i["A"], i["B"], i["N"]),
    TheoremId.ROL4_6: lambda ck, i: _rol4_6(ck, i["A"], i["B"], i["M"]),
    TheoremId.ROL4_7: lambda ck, i: _rol4_7(ck, i["A"], i["B"], i["M"]),
    TheoremId.L2_6: lambda ck, i: _l2_6(ck, i["A"]),
    TheoremId.C2_7: lambda ck, i: _c2_7(ck, i["A"]),
    TheoremId.P3_2: lambda ck, i: _p3_2(ck, i["A"], i.get("X")),
    TheoremId.P3_5: lambda ck, i: _p3_5(ck, i["A"], i.get("X")),
    TheoremId.P3_11: lambda ck, i: _p3_11(ck, i["A"], i["M"], i.get("X")),
    TheoremId.P3_12: lambda ck, i: _p3_12(ck, i["A"], i["M"], i.get("X")),
    TheoremId.L3_8: lambda ck, i: _l3_8(ck, i["A"], i["M"]),
}


def verify_theorem(theorem, inputs: Dict[str, Matrix], mode="exact", tolerance=None) -> VerificationReport:
    """Instantiate every clause of ``theorem`` on ``inputs`` and judge it.

    ``inputs`` maps names from the theorem signature (A, B, M, N; the
    single-matrix propositions also accept an explicit X) to matrices.
    """
    tid = parse_theorem(theorem)
    if mode not in ("exact", "float"):
        raise ValueError("mode must be 'exact' or 'float'")
    if mode == "exact" and tolerance is not None:
        raise ValueError("exact mode takes no tolerance")
    inputs = _validate(tid, inputs)
    ck = _Checker(tid, inputs, mode, tolerance)
    _DISPATCH[tid](ck, inputs)
    return ck.report()


def verify_reverse_order_law(theorem, A: Matrix, B: Matrix, weight: Matrix, **kw) -> VerificationReport:
    tid = parse_theorem(theorem)
    if tid not in ROL_IDS:
        raise MalformedInputs("%s is not a reverse-order law" % tid)
    return verify_theorem(tid, {"A": A, "B": B, SIGNATURE[tid][2]: weight}, **kw)


__all__ = [
    "Verdict", "Clause", "VerificationReport", "verify_theorem", "verify_reverse_order_law",
    "instance_digest", "solution_exists", "ROLES",
]

"""Exact solvers for the matrix equations in X.

Linear constraints (``AXA = A``, ``(MAX)* = MAX`` and friends) are vectorized
into a real linear system in the real and imaginary parts of X.  Because
conjugation is only real-linear, a constraint ``K vec(X) + K' vec(conj X) = c``
becomes the block system

    [[Kr + K'r, K'i - Ki], [Ki + K'i, Kr - K'r]] [xr; xi] = [cr; ci].

Quadratic constraints (``XAX = X``, ``AX^2 = X``, ``X^2A = X``) are handled
by substituting the affine solution set of the linear part and repeatedly
extracting linear consequences; a Groebner basis is the last resort.
"""

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations_with_replacement
from typing import Optional, Sequence, Tuple

from .equations import NONLINEAR, EquationTag, parse_tags
from .errors import DimensionMismatch, MissingContext, Undecided, UnsupportedTag
from .matrix import (Matrix, SolveStatus, commutation, hstack, kron, solve_general, unvec, vec,
                     vstack)
from .scalar import ONE, ZERO, im_part, make, re_part

T = EquationTag


@dataclass(frozen=True)
class Term:
    """``left @ X @ right`` or, with ``star``, ``left @ X* @ right``."""

    left: Matrix
    right: Matrix
    star: bool = False


@dataclass(frozen=True)
class Constraint:
    terms: Tuple[Term, ...]
    rhs: Matrix


def hermitian_constraint(K: Matrix, L: Matrix) -> Constraint:
    """``(K X L)* = K X L``."""
    zero = Matrix.zeros(K.rows, L.cols)
    return Constraint((Term(L.H, K.H, True), Term(-K, L)), zero)


def tag_constraint(tag, A: Matrix, M=None, N=None, k=None) -> Constraint:
    tag = parse_tags([tag])[0]
    n = A.rows
    I_r, I_c = Matrix.identity(A.rows), Matrix.identity(A.cols)
    if tag in NONLINEAR:
        raise UnsupportedTag("equation %s is not linear in X" % tag)
    if tag is T.P1:
        return Constraint((Term(A, A),), A)
    if tag is T.P3:
        return hermitian_constraint(A, I_r)
    if tag is T.P4:
        return hermitian_constraint(I_c, A)
    if tag is T.P5:
        return Constraint((Term(A, I_r), Term(-I_c, A)), Matrix.zeros(n))
    if tag in (T.P1k, T.P6k):
        if k is None:
            raise MissingContext("equation %s needs k" % tag)
        Ak = A ** k
        return Constraint((Term(I_c, Ak @ A),), Ak)
    if tag is T.P3M:
        if M is None:
            raise MissingContext("equation 3^M needs M")
        return hermitian_constraint(M @ A, I_r)
    if tag is T.P4N:
        if N is None:
            raise MissingContext("equation 4^N needs N")
        return hermitian_constraint(N, A)
    if tag is T.P6:
        return Constraint((Term(I_c, A @ A),), A)
    if tag is T.P8:
        return Constraint((Term(A @ A, I_r),), A)
    raise UnsupportedTag(str(tag))


@dataclass(frozen=True)
class AffineSet:
    """Real-affine family ``X0 + sum_i t_i B_i`` (t real); empty when ``X0`` is None."""

    X0: Optional[Matrix]
    directions: Tuple[Matrix, ...] = field(default_factory=tuple)

    @property
    def empty(self):
        return self.X0 is None

    @property
    def status(self) -> SolveStatus:
        if self.X0 is None:
            return SolveStatus.NO_SOLUTION
        return SolveStatus.INFINITE if self.directions else SolveStatus.UNIQUE

    @property
    def dimension(self):
        return len(self.directions)

    def point(self, coeffs) -> Matrix:
        X = self.X0
        for c, B in zip(coeffs, self.directions):
            if c:
                X = X + B.scale(c)
        return X


def _vectorize(constraints: Sequence[Constraint], shape):
    """Stack constraints into (K, Kbar, c) over vec(X) and vec(conj X)."""
    p, q = shape
    Kc = commutation(p, q)
    Ks, Kbars, cs = [], [], []
    for con in constraints:
        K = Kb = None
        for t in con.terms:
            inner = (q, p) if t.star else (p, q)
            if (t.left.cols, t.right.rows) != inner:
                raise DimensionMismatch("constraint term does not conform to X of shape %s" % (shape,))
            block = kron(t.right.T, t.left)
            if t.star:
                block = block @ Kc
                Kb = block if Kb is None else Kb + block
            else:
                K = block if K is None else K + block
        rows = vec(con.rhs).rows
        Ks.append(K if K is not None else Matrix.zeros(rows, p * q))
        Kbars.append(Kb if Kb is not None else Matrix.zeros(rows, p * q))
        cs.append(vec(con.rhs))
    return vstack(*Ks), vstack(*Kbars), vstack(*cs)


def _from_split(v: Matrix, p, q) -> Matrix:
    """Complex X from the stacked real vector [vec(Xr); vec(Xi)]."""
    pq = p * q
    re = [v[i, 0] for i in range(pq)]
    im = [v[pq + i, 0] for i in range(pq)]
    flat = Matrix._wrap([[make(a, b)] for a, b in zip(re, im)])
    return unvec(flat, p, q)


def solve_constraints(constraints: Sequence[Constraint], shape) -> AffineSet:
    """Full real-affine solution set of the stacked linear constraints."""
    p, q = shape
    K, Kb, c = _vectorize(constraints, shape)
    if K.is_real and Kb.is_real and c.is_real:
        # the system decouples into independent real and imaginary parts
        r1 = solve_general(K + Kb, c)
        if not r1.solvable:
            return AffineSet(None)
        r2 = solve_general(K - Kb, Matrix.zeros(c.rows, 1))
        X0 = unvec(r1.particular, p, q)
        dirs = [unvec(b, p, q) for b in r1.null_basis]
        dirs += [unvec(b, p, q).scale(make(ZERO, ONE)) for b in r2.null_basis]
        return AffineSet(X0, tuple(dirs))
    Kr, Ki = K.real_part(), K.imag_part()
    Br, Bi = Kb.real_part(), Kb.imag_part()
    big = vstack(hstack(Kr + Br, Bi - Ki), hstack(Ki + Bi, Kr - Br))
    rhs = vstack(c.real_part(), c.imag_part())
    res = solve_general(big, rhs)
    if not res.solvable:
        return AffineSet(None)
    return AffineSet(_from_split(res.particular, p, q),
                     tuple(_from_split(b, p, q) for b in res.null_basis))


def solve_linear_penrose(A: Matrix, tags, M=None, N=None, k=None,
                         extra: Sequence[Constraint] = ()) -> AffineSet:
    """Affine solution set of the linear tags (plus any extra constraints)."""
    cons = [tag_constraint(t, A, M=M, N=N, k=k) for t in parse_tags(tags)]
    cons.extend(extra)
    if not cons:
        raise ValueError("no constraints given")
    return solve_constraints(cons, (A.cols, A.rows))


# ---------------------------------------------------------------------------
# quadratic systems


class PolyStatus(Enum):
    EMPTY = "Empty"
    UNIQUE = "Unique"
    MULTIPLE = "Multiple"
    UNDECIDED = "Undecided"


@dataclass(frozen=True)
class PolySolution:
    status: PolyStatus
    witnesses: Tuple[Matrix, ...] = ()

    @property
    def exists(self):
        if self.status is PolyStatus.UNDECIDED:
            raise Undecided("solution set could not be decided")
        return self.status is not PolyStatus.EMPTY


# A quadratic matrix polynomial is a dict from monomial keys to coefficient
# matrices; keys are () for the constant, (i,) and (i, j) with i <= j.

def _affine_poly(S: AffineSet):
    poly = {(): S.X0}
    for i, B in enumerate(S.directions):
        poly[(i,)] = B
    return poly


def _padd(P, Q, sign=1):
    out = dict(P)
    for key, C in Q.items():
        C = C if sign == 1 else -C
        out[key] = out[key] + C if key in out else C
    return out


def _pmul(P, Q):
    out = {}
    for k1, C1 in P.items():
        for k2, C2 in Q.items():
            key = tuple(sorted(k1 + k2))
            prod = C1 @ C2
            out[key] = out[key] + prod if key in out else prod
    return out


def _lmul(K, P):
    return {key: K @ C for key, C in P.items()}


def _rmul(P, K):
    return {key: C @ K for key, C in P.items()}


def _nonlinear_residual(tag, A, X):
    if tag is T.P2:
        return _padd(_pmul(X, _lmul(A, X)), X, -1)
    if tag is T.P7:
        return _padd(_pmul(_lmul(A, X), X), X, -1)
    if tag is T.P9:
        return _padd(_rmul(_pmul(X, X), A), X, -1)
    raise UnsupportedTag(str(tag))


def _equation_rows(polys, d):
    """Rows over columns [quadratic monomials..., t_0..t_{d-1}, 1]."""
    quad = list(combinations_with_replacement(range(d), 2))
    cols = {key: j for j, key in enumerate(quad)}
    for i in range(d):
        cols[(i,)] = len(quad) + i
    cols[()] = len(quad) + d
    width = len(cols)
    rows = []
    for P in polys:
        any_mat = next(iter(P.values()))
        for a in range(any_mat.rows):
            for b in range(any_mat.cols):
                re_row = [ZERO] * width
                im_row = [ZERO] * width
                for key, C in P.items():
                    v = C[a, b]
                    if v:
                        j = cols[key]
                        re_row[j] = re_row[j] + re_part(v)
                        im_row[j] = im_row[j] + im_part(v)
                for r in (re_row, im_row):
                    if any(r):
                        rows.append(r)
    return rows, len(quad)


def _reparametrize(S: AffineSet, t0, W) -> AffineSet:
    X0 = S.point(t0)
    dirs = []
    for w in W:
        D = None
        for c, B in zip(w, S.directions):
            if c:
                D = B.scale(c) if D is None else D + B.scale(c)
        dirs.append(D if D is not None else Matrix.zeros(*S.X0.shape))
    return AffineSet(X0, tuple(dirs))


def solve_quadratic(A: Matrix, linear_tags, nonlinear_tags, M=None, N=None, k=None,
                    extra: Sequence[Constraint] = (), max_rounds=64) -> PolySolution:
    """Decide the solution set of linear plus quadratic equations in X.

    The answer is over complex X (real parameters for real and imaginary
    parts), so ``UNIQUE`` really means a single matrix.
    """
    from .matrix import rref_rank  # local to keep the import graph flat

    nonlinear = [t for t in parse_tags(nonlinear_tags)]
    for t in nonlinear:
        if t not in NONLINEAR:
            raise UnsupportedTag("%s is linear; pass it with the linear tags" % t)
    S = solve_linear_penrose(A, linear_tags, M=M, N=N, k=k, extra=extra)
    for _ in range(max_rounds):
        if S.empty:
            return PolySolution(PolyStatus.EMPTY)
        d = S.dimension
        X = _affine_poly(S)
        polys = [_nonlinear_residual(t, A, X) for t in nonlinear]
        rows, nquad = _equation_rows(polys, d)
        if not rows:
            if d == 0:
                return PolySolution(PolyStatus.UNIQUE, (S.X0,))
            return PolySolution(PolyStatus.MULTIPLE, (S.X0, S.point([ONE])))
        R = rref_rank(Matrix._wrap(rows))
        linear_rows = []
        quad_left = False
        for i, pc in enumerate(R.pivot_cols):
            if pc < nquad:
                quad_left = True
            elif pc == nquad + d:
                return PolySolution(PolyStatus.EMPTY)
            else:
                linear_rows.append(R.rref.row(i))
        if not linear_rows:
            if not quad_left:
                raise AssertionError("unreachable: rows without pivots")
            return _groebner_fallback(S, rows, nquad, d)
        L = Matrix._wrap([[r[0, nquad + j] for j in range(d)] for r in linear_rows])
        rhs = Matrix._wrap([[-r[0, nquad + d]] for r in linear_rows])
        sol = solve_general(L, rhs)
        if not sol.solvable:
            return PolySolution(PolyStatus.EMPTY)
        t0 = [sol.particular[i, 0] for i in range(d)]
        W = [[b[i, 0] for i in range(d)] for b in sol.null_basis]
        S = _reparametrize(S, t0, W)
    raise Undecided("linearization did not converge")


def _groebner_fallback(S, rows, nquad, d) -> PolySolution:
    import sympy

    ts = sympy.symbols("t0:%d" % d, real=True)
    quad = list(combinations_with_replacement(range(d), 2))
    monos = [ts[i] * ts[j] for i, j in quad] + list(ts) + [sympy.Integer(1)]
    eqs = []
    for r in rows:
        e = sum(sympy.Rational(int(c.numerator), int(c.denominator)) * m
                for c, m in zip(r, monos) if c)
        eqs.append(sympy.expand(e))
    G = sympy.groebner(eqs, *ts, order="lex")
    if list(G.exprs) == [1]:
        return PolySolution(PolyStatus.EMPTY)
    if not G.is_zero_dimensional:
        return PolySolution(PolyStatus.UNDECIDED)
    sols = sympy.solve(list(G.exprs), ts, dict=True)
    real = []
    for s in sols:
        vals = [s.get(t, sympy.Integer(0)) for t in ts]
        if all(v.is_real for v in vals) and all(v.is_rational for v in vals):
            real.append(vals)
        elif all(v.is_real for v in vals):
            return PolySolution(PolyStatus.UNDECIDED)
    if not real:
        return PolySolution(PolyStatus.EMPTY)
    from gmpy2 import mpq

    pts = tuple(S.point([mpq(int(v.p), int(v.q)) for v in vals]) for vals in real)
    return PolySolution(PolyStatus.UNIQUE if len(pts) == 1 else PolyStatus.MULTIPLE, pts)

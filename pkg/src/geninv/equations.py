"""Catalog of the numbered defining equations and residual checks."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, Optional, Tuple

from .errors import DimensionMismatch, MissingContext, ParseError
from .matrix import Matrix


class EquationTag(Enum):
    P1 = "1"
    P2 = "2"
    P3 = "3"
    P4 = "4"
    P5 = "5"
    P1k = "1^k"
    P3M = "3^M"
    P4N = "4^N"
    P6 = "6"
    P6k = "6^k"
    P7 = "7"
    P8 = "8"
    P9 = "9"

    def __str__(self):
        return self.value


_ALIASES = {}
for _t in EquationTag:
    for _s in (_t.name, _t.value, _t.value.replace("^", ""), _t.name[1:]):
        _ALIASES[_s.lower()] = _t


def parse_tag(text) -> EquationTag:
    if isinstance(text, EquationTag):
        return text
    key = str(text).strip().lower()
    if key not in _ALIASES:
        raise ParseError("unknown equation tag %r" % text)
    return _ALIASES[key]


def parse_tags(text) -> Tuple[EquationTag, ...]:
    """Comma separated list such as ``"1,2,3M"``."""
    if isinstance(text, str):
        parts = [p for p in text.split(",") if p.strip()]
    else:
        parts = list(text)
    return tuple(parse_tag(p) for p in parts)


NONLINEAR = frozenset({EquationTag.P2, EquationTag.P7, EquationTag.P9})


def residual(tag: EquationTag, A: Matrix, X: Matrix, M=None, N=None, k=None) -> Matrix:
    """Residual matrix of ``tag``; the equation holds iff it is zero."""
    tag = parse_tag(tag)
    if tag in (EquationTag.P1k, EquationTag.P6k) and k is None:
        raise MissingContext("equation %s needs the exponent k" % tag)
    if tag is EquationTag.P3M and M is None:
        raise MissingContext("equation 3^M needs the weight M")
    if tag is EquationTag.P4N and N is None:
        raise MissingContext("equation 4^N needs the weight N")
    if X.shape != (A.cols, A.rows):
        raise DimensionMismatch("candidate has shape %s, expected %s" % (X.shape, (A.cols, A.rows)))
    if tag is EquationTag.P1:
        return A @ X @ A - A
    if tag is EquationTag.P2:
        return X @ A @ X - X
    if tag is EquationTag.P3:
        AX = A @ X
        return AX.H - AX
    if tag is EquationTag.P4:
        XA = X @ A
        return XA.H - XA
    if tag is EquationTag.P5:
        return A @ X - X @ A
    if tag in (EquationTag.P1k, EquationTag.P6k):
        Ak = A ** k
        return X @ Ak @ A - Ak
    if tag is EquationTag.P3M:
        MAX = M @ A @ X
        return MAX.H - MAX
    if tag is EquationTag.P4N:
        NXA = N @ X @ A
        return NXA.H - NXA
    if tag is EquationTag.P6:
        return X @ A @ A - A
    if tag is EquationTag.P7:
        return A @ X @ X - X
    if tag is EquationTag.P8:
        return A @ A @ X - A
    if tag is EquationTag.P9:
        return X @ X @ A - X
    raise AssertionError(tag)


def float_tolerance(*mats) -> float:
    """Default floating tolerance 2^-30 * (1 + max-norm of the inputs)."""
    norm = 0.0
    for m in mats:
        if m is not None:
            a = m.to_numpy()
            if a.size:
                norm = max(norm, float(abs(a).max()))
    return 2.0 ** -30 * (1.0 + norm)


def _float_residual(tag, A, X, M, N, k):
    import numpy as np

    a, x = A.to_numpy(), X.to_numpy()
    h = lambda z: z.conj().T
    if tag is EquationTag.P1:
        return a @ x @ a - a
    if tag is EquationTag.P2:
        return x @ a @ x - x
    if tag is EquationTag.P3:
        return h(a @ x) - a @ x
    if tag is EquationTag.P4:
        return h(x @ a) - x @ a
    if tag is EquationTag.P5:
        return a @ x - x @ a
    if tag in (EquationTag.P1k, EquationTag.P6k):
        ak = np.linalg.matrix_power(a, k)
        return x @ ak @ a - ak
    if tag is EquationTag.P3M:
        t = M.to_numpy() @ a @ x
        return h(t) - t
    if tag is EquationTag.P4N:
        t = N.to_numpy() @ x @ a
        return h(t) - t
    if tag is EquationTag.P6:
        return x @ a @ a - a
    if tag is EquationTag.P7:
        return a @ x @ x - x
    if tag is EquationTag.P8:
        return a @ a @ x - a
    if tag is EquationTag.P9:
        return x @ x @ a - x
    raise AssertionError(tag)


@dataclass(frozen=True)
class EquationCheck:
    tag: EquationTag
    holds: bool
    residual: object  # Matrix in exact mode, ndarray in float mode
    norm: Optional[float] = None


def check_equation(tag, A: Matrix, X: Matrix, M=None, N=None, k=None,
                   mode="exact", tolerance=None) -> EquationCheck:
    tag = parse_tag(tag)
    if mode == "exact":
        if tolerance is not None:
            raise ValueError("exact mode takes no tolerance")
        r = residual(tag, A, X, M=M, N=N, k=k)
        return EquationCheck(tag, r.is_zero(), r)
    if mode != "float":
        raise ValueError("mode must be 'exact' or 'float'")
    if X.shape != (A.cols, A.rows):
        raise DimensionMismatch("candidate has shape %s, expected %s" % (X.shape, (A.cols, A.rows)))
    if tag is EquationTag.P3M and M is None:
        raise MissingContext("equation 3^M needs the weight M")
    if tag is EquationTag.P4N and N is None:
        raise MissingContext("equation 4^N needs the weight N")
    if tag in (EquationTag.P1k, EquationTag.P6k) and k is None:
        raise MissingContext("equation %s needs the exponent k" % tag)
    r = _float_residual(tag, A, X, M, N, k)
    norm = float(abs(r).max()) if r.size else 0.0
    tol = float_tolerance(A, X, M, N) if tolerance is None else float(tolerance)
    return EquationCheck(tag, norm <= tol, r, norm)


@dataclass(frozen=True)
class MembershipResult:
    holds: bool
    checks: Tuple[EquationCheck, ...] = field(default_factory=tuple)

    def failing(self):
        return [c for c in self.checks if not c.holds]


def check_membership(A: Matrix, X: Matrix, tags: Iterable, M=None, N=None, k=None,
                     mode="exact", tolerance=None) -> MembershipResult:
    checks = tuple(check_equation(t, A, X, M=M, N=N, k=k, mode=mode, tolerance=tolerance)
                   for t in parse_tags(tags))
    return MembershipResult(all(c.holds for c in checks), checks)


def satisfies(A, X, tags, M=None, N=None, k=None) -> bool:
    """Exact conjunction, short-circuiting on the first failing tag."""
    for t in parse_tags(tags):
        if not residual(t, A, X, M=M, N=N, k=k).is_zero():
            return False
    return True


def first_residual(A, X, tags, M=None, N=None, k=None) -> Optional[Matrix]:
    """Residual of the first violated tag, or None when all hold."""
    for t in parse_tags(tags):
        r = residual(t, A, X, M=M, N=N, k=k)
        if not r.is_zero():
            return r
    return None


class InverseKind(Enum):
    MP = "mp"
    WEIGHTED_MP = "weighted-mp"
    GROUP = "group"
    DRAZIN = "drazin"
    CORE = "core"
    CORE_EP = "core-ep"
    W_CORE_EP = "w-core-ep"
    M_CORE = "core-M"
    N_DUAL_CORE = "dual-core-N"
    ONE = "one"
    ONE_3M = "one-3M"
    ONE_4N = "one-4N"


T = EquationTag

# Full defining equation set of each kind.  The W-weighted core-EP inverse is
# checked by its own rectangular equations (see core.check_w_core_ep).
DEFINING: Dict[InverseKind, Tuple[EquationTag, ...]] = {
    InverseKind.MP: (T.P1, T.P2, T.P3, T.P4),
    InverseKind.WEIGHTED_MP: (T.P1, T.P2, T.P3M, T.P4N),
    InverseKind.GROUP: (T.P1, T.P2, T.P5),
    InverseKind.DRAZIN: (T.P1k, T.P2, T.P5),
    InverseKind.CORE: (T.P6, T.P7, T.P3),
    InverseKind.CORE_EP: (T.P6k, T.P7, T.P3),
    InverseKind.W_CORE_EP: (),
    InverseKind.M_CORE: (T.P3M, T.P6, T.P7),
    InverseKind.N_DUAL_CORE: (T.P4N, T.P8, T.P9),
    InverseKind.ONE: (T.P1,),
    InverseKind.ONE_3M: (T.P1, T.P3M),
    InverseKind.ONE_4N: (T.P1, T.P4N),
}

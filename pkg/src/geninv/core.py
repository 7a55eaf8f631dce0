"""Unweighted generalized inverses built from the full-rank factorization.

Every construction re-checks its defining equations before returning, so a
bug in a closed form surfaces as ``PostconditionFailed`` instead of a wrong
answer.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

from .equations import DEFINING, EquationTag, InverseKind, first_residual
from .errors import DimensionMismatch, IndexTooHigh, NotSquare, PostconditionFailed
from .matrix import Matrix, full_rank_factorize, inverse, is_invertible, rank


@dataclass(frozen=True)
class IndexResult:
    k: int
    rank_chain: Tuple[int, ...]


def _square(A, what):
    if not A.is_square:
        raise NotSquare("%s needs a square matrix, got %dx%d" % ((what,) + A.shape))


def _ensure(kind, A, X, k=None):
    bad = first_residual(A, X, DEFINING[kind], k=k)
    if bad is not None:
        raise PostconditionFailed("%s construction violates its defining equations" % kind.value)
    return X


def index(A: Matrix) -> IndexResult:
    """Smallest k with rank(A^k) == rank(A^(k+1)); the zero matrix has index 1."""
    _square(A, "index")
    chain = [A.rows]
    P = Matrix.identity(A.rows)
    while True:
        P = P @ A
        chain.append(rank(P))
        if chain[-1] == chain[-2]:
            return IndexResult(len(chain) - 2, tuple(chain))


def ind(A: Matrix) -> int:
    return index(A).k


def mp_inverse(A: Matrix) -> Matrix:
    """Moore-Penrose inverse ``G*(GG*)^-1 (F*F)^-1 F*``."""
    if A.is_zero():
        return Matrix.zeros(A.cols, A.rows)
    F, G = full_rank_factorize(A)
    Fh, Gh = F.H, G.H
    X = Gh @ inverse(G @ Gh) @ inverse(Fh @ F) @ Fh
    return _ensure(InverseKind.MP, A, X)


def one_inverse(A: Matrix) -> Matrix:
    """Canonical {1}-inverse (the Moore-Penrose inverse)."""
    return mp_inverse(A)


def group_inverse(A: Matrix) -> Optional[Matrix]:
    """``F (GF)^-2 G`` when GF is invertible, else None (index at least 2)."""
    _square(A, "group inverse")
    if A.is_zero():
        return Matrix.zeros(A.rows)
    F, G = full_rank_factorize(A)
    GF = G @ F
    if not is_invertible(GF):
        return None
    W = inverse(GF)
    X = F @ W @ W @ G
    return _ensure(InverseKind.GROUP, A, X)


def require_group_inverse(A: Matrix) -> Matrix:
    X = group_inverse(A)
    if X is None:
        raise IndexTooHigh("group inverse")
    return X


def drazin_inverse(A: Matrix) -> Matrix:
    _square(A, "Drazin inverse")
    k = ind(A)
    if k == 0:
        return _ensure(InverseKind.DRAZIN, A, inverse(A), k=0)
    l = max(k, 1)
    Al = A ** l
    X = Al @ mp_inverse(A ** (2 * l + 1)) @ Al
    return _ensure(InverseKind.DRAZIN, A, X, k=k)


def core_inverse(A: Matrix) -> Optional[Matrix]:
    Ag = group_inverse(A)
    if Ag is None:
        return None
    X = Ag @ A @ mp_inverse(A)
    return _ensure(InverseKind.CORE, A, X)


def core_ep_inverse(A: Matrix) -> Matrix:
    _square(A, "core-EP inverse")
    k = max(ind(A), 1)
    Ak = A ** k
    X = drazin_inverse(A) @ Ak @ mp_inverse(Ak)
    return _ensure(InverseKind.CORE_EP, A, X, k=k)


def w_core_ep_residuals(A: Matrix, W: Matrix, X: Matrix):
    """Residuals of XW(AW)^(k+1) = (AW)^k, A(WX)^2 = X and (WAWX)* = WAWX."""
    AW, WA = A @ W, W @ A
    k = max(ind(AW), ind(WA))
    AWk = AW ** k
    WX = W @ X
    WAWX = WA @ WX
    return (X @ W @ AWk @ AW - AWk, A @ WX @ WX - X, WAWX.H - WAWX)


def w_weighted_core_ep(A: Matrix, W: Matrix) -> Matrix:
    """``A [(WA)^core-EP]^2`` for A m-by-n and W n-by-m."""
    if W.shape != (A.cols, A.rows):
        raise DimensionMismatch("W must be %dx%d, got %dx%d" % ((A.cols, A.rows) + W.shape))
    C = core_ep_inverse(W @ A)
    X = A @ C @ C
    if any(not r.is_zero() for r in w_core_ep_residuals(A, W, X)):
        raise PostconditionFailed("W-weighted core-EP construction failed its equations")
    return X


def compute(kind: InverseKind, A: Matrix, W: Optional[Matrix] = None) -> Optional[Matrix]:
    """Dispatch for the unweighted kinds; None means the inverse does not exist."""
    table = {
        InverseKind.MP: mp_inverse,
        InverseKind.ONE: one_inverse,
        InverseKind.GROUP: group_inverse,
        InverseKind.DRAZIN: drazin_inverse,
        InverseKind.CORE: core_inverse,
        InverseKind.CORE_EP: core_ep_inverse,
    }
    if kind is InverseKind.W_CORE_EP:
        return w_weighted_core_ep(A, W)
    return table[kind](A)


__all__ = [
    "IndexResult", "index", "ind", "mp_inverse", "one_inverse", "group_inverse",
    "require_group_inverse", "drazin_inverse", "core_inverse", "core_ep_inverse",
    "w_weighted_core_ep", "w_core_ep_residuals", "compute", "EquationTag",
]

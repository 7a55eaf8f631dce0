"""Dense exact matrices over the Gaussian rationals.

Everything here is deterministic: elimination always takes the leftmost
available pivot column and the topmost candidate row, and free variables of a
linear system are set to zero in the particular solution.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

from .errors import DimensionMismatch, NotSquare, Singular, ZeroMatrix
from .scalar import ONE, ZERO, Scalar, conj, im_part, re_part, to_entry, to_pair, to_text


class Matrix:
    """Immutable dense matrix with exact entries (``mpq`` or :class:`Scalar`)."""

    __slots__ = ("_rows", "rows", "cols", "_hash")

    def __init__(self, data):
        rows = tuple(tuple(to_entry(v) for v in row) for row in data)
        if not rows or not rows[0]:
            raise DimensionMismatch("matrices must have at least one row and one column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimensionMismatch("ragged rows")
        self._set(rows)

    def _set(self, rows):
        object.__setattr__(self, "_rows", rows)
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", len(rows[0]))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def _wrap(cls, rows):
        """Build from already-normalized entries without re-validating."""
        m = object.__new__(cls)
        m._set(tuple(tuple(r) for r in rows))
        return m

    # constructors ---------------------------------------------------------
    @classmethod
    def zeros(cls, m, n=None):
        n = m if n is None else n
        return cls._wrap([[ZERO] * n for _ in range(m)])

    @classmethod
    def identity(cls, n):
        return cls._wrap([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, *values):
        vals = [to_entry(v) for v in values]
        n = len(vals)
        return cls._wrap([[vals[i] if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def column(cls, values):
        return cls([[v] for v in values])

    # basic access ---------------------------------------------------------
    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, key):
        i, j = key
        return self._rows[i][j]

    def entry(self, i, j) -> Scalar:
        return Scalar.of(self._rows[i][j])

    @property
    def entries(self) -> List[Scalar]:
        """Row-major list of entries as Scalars."""
        return [Scalar.of(v) for row in self._rows for v in row]

    def tolist(self):
        return [list(r) for r in self._rows]

    def row(self, i):
        return Matrix._wrap([self._rows[i]])

    def col(self, j):
        return Matrix._wrap([[r[j]] for r in self._rows])

    def submatrix(self, rows, cols):
        return Matrix._wrap([[self._rows[i][j] for j in cols] for i in rows])

    @property
    def is_square(self):
        return self.rows == self.cols

    @property
    def is_real(self):
        return all(type(v) is not Scalar for r in self._rows for v in r)

    def is_zero(self):
        return not any(v for r in self._rows for v in r)

    def is_hermitian(self):
        return self.is_square and self == self.H

    # algebra --------------------------------------------------------------
    def _check_same(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch("shape %s vs %s" % (self.shape, other.shape))

    def __add__(self, other):
        self._check_same(other)
        return Matrix._wrap([[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __sub__(self, other):
        self._check_same(other)
        return Matrix._wrap([[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __neg__(self):
        return Matrix._wrap([[-a for a in r] for r in self._rows])

    def scale(self, c):
        c = to_entry(c)
        return Matrix._wrap([[c * a for a in r] for r in self._rows])

    def __mul__(self, c):
        if isinstance(c, Matrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionMismatch("cannot multiply %s by %s" % (self.shape, other.shape))
        cols = list(zip(*other._rows))
        out = []
        for r in self._rows:
            nz = [(k, a) for k, a in enumerate(r) if a]
            row = []
            for c in cols:
                s = ZERO
                for k, a in nz:
                    b = c[k]
                    if b:
                        s = s + a * b
                row.append(s)
            out.append(row)
        return Matrix._wrap(out)

    def __pow__(self, k):
        if not self.is_square:
            raise NotSquare("power of a non-square matrix")
        if k < 0:
            return inverse(self) ** (-k)
        result = Matrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    @property
    def T(self):
        return Matrix._wrap(list(zip(*self._rows)))

    @property
    def H(self):
        """Conjugate transpose."""
        return Matrix._wrap([[conj(v) for v in c] for c in zip(*self._rows)])

    def conj(self):
        return Matrix._wrap([[conj(v) for v in r] for r in self._rows])

    def real_part(self):
        return Matrix._wrap([[re_part(v) for v in r] for r in self._rows])

    def imag_part(self):
        return Matrix._wrap([[im_part(v) for v in r] for r in self._rows])

    # comparison / hashing ---------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(self._rows))
        return self._hash

    def to_pairs(self):
        """Nested ``[[re, im], ...]`` string pairs; canonical and lossless."""
        return [[to_pair(v) for v in r] for r in self._rows]

    def __repr__(self):
        body = "; ".join(" ".join(to_text(v) for v in r) for r in self._rows)
        return "Matrix[%s]" % body

    def to_numpy(self):
        import numpy as np

        return np.array([[complex(float(re_part(v)), float(im_part(v))) for v in r]
                         for r in self._rows], dtype=complex)


def hstack(*mats):
    if len({m.rows for m in mats}) != 1:
        raise DimensionMismatch("hstack needs equal row counts")
    return Matrix._wrap([sum((list(m._rows[i]) for m in mats), []) for i in range(mats[0].rows)])


def vstack(*mats):
    if len({m.cols for m in mats}) != 1:
        raise DimensionMismatch("vstack needs equal column counts")
    return Matrix._wrap([r for m in mats for r in m._rows])


# ---------------------------------------------------------------------------
# elimination


def _eliminate(rows, pivot_limit):
    """In-place Gauss-Jordan elimination on a list of row lists.

    Pivots are searched only in the first ``pivot_limit`` columns.  Returns the
    list of pivot columns.
    """
    nrows = len(rows)
    pivots = []
    r = 0
    for c in range(pivot_limit):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        if p != r:
            rows[p], rows[r] = rows[r], rows[p]
        prow = rows[r]
        inv = ONE / prow[c]
        if inv != ONE:
            prow = [v * inv if v else v for v in prow]
            rows[r] = prow
        nz = [j for j in range(c, len(prow)) if prow[j]]
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if f:
                for j in nz:
                    row[j] = row[j] - f * prow[j]
        pivots.append(c)
        r += 1
    return pivots


@dataclass(frozen=True)
class RrefResult:
    rref: Matrix
    pivot_cols: Tuple[int, ...]
    rank: int
    transform: Matrix


def rref_rank(A: Matrix) -> RrefResult:
    """Reduced row echelon form with the invertible transform ``T`` (``T @ A == rref``)."""
    m, n = A.shape
    work = [list(r) + [ONE if i == j else ZERO for j in range(m)] for i, r in enumerate(A._rows)]
    pivots = _eliminate(work, n)
    rref = Matrix._wrap([r[:n] for r in work])
    transform = Matrix._wrap([r[n:] for r in work])
    return RrefResult(rref, tuple(pivots), len(pivots), transform)


def rank(A: Matrix) -> int:
    work = [list(r) for r in A._rows]
    return len(_eliminate(work, A.cols))


class SolveStatus(Enum):
    UNIQUE = "Unique"
    INFINITE = "Infinite"
    NO_SOLUTION = "NoSolution"


@dataclass(frozen=True)
class SolveResult:
    status: SolveStatus
    particular: Optional[Matrix] = None
    null_basis: Tuple[Matrix, ...] = field(default_factory=tuple)

    @property
    def solvable(self):
        return self.status is not SolveStatus.NO_SOLUTION


def solve_general(A: Matrix, B: Matrix) -> SolveResult:
    """All solutions of ``A @ X == B``; particular solution has free variables zero."""
    if A.rows != B.rows:
        raise DimensionMismatch("A has %d rows, B has %d" % (A.rows, B.rows))
    n = A.cols
    work = [list(a) + list(b) for a, b in zip(A._rows, B._rows)]
    pivots = _eliminate(work, n)
    rk = len(pivots)
    if any(any(work[i][n:]) for i in range(rk, A.rows)):
        return SolveResult(SolveStatus.NO_SOLUTION)
    part = [[ZERO] * B.cols for _ in range(n)]
    for i, p in enumerate(pivots):
        part[p] = list(work[i][n:])
    pivot_set = set(pivots)
    basis = []
    for f in range(n):
        if f in pivot_set:
            continue
        v = [ZERO] * n
        v[f] = ONE
        for i, p in enumerate(pivots):
            v[p] = -work[i][f]
        basis.append(Matrix._wrap([[x] for x in v]))
    status = SolveStatus.UNIQUE if not basis else SolveStatus.INFINITE
    return SolveResult(status, Matrix._wrap(part), tuple(basis))


def full_rank_factorize(A: Matrix) -> Tuple[Matrix, Matrix]:
    """``A == F @ G`` with F the pivot columns of A and G the nonzero rows of its RREF."""
    res = rref_rank(A)
    if res.rank == 0:
        raise ZeroMatrix("zero matrix has no full-rank factorization")
    F = A.submatrix(range(A.rows), res.pivot_cols)
    G = res.rref.submatrix(range(res.rank), range(A.cols))
    return F, G


def inverse(A: Matrix) -> Matrix:
    if not A.is_square:
        raise NotSquare("inverse of a %dx%d matrix" % A.shape)
    n = A.rows
    work = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(A._rows)]
    if len(_eliminate(work, n)) < n:
        raise Singular("matrix is singular")
    return Matrix._wrap([r[n:] for r in work])


def is_invertible(A: Matrix) -> bool:
    return A.is_square and rank(A) == A.rows


def is_positive_definite(H: Matrix) -> bool:
    """Hermitian with all pivots of unpivoted elimination positive (Sylvester)."""
    if not (H.is_square and H.is_hermitian()):
        return False
    from .scalar import re_part

    work = [list(r) for r in H._rows]
    n = H.rows
    for c in range(n):
        p = work[c][c]
        if re_part(p) <= 0:
            return False
        for i in range(c + 1, n):
            f = work[i][c] / p
            if f:
                work[i] = [a - f * b for a, b in zip(work[i], work[c])]
    return True


# ---------------------------------------------------------------------------
# ranges


def range_subset(U: Matrix, V: Matrix) -> bool:
    """Column space of U contained in column space of V."""
    return rank(hstack(V, U)) == rank(V)


def range_equal(U: Matrix, V: Matrix) -> bool:
    ru, rv = rank(U), rank(V)
    return ru == rv and rank(hstack(U, V)) == rv


# ---------------------------------------------------------------------------
# Kronecker products and vectorization


def kron(A: Matrix, B: Matrix) -> Matrix:
    out = []
    for ra in A._rows:
        for rb in B._rows:
            out.append([a * b for a in ra for b in rb])
    return Matrix._wrap(out)


def vec(A: Matrix) -> Matrix:
    """Column-stacking vectorization (so ``vec(A X B) == kron(B.T, A) @ vec(X)``)."""
    return Matrix._wrap([[A._rows[i][j]] for j in range(A.cols) for i in range(A.rows)])


def unvec(v: Matrix, rows: int, cols: int) -> Matrix:
    if v.cols != 1 or v.rows != rows * cols:
        raise DimensionMismatch("vector of length %d cannot be reshaped to %dx%d" % (v.rows, rows, cols))
    flat = [r[0] for r in v._rows]
    return Matrix._wrap([[flat[j * rows + i] for j in range(cols)] for i in range(rows)])


def commutation(m: int, n: int) -> Matrix:
    """Permutation K with ``K @ vec(X) == vec(X.T)`` for X of shape (m, n)."""
    K = [[ZERO] * (m * n) for _ in range(m * n)]
    for i in range(m):
        for j in range(n):
            K[i * n + j][j * m + i] = ONE
    return Matrix._wrap(K)

"""Seeded generators of structured exact instances.

Random engine: SplitMix64.  A stream seeded with s keeps a 64-bit state,
adds 0x9E3779B97F4A7C15 on every draw and returns the usual two
xor-shift-multiply rounds of the new state.  Bounded integers in [0, n) use
rejection of the top partial block so they are exactly uniform.  Child seeds
for (theorem, size, sample) triples come from ``derive_seed``: the first
eight bytes, big-endian, of SHA-256 over the slash-joined decimal/ASCII
parts.  Following these rules reproduces every corpus bit for bit.
"""

import hashlib
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional, Tuple

from gmpy2 import mpq

from .core import group_inverse
from .errors import HypothesisSamplingExhausted, InvalidSpec
from .ids import ROL_IDS, SIGNATURE, TheoremId, parse_theorem
from .matrix import Matrix, inverse, is_invertible
from .scalar import ONE, ZERO, make

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        if n <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            z = self.next_u64()
            if z < limit:
                return z % n

    def randint(self, lo: int, hi: int) -> int:
        return lo + self.below(hi - lo + 1)

    def chance(self, num: int, den: int) -> bool:
        return self.below(den) < num

    def choice(self, seq):
        return seq[self.below(len(seq))]

    def rational(self, bound: int):
        return mpq(self.randint(-bound, bound), self.randint(1, bound))

    def nonzero_rational(self, bound: int):
        while True:
            q = self.rational(bound)
            if q:
                return q

    def entry(self, bound: int, complex_entries=False):
        re = self.rational(bound)
        if complex_entries and self.chance(1, 2):
            return make(re, self.rational(bound))
        return re

    def split(self) -> "SplitMix64":
        return SplitMix64(self.next_u64())


def derive_seed(*parts) -> int:
    text = "/".join(str(p) for p in parts).encode()
    return int.from_bytes(hashlib.sha256(text).digest()[:8], "big")


class Kind(Enum):
    INDEX_ONE = "IndexOne"
    HERMITIAN_INVERTIBLE = "HermitianInvertible"
    POSITIVE_DEFINITE = "PositiveDefinite"
    RATIONAL_UNITARY = "RationalUnitary"
    INVERTIBLE = "Invertible"


@dataclass(frozen=True)
class SampleSpec:
    n: int
    kind: Kind
    seed: int = 0
    r: Optional[int] = None
    entry_bound: int = 3
    complex_entries: bool = False

    def validate(self):
        if self.n < 1:
            raise InvalidSpec("n must be positive")
        if self.entry_bound < 1:
            raise InvalidSpec("entryBound must be at least 1")
        if self.kind is Kind.INDEX_ONE:
            if self.r is None or not 0 <= self.r <= self.n:
                raise InvalidSpec("IndexOne needs 0 <= r <= n")


# ---------------------------------------------------------------------------
# primitive generators (all take an explicit stream)


def random_matrix(rng, m, n, bound=3, cplx=False) -> Matrix:
    return Matrix._wrap([[rng.entry(bound, cplx) for _ in range(n)] for _ in range(m)])


def random_invertible(rng, n, bound=3, cplx=False) -> Matrix:
    """Product of elementary matrices: row additions, swaps and scalings."""
    rows = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    for _ in range(2 * n + 1):
        op = rng.below(3) if n > 1 else 2
        if op == 0:
            i, j = rng.below(n), rng.below(n - 1)
            j = j + 1 if j >= i else j
            c = rng.entry(bound, cplx)
            rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
        elif op == 1:
            i, j = rng.below(n), rng.below(n)
            rows[i], rows[j] = rows[j], rows[i]
        else:
            i = rng.below(n)
            c = mpq(rng.choice([-2, -1, 1, 2, 3]), rng.choice([1, 1, 2, 3]))
            rows[i] = [c * a for a in rows[i]]
    return Matrix._wrap(rows)


def block_diag(*blocks) -> Matrix:
    n = sum(b.rows for b in blocks)
    out = [[ZERO] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                out[off + i][off + j] = b[i, j]
        off += b.rows
    return Matrix._wrap(out)


def index_one(rng, n, r, bound=3, cplx=False, S=None) -> Tuple[Matrix, Matrix]:
    """``A = S diag(C, 0) S^-1``; returns (A, S)."""
    if S is None:
        S = random_invertible(rng, n, bound, cplx)
    if r == 0:
        return Matrix.zeros(n), S
    C = random_invertible(rng, r, bound, cplx)
    D = block_diag(C, Matrix.zeros(n - r)) if r < n else C
    return S @ D @ inverse(S), S


def hermitian_invertible(rng, n, bound=3, cplx=False) -> Matrix:
    while True:
        B = random_matrix(rng, n, n, bound, cplx)
        H = B + B.H
        if rng.chance(1, 3):
            H = H - Matrix.identity(n).scale(rng.rational(bound))
        if is_invertible(H):
            return H


def positive_definite(rng, n, bound=3, cplx=False) -> Matrix:
    B = random_matrix(rng, n, n, bound, cplx)
    return B.H @ B + Matrix.identity(n)


PYTHAGOREAN = ((3, 4, 5), (5, 12, 13), (8, 15, 17))


def rational_unitary(rng, n, cplx=False) -> Matrix:
    perm = list(range(n))
    for i in range(n - 1, 0, -1):
        j = rng.below(i + 1)
        perm[i], perm[j] = perm[j], perm[i]
    U = Matrix._wrap([[(mpq(rng.choice([-1, 1])) if perm[i] == j else ZERO) for j in range(n)]
                      for i in range(n)])
    for _ in range(n):
        if n < 2:
            break
        a, b, c = rng.choice(PYTHAGOREAN)
        i = rng.below(n)
        j = rng.below(n - 1)
        j = j + 1 if j >= i else j
        R = [[ONE if x == y else ZERO for y in range(n)] for x in range(n)]
        R[i][i], R[i][j], R[j][i], R[j][j] = mpq(a, c), mpq(-b, c), mpq(b, c), mpq(a, c)
        U = U @ Matrix._wrap(R)
    if cplx:
        phases = [ONE, make(ZERO, ONE), make(mpq(3, 5), mpq(4, 5)), mpq(-1)]
        U = U @ Matrix.diag(*[rng.choice(phases) for _ in range(n)])
    return U


def sample(spec: SampleSpec) -> Matrix:
    spec.validate()
    rng = SplitMix64(spec.seed)
    b, c = spec.entry_bound, spec.complex_entries
    if spec.kind is Kind.INDEX_ONE:
        return index_one(rng, spec.n, spec.r, b, c)[0]
    if spec.kind is Kind.HERMITIAN_INVERTIBLE:
        return hermitian_invertible(rng, spec.n, b, c)
    if spec.kind is Kind.POSITIVE_DEFINITE:
        return positive_definite(rng, spec.n, b, c)
    if spec.kind is Kind.RATIONAL_UNITARY:
        return rational_unitary(rng, spec.n, c)
    if spec.kind is Kind.INVERTIBLE:
        return random_invertible(rng, spec.n, b, c)
    raise InvalidSpec("unknown kind %r" % (spec.kind,))


# ---------------------------------------------------------------------------
# weights adapted to a given index-one matrix A = S diag(C, 0) S^-1


def adapted_weight(rng, S, r, mode, bound=3, cplx=False) -> Matrix:
    """Hermitian invertible ``S^-* K S^-1`` with a chosen block structure of K.

    ``ep``/``ep_pd``: K block diagonal, which makes A weighted-EP for it;
    ``isotropic``: the leading r-by-r block of K is singular, which empties
    A{1,3^M} when used as M (use ``dual_isotropic`` for the N side).
    """
    n = S.rows
    Si = inverse(S)
    if mode in ("ep", "ep_pd"):
        maker = positive_definite if mode == "ep_pd" else hermitian_invertible
        blocks = [maker(rng, r, bound, cplx)] if r else []
        if r < n:
            blocks.append(maker(rng, n - r, bound, cplx))
        K = block_diag(*blocks)
        return Si.H @ K @ Si
    if mode in ("isotropic", "dual_isotropic"):
        if not 0 < r < n:
            return hermitian_invertible(rng, n, bound, cplx)
        while True:
            K = hermitian_invertible(rng, n, bound, cplx)
            rows = K.tolist()
            for j in range(r):
                rows[0][j] = ZERO
                rows[j][0] = ZERO
            K = Matrix._wrap(rows)
            if is_invertible(K):
                break
        if mode == "isotropic":
            return Si.H @ K @ Si
        # N^-1 = S K S*  gives a singular G N^-1 G*
        return inverse(S @ K @ S.H)
    raise InvalidSpec("unknown weight mode %r" % mode)


def random_weight(rng, n, mode, bound=3, cplx=False) -> Matrix:
    if mode == "pd":
        return positive_definite(rng, n, bound, cplx)
    if mode == "indefinite":
        return hermitian_invertible(rng, n, bound, cplx)
    raise InvalidSpec("unknown weight mode %r" % mode)


def nilpotent_heavy(rng, n, bound=3, cplx=False) -> Matrix:
    """A matrix of index at least 2 (needs n >= 2)."""
    S = random_invertible(rng, n, bound, cplx)
    J = [[ZERO] * n for _ in range(n)]
    J[0][1] = ONE
    for i in range(2, n):
        if rng.chance(1, 2):
            J[i][i] = rng.nonzero_rational(bound)
    return S @ Matrix._wrap(J) @ inverse(S)


# ---------------------------------------------------------------------------
# instance samplers per theorem


def _m_core(A, M):
    from .weighted import m_core_closed
    out = m_core_closed(A, M)
    return out.witness if out.exists else None


def _n_core(A, N):
    from .weighted import n_core_closed
    out = n_core_closed(A, N)
    return out.witness if out.exists else None


def _weight_pair(rng, A_S, r, n, pd_only, cplx):
    """M and N covering: weighted-EP for both, one, or neither; empty classes."""
    S = A_S
    if pd_only:
        modes = ["pd", "ep_pd"]
    else:
        modes = ["pd", "indefinite", "ep", "ep_pd", "isotropic"]
    mm = rng.choice(modes)
    nm = rng.choice(modes)
    if nm == "isotropic":
        nm = "dual_isotropic"
    M = adapted_weight(rng, S, r, mm, cplx=cplx) if mm not in ("pd", "indefinite") else \
        random_weight(rng, n, mm, cplx=cplx)
    N = adapted_weight(rng, S, r, nm, cplx=cplx) if nm not in ("pd", "indefinite") else \
        random_weight(rng, n, nm, cplx=cplx)
    return M, N


def sample_instance(theorem, n: int, seed: int, complex_entries: Optional[bool] = None) -> Dict[str, Matrix]:
    """Inputs for one randomized check of ``theorem``."""
    tid = parse_theorem(theorem)
    rng = SplitMix64(seed)
    if tid in ROL_IDS:
        A, B, W = sample_rol_pair(tid, n, rng.next_u64())
        wname = SIGNATURE[tid][2]
        return {"A": A, "B": B, wname: W}
    cplx = (n <= 3 and rng.chance(1, 5)) if complex_entries is None else complex_entries
    sig = SIGNATURE[tid]
    if tid is TheoremId.L2_6 and n >= 2 and rng.chance(1, 3):
        return {"A": nilpotent_heavy(rng, n, cplx=cplx)}
    r = rng.randint(0, n)
    A, S = index_one(rng, n, r, cplx=cplx)
    out = {"A": A}
    M, N = _weight_pair(rng, S, r, n, tid is TheoremId.T3_19, cplx)
    if "M" in sig:
        out["M"] = M
    if "N" in sig:
        out["N"] = N if "M" in sig else M if tid is not TheoremId.T3_9 else N
    if tid in (TheoremId.T3_9, TheoremId.T3_15):
        # single-weight dual theorems: use the N-side structure
        out["N"] = N
    return out


def _rol_weight(rng, n, cplx):
    return positive_definite(rng, n, cplx=cplx)


def _rol4_1_candidate(rng, n, r, M, cplx):
    A, S = index_one(rng, n, r, cplx=cplx)
    XA = _m_core(A, M)
    if XA is None:
        return None
    if rng.chance(1, 5):
        return A, A
    E = A @ group_inverse(A)
    P = A @ XA
    I = Matrix.identity(n)
    Z = random_matrix(rng, n, n, cplx=cplx)
    return A, A + (I - P) @ Z @ (I - E)


def rol_hypotheses(tid: TheoremId, A, B, W) -> bool:
    """Constructive-sampler validator: every hypothesis clause of the theorem."""
    from .theorems import verify_reverse_order_law, Verdict

    return verify_reverse_order_law(tid, A, B, W).verdict is not Verdict.HYPOTHESIS_NOT_MET


def sample_rol_pair(theorem, n: int, seed: int, cap: int = 500,
                    complex_entries: bool = False) -> Tuple[Matrix, Matrix, Matrix]:
    """(A, B, weight) meeting the hypotheses of a reverse-order law.

    Raises HypothesisSamplingExhausted when ``cap`` attempts all fail.
    """
    tid = parse_theorem(theorem)
    if tid not in ROL_IDS:
        raise InvalidSpec("%s is not a reverse-order law" % tid)
    rng = SplitMix64(seed)
    cplx = complex_entries
    I = Matrix.identity(n)
    for _ in range(cap):
        W = _rol_weight(rng, n, cplx)
        # mostly intermediate rank: r = 0 and r = n make most laws trivial
        r = rng.randint(1, n - 1) if n >= 2 and rng.chance(3, 4) else rng.randint(0, n)
        if tid is TheoremId.ROL4_1:
            cand = _rol4_1_candidate(rng, n, r, W, cplx)
            if cand is None:
                continue
            A, B = cand
        elif tid is TheoremId.ROL4_2:
            cand = _rol4_1_candidate(rng, n, r, W, cplx)
            if cand is None:
                continue
            A0, B0 = cand
            Wi = inverse(W)
            A, B = Wi @ B0.H @ W, Wi @ A0.H @ W
        elif tid is TheoremId.ROL4_3:
            pick = rng.below(3)
            A, _ = index_one(rng, n, r, cplx=cplx)
            if pick == 0:
                Ag = group_inverse(A)
                B = A + random_matrix(rng, n, n, cplx=cplx) @ (I - A @ Ag)
            elif pick == 1:
                cand = _rol4_1_candidate(rng, n, r, W, cplx)
                if cand is None:
                    continue
                A, B = cand
            else:
                B, _ = index_one(rng, n, rng.randint(0, n), cplx=cplx)
        elif tid is TheoremId.ROL4_4:
            A, _ = index_one(rng, n, r, cplx=cplx)
            Ag = group_inverse(A)
            Z = random_matrix(rng, n, n, cplx=cplx)
            B = A @ A @ Ag + Z @ (I - A @ Ag)
        elif tid is TheoremId.ROL4_5:
            B, _ = index_one(rng, n, r, cplx=cplx)
            Bg = group_inverse(B)
            Z = random_matrix(rng, n, n, cplx=cplx)
            A = B + (I - B @ Bg) @ Z
        elif tid is TheoremId.ROL4_6:
            if rng.chance(1, 2):
                A, B = _rol4_6a(rng, n, r, cplx)
            else:
                A = rational_unitary(rng, n, cplx)
                B = random_invertible(rng, n, cplx=cplx)
        else:
            A, B, W = _rol4_7_candidate(rng, n, r, W, cplx)
        if rol_hypotheses(tid, A, B, W):
            return A, B, W
    raise HypothesisSamplingExhausted(tid.value, cap)


def _rol4_6a(rng, n, r, cplx):
    """Unitary B with B-invariant subspace V and an index-one A with R(A) = V."""
    U = rational_unitary(rng, n, cplx)
    blocks = []
    if r:
        blocks.append(rational_unitary(rng, r, cplx))
    if r < n:
        blocks.append(rational_unitary(rng, n - r, cplx))
    B = U @ block_diag(*blocks) @ U.H
    T = random_invertible(rng, n, cplx=cplx)
    rows = T.tolist()
    for i in range(r, n):
        for j in range(r):
            rows[i][j] = ZERO
    T = Matrix._wrap(rows)
    if not is_invertible(T):
        T = Matrix.identity(n)
    A, _ = index_one(rng, n, r, cplx=cplx, S=U @ T)
    return A, B


def _rol4_7_candidate(rng, n, r, W, cplx):
    pick = rng.below(3)
    if pick == 0:
        # commuting Hermitian pair with identity weight
        U = rational_unitary(rng, n, cplx)
        da = [rng.rational(3) if rng.chance(3, 4) else ZERO for _ in range(n)]
        db = [rng.rational(3) if rng.chance(3, 4) else ZERO for _ in range(n)]
        return U @ Matrix.diag(*da) @ U.H, U @ Matrix.diag(*db) @ U.H, Matrix.identity(n)
    A, _ = index_one(rng, n, r, cplx=cplx)
    if pick == 1:
        return A, inverse(W) @ A.H @ W, W
    B, _ = index_one(rng, n, rng.randint(0, n), cplx=cplx)
    return A, B, W

"""Seeded instance corpora shared by the acceptance and property tests."""

from geninv.core import compute, ind
from geninv.equations import DEFINING, InverseKind, check_membership
from geninv.matrix import Matrix
from geninv.sampler import (SplitMix64, adapted_weight, derive_seed, index_one, random_matrix,
                            random_weight)
from geninv.weighted import WeightedProblem, m_weighted_core, n_weighted_dual_core, one_3m, one_4n, weighted_mp

CORPUS_SEED = 20240611


def soundness_instance(n, i):
    """(A, M, N, W) with A index-one of rank in 0..n and Hermitian weights.

    Weight modes cycle through PD, indefinite and the isotropic forms that make
    the weighted inverses fail to exist, so both branches are exercised.
    """
    rng = SplitMix64(derive_seed(CORPUS_SEED, "soundness", n, i))
    cplx = rng.chance(1, 5)
    r = rng.randint(0, n)
    A, S = index_one(rng, n, r, cplx=cplx)
    modes = ["pd", "indefinite", "isotropic"]
    picks = [modes[rng.below(3)], modes[rng.below(3)]]
    M = adapted_weight(rng, S, r, "isotropic", cplx=cplx) if picks[0] == "isotropic" \
        else random_weight(rng, n, picks[0], cplx=cplx)
    N = adapted_weight(rng, S, r, "dual_isotropic", cplx=cplx) if picks[1] == "isotropic" \
        else random_weight(rng, n, picks[1], cplx=cplx)
    W = random_matrix(rng, n, n, cplx=cplx)
    return A, M, N, W


def all_witnesses(A: Matrix, M: Matrix, N: Matrix, W: Matrix):
    """{kind: witness or None} for every inverse kind."""
    problem = WeightedProblem(A, M=M, N=N)
    out = {}
    for kind in InverseKind:
        if kind is InverseKind.M_CORE:
            out[kind] = m_weighted_core(problem, cross_check=True).witness
        elif kind is InverseKind.N_DUAL_CORE:
            out[kind] = n_weighted_dual_core(problem, cross_check=True).witness
        elif kind is InverseKind.WEIGHTED_MP:
            out[kind] = weighted_mp(problem, cross_check=True).witness
        elif kind is InverseKind.ONE_3M:
            out[kind] = one_3m(A, M)
        elif kind is InverseKind.ONE_4N:
            out[kind] = one_4n(A, N)
        else:
            out[kind] = compute(kind, A, W)
    return out


def defining_holds(kind, A, X, M, N, W):
    """Exact check of the full defining set; returns the failing tags."""
    if kind is InverseKind.W_CORE_EP:
        from geninv.core import w_core_ep_residuals
        return ["w-core-ep"] if any(not r.is_zero() for r in w_core_ep_residuals(A, W, X)) else []
    k = max(ind(A), 1)
    res = check_membership(A, X, DEFINING[kind], M=M, N=N, k=k)
    return [c.tag.value for c in res.failing()]

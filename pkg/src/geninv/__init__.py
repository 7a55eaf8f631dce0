"""Exact weighted core inverses and mechanical checks of their theory."""

from .core import (core_ep_inverse, core_inverse, drazin_inverse, group_inverse, index, mp_inverse,
                   one_inverse, w_weighted_core_ep)
from .equations import EquationTag, InverseKind, check_equation, check_membership
from .matrix import Matrix, full_rank_factorize, inverse, rank, rref_rank, solve_general
from .theorems import Verdict, VerificationReport, verify_reverse_order_law, verify_theorem
from .weighted import (WeightPolicy, WeightedProblem, duality_transform, idempotent_pair, is_weighted_ep,
                       m_weighted_core, n_weighted_dual_core, weighted_mp)

__version__ = "0.1.0"

__all__ = [
    "Matrix", "rank", "rref_rank", "solve_general", "full_rank_factorize", "inverse",
    "index", "mp_inverse", "one_inverse", "group_inverse", "drazin_inverse", "core_inverse",
    "core_ep_inverse", "w_weighted_core_ep",
    "EquationTag", "InverseKind", "check_equation", "check_membership",
    "WeightPolicy", "WeightedProblem", "m_weighted_core", "n_weighted_dual_core", "weighted_mp",
    "duality_transform", "idempotent_pair", "is_weighted_ep",
    "Verdict", "VerificationReport", "verify_theorem", "verify_reverse_order_law",
]

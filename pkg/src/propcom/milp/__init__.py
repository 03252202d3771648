"""Integer-program builders, solver backends and the exact-search fallback."""

from .builders import (
    build_diff_committees,
    build_diff_committees_ejrp_quotient,
    build_jr_not_ejrp,
    build_jr_not_ejrp_quotient,
    build_p_candidates,
    build_p_candidates_ejrp_quotient,
    build_quotient_variant,
    decode_solution,
)
from .fpt import DistantPair, diff_committees_fpt_jr
from .model import LinearConstraint, MilpModel, SolveOutcome, Variable, write_lp
from .solvers import BackendError, available_backends, solve

__all__ = [
    "MilpModel",
    "Variable",
    "LinearConstraint",
    "SolveOutcome",
    "write_lp",
    "solve",
    "available_backends",
    "BackendError",
    "build_jr_not_ejrp",
    "build_diff_committees",
    "build_p_candidates",
    "build_jr_not_ejrp_quotient",
    "build_diff_committees_ejrp_quotient",
    "build_p_candidates_ejrp_quotient",
    "build_quotient_variant",
    "decode_solution",
    "diff_committees_fpt_jr",
    "DistantPair",
]

"""propcom: how much do proportionality axioms restrict committee elections?

Tools for approval-based multiwinner elections: verification of justified
representation (JR) and its level-t strengthenings up to EJR+, exact
counting and Monte-Carlo estimation of axiom-satisfying committees,
candidate importance measures (prevalence, removal power), integer-program
and combinatorial solvers for committee-space questions, proportional
voting rules, synthetic generators and pabulib ingestion.
"""

from ._kernel import COMPILED as kernel_compiled
from ._kernel import backend_name as kernel_backend
from .axioms import (
    EJRP,
    JR,
    Axiom,
    AxiomReport,
    Witness,
    check_ejrp,
    check_jr,
    check_t_ejrp,
    construct_ejrp_committee,
    parse_axiom,
    satisfies,
    t_ejrp_axiom,
)
from .core import (
    CandidateClass,
    Committee,
    Election,
    EnumerationCapExceeded,
    QuotientStructure,
    build_election,
    build_quotient,
    candidate_set,
    committee_distance,
    enumerate_committees,
    expected_random_distance,
)
from .counting import (
    SubsetCapExceeded,
    axiom_fraction_exact,
    completion_count,
    count_brute_force,
    count_jr_fpt,
)
from .generators import gen_euclidean, gen_resampling
from .rng import SplitMix64, spawn_seed
from .rules import (
    approval_scores,
    mes_with_phragmen_completion,
    relative_overlap,
    seq_pav,
    seq_phragmen,
    top_k_by_score,
)
from .sampling import (
    DrawCapExceeded,
    EstimatorResult,
    collect_satisfying_committees,
    estimate_avg_distance,
    estimate_fraction,
    estimate_power_index,
    estimate_prevalence,
    required_samples,
    sample_committee_uniform,
)

__version__ = "0.1.0"

__all__ = [
    "Axiom",
    "AxiomReport",
    "CandidateClass",
    "Committee",
    "DrawCapExceeded",
    "EJRP",
    "Election",
    "EnumerationCapExceeded",
    "EstimatorResult",
    "JR",
    "QuotientStructure",
    "SplitMix64",
    "SubsetCapExceeded",
    "Witness",
    "approval_scores",
    "axiom_fraction_exact",
    "build_election",
    "build_quotient",
    "candidate_set",
    "check_ejrp",
    "check_jr",
    "check_t_ejrp",
    "collect_satisfying_committees",
    "committee_distance",
    "completion_count",
    "construct_ejrp_committee",
    "count_brute_force",
    "count_jr_fpt",
    "enumerate_committees",
    "estimate_avg_distance",
    "estimate_fraction",
    "estimate_power_index",
    "estimate_prevalence",
    "expected_random_distance",
    "gen_euclidean",
    "gen_resampling",
    "kernel_backend",
    "kernel_compiled",
    "mes_with_phragmen_completion",
    "parse_axiom",
    "relative_overlap",
    "required_samples",
    "sample_committee_uniform",
    "satisfies",
    "seq_pav",
    "seq_phragmen",
    "spawn_seed",
    "t_ejrp_axiom",
    "top_k_by_score",
]

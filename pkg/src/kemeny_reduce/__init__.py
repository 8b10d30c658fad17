"""Search-space reduction rules for Kemeny rank aggregation.

The rules prove pairwise orders and exact positions that hold in every
Kemeny median of an election, so an exact solver only has to search the
remaining freedom. A brute-force oracle checks those claims on small
instances.
"""

from .core import (
    InconsistencyError,
    InputError,
    MajorityGraph,
    PairTally,
    PartialResult,
    SolvedRelation,
    VoteProfile,
    avg_distance,
    kendall_tau,
    kendall_tau_profile,
    known_positions,
    majority_graph,
    predecessors,
    successors,
    tally,
    transitive_closure,
)
from .oracle import MedianSet, OracleRefused, certify, enumerate_medians
from .rules import (
    RULES,
    ReductionReport,
    ab_majority,
    ab_mot,
    betzler34,
    combined_reduce,
    iterated_mot,
    minimize_pairwise_penalty,
    mot,
    positional_refine,
    run_rule,
    update_graph,
)

__version__ = "0.1.0"

__all__ = [
    "RULES",
    "InconsistencyError",
    "InputError",
    "MajorityGraph",
    "MedianSet",
    "OracleRefused",
    "PairTally",
    "PartialResult",
    "ReductionReport",
    "SolvedRelation",
    "VoteProfile",
    "ab_majority",
    "ab_mot",
    "avg_distance",
    "betzler34",
    "certify",
    "combined_reduce",
    "enumerate_medians",
    "iterated_mot",
    "kendall_tau",
    "kendall_tau_profile",
    "known_positions",
    "majority_graph",
    "minimize_pairwise_penalty",
    "mot",
    "positional_refine",
    "predecessors",
    "run_rule",
    "successors",
    "tally",
    "transitive_closure",
    "update_graph",
]

"""Reduction rules and a name-based dispatcher used by the CLI."""

from __future__ import annotations

import time

from ..core import InputError, VoteProfile, known_positions, majority_graph
from .combined import combined_reduce, update_graph
from .majority import (
    NonDirtyCert,
    ab_majority,
    alpha_beta,
    betzler34,
    good_ab_candidate,
    passes_threshold,
    positional_refine,
)
from .mot import (
    InferenceSets,
    ab_mot,
    ab_mot_passes,
    filtered_inference,
    inference_sets,
    inference_tensor,
    iterated_mot,
    iterated_mot_passes,
    mot,
    mot_report,
)
from .penalty import minimize_pairwise_penalty
from .report import ReductionReport

RULES = (
    "betzler34",
    "ab-majority",
    "mot",
    "iterated-mot",
    "ab-mot",
    "positional-refine",
    "combined",
)


def _refine_report(v: VoteProfile) -> ReductionReport:
    # positional refinement seeded with the iterated (alpha, beta)-MOT, to fixpoint
    start = time.perf_counter()
    g = majority_graph(v)
    rel = ab_mot(g)
    passes = 0
    while True:
        passes += 1
        nxt = positional_refine(g, rel)
        if nxt.pairs == rel.pairs:
            break
        rel = nxt
    solved = known_positions(rel)
    return ReductionReport(
        rule="positional-refine",
        n=v.n,
        solved_pairs=rel,
        solved_positions=solved,
        positioned=frozenset(solved),
        iterations=passes,
        elapsed_ms=(time.perf_counter() - start) * 1000,
    )


def run_rule(name: str, v: VoteProfile, threshold: int = 2) -> ReductionReport:
    """Run the rule called ``name`` (see ``RULES``) on a profile."""
    if threshold < 2:
        raise InputError("threshold must be at least 2")
    if name == "betzler34":
        return betzler34(majority_graph(v), threshold)
    if name == "ab-majority":
        return ab_majority(majority_graph(v), threshold)
    if name in ("mot", "iterated-mot", "ab-mot"):
        return mot_report(name, v)
    if name == "positional-refine":
        return _refine_report(v)
    if name == "combined":
        return combined_reduce(v, threshold)
    raise InputError(f"unknown rule {name!r}; choose from {', '.join(RULES)}")


__all__ = [
    "RULES",
    "InferenceSets",
    "NonDirtyCert",
    "ReductionReport",
    "ab_majority",
    "ab_mot",
    "ab_mot_passes",
    "alpha_beta",
    "betzler34",
    "combined_reduce",
    "filtered_inference",
    "good_ab_candidate",
    "inference_sets",
    "inference_tensor",
    "iterated_mot",
    "iterated_mot_passes",
    "minimize_pairwise_penalty",
    "mot",
    "passes_threshold",
    "positional_refine",
    "run_rule",
    "update_graph",
]

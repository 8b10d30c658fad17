"""Exhaustive Kemeny medians for small elections, and certification of rule
output against them.

Every ranking of the candidates is scored, so this is only usable up to
``MAX_CANDIDATES`` candidates; beyond that it refuses instead of sampling.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Union

import numpy as np

from .core import InputError, MajorityGraph, Ranking, SolvedRelation, VoteProfile, majority_graph
from .rules.report import ReductionReport

MAX_CANDIDATES = 10


class OracleRefused(InputError):
    """The instance is too large for exhaustive enumeration."""


@dataclass(frozen=True)
class MedianSet:
    optimal_score: Union[int, Fraction]
    medians: frozenset[Ranking]

    def position_table(self) -> np.ndarray:
        """``table[i, c]``: position of candidate c in the i-th median (sorted order)."""
        meds = sorted(self.medians)
        n = len(meds[0])
        table = np.empty((len(meds), n), dtype=np.int64)
        rows = np.arange(len(meds))[:, None]
        table[rows, np.asarray(meds)] = np.arange(n)
        return table


@lru_cache(maxsize=4)
def _all_permutations(n: int) -> np.ndarray:
    dtype = np.int8
    perms = np.fromiter(
        itertools.chain.from_iterable(itertools.permutations(range(n))),
        dtype=dtype,
        count=n * _factorial(n),
    ).reshape(-1, n)
    perms.flags.writeable = False
    return perms


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def enumerate_medians(source: Union[VoteProfile, MajorityGraph]) -> MedianSet:
    """All optimal rankings of a profile or of a weighted majority graph.

    A graph ranking's score is ``sum over x ahead of y of (m - D_xy) / 2``,
    which equals the Kendall-tau score when the graph comes from a profile.
    """
    g = majority_graph(source) if isinstance(source, VoteProfile) else source
    n = g.n
    if n > MAX_CANDIDATES:
        raise OracleRefused(
            f"exhaustive median enumeration is limited to n <= {MAX_CANDIDATES} candidates, got n={n}"
        )
    perms = _all_permutations(n)
    pos = np.empty_like(perms)
    rows = np.arange(len(perms))[:, None]
    pos[rows, perms] = np.arange(n, dtype=perms.dtype)
    # doubled disagreement weight of placing x ahead of y
    cost = g.m - g.margin.astype(np.int64)
    score2 = np.zeros(len(perms), dtype=np.int64)
    for x, y in itertools.combinations(range(n), 2):
        score2 += np.where(pos[:, x] < pos[:, y], cost[x, y], cost[y, x])
    best = int(score2.min())
    medians = frozenset(tuple(int(c) for c in p) for p in perms[score2 == best])
    score = best // 2 if best % 2 == 0 else Fraction(best, 2)
    return MedianSet(score, medians)


@dataclass(frozen=True)
class Certification:
    pair_violations: tuple[tuple[int, int], ...] = ()
    position_violations: tuple[tuple[int, int], ...] = field(default=())

    @property
    def certified(self) -> bool:
        return not self.pair_violations and not self.position_violations

    def __bool__(self) -> bool:
        return self.certified


def certify(claim: Union[ReductionReport, SolvedRelation], ms: MedianSet) -> Certification:
    """List every claimed pair or position some median contradicts."""
    if isinstance(claim, ReductionReport):
        rel, positions = claim.solved_pairs, claim.solved_positions
    else:
        rel, positions = claim, {}
    table = ms.position_table()
    if table.shape[1] != rel.n:
        raise InputError("claim and median set have different candidate counts")
    bad_pairs = tuple(
        (x, y) for x, y in sorted(rel.pairs) if np.any(table[:, x] > table[:, y])
    )
    bad_pos = tuple(
        (c, p) for c, p in sorted(positions.items()) if np.any(table[:, c] != p)
    )
    return Certification(bad_pairs, bad_pos)

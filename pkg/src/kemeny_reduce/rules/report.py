from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Sequence

from ..core import PartialResult, SolvedRelation


@dataclass(frozen=True)
class ReductionReport:
    """What one rule established about every median of an instance.

    ``solved_pairs`` and ``solved_positions`` are certified claims.
    ``positioned`` additionally counts members of blocks small enough to hand
    to an exact solver (at most the threshold), which is the statistic the
    block-splitting rules report.
    """

    rule: str
    n: int
    solved_pairs: SolvedRelation
    solved_positions: dict[int, int] = field(default_factory=dict)
    positioned: frozenset[int] = frozenset()
    partial: PartialResult | None = None
    iterations: int = 1
    rounds: tuple[dict, ...] = ()
    elapsed_ms: float = 0.0

    @property
    def pairs_total(self) -> int:
        return self.n * (self.n - 1) // 2

    @property
    def pairs_solved(self) -> int:
        return len(self.solved_pairs)

    @property
    def positions_solved(self) -> int:
        return len(self.positioned)

    def relabeled(self, perm: Sequence[int]) -> ReductionReport:
        return replace(
            self,
            solved_pairs=self.solved_pairs.relabeled(perm),
            solved_positions={perm[c]: p for c, p in self.solved_positions.items()},
            positioned=frozenset(perm[c] for c in self.positioned),
            partial=self.partial.relabeled(perm) if self.partial is not None else None,
        )

    def outcome(self) -> tuple:
        """Everything except timing, for equality checks."""
        return (
            self.rule,
            self.n,
            self.solved_pairs.pairs,
            tuple(sorted(self.solved_positions.items())),
            self.positioned,
            self.partial,
        )

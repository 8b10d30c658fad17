"""Mallows-model rankings via repeated insertion.

Randomness comes from numpy's Philox-4x64 counter-based generator keyed by
``SeedSequence([seed])`` (or ``[seed, index]`` for the index-th instance of a
batch), so every draw is reproducible from the seed alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ..core import InputError, Ranking, VoteProfile, kendall_tau


def make_rng(seed: int, index: Optional[int] = None) -> np.random.Generator:
    entropy = [int(seed)] if index is None else [int(seed), int(index)]
    if any(e < 0 for e in entropy):
        raise InputError("seeds must be non-negative")
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))


@dataclass(frozen=True)
class MallowsParams:
    n: int
    m: int
    theta: float
    center: Optional[Ranking] = None
    seed: int = 0

    def __post_init__(self):
        if not 0 < self.theta <= 1:
            raise InputError(f"theta must lie in (0, 1], got {self.theta}")
        if self.n < 1 or self.m < 1:
            raise InputError("n and m must be positive")
        if self.center is not None:
            c = tuple(int(x) for x in self.center)
            if sorted(c) != list(range(self.n)):
                raise InputError("center must be a permutation of 0..n-1")
            object.__setattr__(self, "center", c)

    @property
    def p(self) -> float:
        """Chance of keeping a pair in the center's order, 1 / (1 + theta)."""
        return 1.0 / (1.0 + self.theta)

    @property
    def center_ranking(self) -> Ranking:
        return self.center if self.center is not None else tuple(range(self.n))


def mallows_draws(n: int, m: int, theta: float, center: Sequence[int], rng: np.random.Generator) -> np.ndarray:
    """``m`` rankings as an ``(m, n)`` array of candidate ids.

    The center's i-th candidate (0-based) goes into slot ``s`` of the i+1
    available ones with probability proportional to ``theta**(i - s)``: it
    then precedes ``i - s`` earlier candidates, each such inversion costing
    a factor theta.
    """
    pos = np.zeros((m, n), dtype=np.int64)
    for i in range(n):
        weights = float(theta) ** np.arange(i, -1, -1, dtype=np.float64)
        cdf = np.cumsum(weights)
        cdf /= cdf[-1]
        slot = np.minimum(np.searchsorted(cdf, rng.random(m), side="right"), i)
        pos[:, :i] += pos[:, :i] >= slot[:, None]
        pos[:, i] = slot
    out = np.empty((m, n), dtype=np.int64)
    out[np.arange(m)[:, None], pos] = np.asarray(center, dtype=np.int64)[None, :]
    return out


def mallows_sample(params: MallowsParams, index: Optional[int] = None) -> VoteProfile:
    rng = make_rng(params.seed, index)
    draws = mallows_draws(params.n, params.m, params.theta, params.center_ranking, rng)
    return VoteProfile(params.n, tuple((tuple(r), 1) for r in draws.tolist()))


def mallows_batch(n: int, m: int, theta: float, count: int, seed: int) -> list[VoteProfile]:
    """``count`` independent profiles; instance i uses the sub-seed (seed, i)."""
    params = MallowsParams(n, m, theta, seed=seed)
    return [mallows_sample(params, i) for i in range(count)]


def mallows_pmf(r: Sequence[int], center: Sequence[int], theta: float) -> float:
    """Exact ``theta**d(r, center) / Z`` using the product form of Z."""
    z = 1.0
    for i in range(1, len(center) + 1):
        z *= sum(theta**k for k in range(i))
    return theta ** kendall_tau(r, center) / z

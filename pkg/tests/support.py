"""Shared instances and generators for the test suite."""

from __future__ import annotations

import itertools
import random

from hypothesis import strategies as st

from kemeny_reduce.core import VoteProfile
from kemeny_reduce.data import MallowsParams, mallows_sample

# a > b > c twice, b > c > a once; candidates a, b, c are 0, 1, 2
E1 = VoteProfile(3, (((0, 1, 2), 2), ((1, 2, 0), 1)))
REVERSAL = VoteProfile.from_rankings([(0, 1, 2), (2, 1, 0)])

# The plain one-sided (alpha, beta) test accepts candidate 0 here although
# medians 0123 and 2013 disagree on it.
ONE_SIDED_TRAP = VoteProfile.from_rankings(
    [(2, 0, 1, 3), (1, 2, 0, 3), (0, 1, 3, 2), (0, 1, 3, 2), (2, 3, 0, 1)]
)

# After the pair rules pin 18 arcs, the pinned graph makes candidate 5 look
# non-dirty with 0 on its left, but the unique median is 6 5 1 2 0 3 4.
PINNED_TRAP = VoteProfile.from_rankings(
    [
        (0, 1, 4, 2, 3, 6, 5),
        (6, 2, 4, 0, 5, 3, 1),
        (6, 3, 5, 1, 0, 4, 2),
        (5, 1, 2, 0, 6, 3, 4),
        (0, 5, 1, 6, 2, 3, 4),
        (5, 6, 1, 2, 0, 4, 3),
        (5, 2, 6, 1, 3, 4, 0),
        (6, 0, 1, 5, 4, 2, 3),
        (3, 2, 4, 6, 1, 0, 5),
    ]
)


def unanimous(n: int, m: int = 3) -> VoteProfile:
    return VoteProfile(n, ((tuple(range(n)), m),))


def sweep_grid(per_cell: int = 4, seed: int = 20240601):
    """Pinned-seed Mallows instances over n 4..8, m in {3,4,5,7}, theta in {0.3,0.7,1.0}."""
    out = []
    cells = itertools.product(range(4, 9), (3, 4, 5, 7), (0.3, 0.7, 1.0), range(per_cell))
    for index, (n, m, theta, i) in enumerate(cells):
        params = MallowsParams(n, m, theta, seed=seed)
        out.append(((n, m, theta, i), mallows_sample(params, index)))
    return out


def perturbed_profiles(count: int, seed: int, max_n: int = 7):
    """Profiles built by adjacent swaps around a random center, some fully shuffled."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(3, max_n)
        m = rng.randint(1, 8)
        base = list(range(n))
        rng.shuffle(base)
        votes = []
        for _ in range(m):
            r = base[:]
            for _ in range(rng.randint(0, 2 * n)):
                i = rng.randrange(n - 1)
                r[i], r[i + 1] = r[i + 1], r[i]
            if rng.random() < 0.2:
                rng.shuffle(r)
            votes.append(tuple(r))
        out.append(VoteProfile.from_rankings(votes))
    return out


@st.composite
def profiles(draw, min_n: int = 2, max_n: int = 6, max_votes: int = 6):
    n = draw(st.integers(min_n, max_n))
    rankings = draw(
        st.lists(st.permutations(list(range(n))), min_size=1, max_size=max_votes)
    )
    mults = draw(st.lists(st.integers(1, 3), min_size=len(rankings), max_size=len(rankings)))
    return VoteProfile(n, tuple((tuple(r), k) for r, k in zip(rankings, mults)))


# acceptance criterion number -> (passed, detail); printed by conftest
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


class criterion:
    """Context manager recording one acceptance verdict, FAIL on any exception."""

    def __init__(self, number: int, title: str):
        self.number, self.title, self.detail = number, title, ""

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        ok = exc_type is None
        note = self.detail if ok else f"{exc_type.__name__}: {exc}"
        ACCEPTANCE[self.number] = (ok, f"{self.title} ({note})" if note else self.title)
        line = f"criterion {self.number}: {'PASS' if ok else 'FAIL'} - {ACCEPTANCE[self.number][1]}"
        print(line)
        return False

"""Election data model: rankings, vote profiles, pairwise tallies, majority
graphs and certified relations between candidates.

Candidates are dense integer ids ``0..n-1``. A ranking is a tuple of ids,
best first. Margins are kept in count scale (``before[x][y] - before[y][x]``)
so every rule comparison is exact integer or rational arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

Ranking = tuple[int, ...]


class InputError(ValueError):
    """Malformed or out-of-contract input."""


class InconsistencyError(RuntimeError):
    """A certified relation turned out to contain a cycle.

    Every rule is sound, so this can only signal a bug.
    """


def _check_permutation(order: Sequence[int], n: int) -> None:
    if len(order) != n or sorted(order) != list(range(n)):
        raise InputError(f"not a permutation of 0..{n - 1}: {tuple(order)}")


@dataclass(frozen=True)
class VoteProfile:
    """A multiset of strict total orders over ``n`` candidates."""

    n: int
    votes: tuple[tuple[Ranking, int], ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        votes = tuple((tuple(int(c) for c in r), int(k)) for r, k in self.votes)
        object.__setattr__(self, "votes", votes)
        if self.n < 1:
            raise InputError("a profile needs at least one candidate")
        if not votes:
            raise InputError("a profile needs at least one vote")
        for r, k in votes:
            _check_permutation(r, self.n)
            if k < 1:
                raise InputError(f"multiplicity must be positive, got {k}")
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != self.n or len(set(labels)) != self.n:
                raise InputError("labels must be n distinct strings")
            object.__setattr__(self, "labels", labels)

    @classmethod
    def from_rankings(cls, rankings: Iterable[Sequence[int]], labels=None) -> VoteProfile:
        rankings = [tuple(r) for r in rankings]
        if not rankings:
            raise InputError("a profile needs at least one vote")
        return cls(len(rankings[0]), tuple((r, 1) for r in rankings), labels)

    @property
    def m(self) -> int:
        return sum(k for _, k in self.votes)

    def label(self, c: int) -> str:
        return self.labels[c] if self.labels is not None else str(c)

    def expanded(self) -> Iterator[Ranking]:
        for r, k in self.votes:
            for _ in range(k):
                yield r

    def scaled(self, k: int) -> VoteProfile:
        """Every vote repeated ``k`` times (same rankings, multiplicities times k)."""
        return VoteProfile(self.n, tuple((r, c * k) for r, c in self.votes), self.labels)

    def relabeled(self, perm: Sequence[int]) -> VoteProfile:
        """Rename candidate ``c`` to ``perm[c]``."""
        _check_permutation(perm, self.n)
        labels = None
        if self.labels is not None:
            new = [""] * self.n
            for c, s in enumerate(self.labels):
                new[perm[c]] = s
            labels = tuple(new)
        votes = tuple((tuple(perm[c] for c in r), k) for r, k in self.votes)
        return VoteProfile(self.n, votes, labels)

    def reversed(self) -> VoteProfile:
        return VoteProfile(self.n, tuple((r[::-1], k) for r, k in self.votes), self.labels)


def kendall_tau(a: Sequence[int], b: Sequence[int]) -> int:
    """Number of candidate pairs ordered oppositely by ``a`` and ``b``."""
    if len(a) != len(b):
        raise InputError(f"rankings differ in length: {len(a)} != {len(b)}")
    n = len(a)
    _check_permutation(a, n)
    _check_permutation(b, n)
    pos = [0] * n
    for i, c in enumerate(b):
        pos[c] = i
    seq = [pos[c] for c in a]
    return sum(1 for i, j in itertools.combinations(range(n), 2) if seq[i] > seq[j])


def kendall_tau_profile(r: Sequence[int], v: VoteProfile) -> int:
    if len(r) != v.n:
        raise InputError(f"ranking has {len(r)} candidates, profile has {v.n}")
    return sum(k * kendall_tau(r, vote) for vote, k in v.votes)


def positions(r: Sequence[int]) -> list[int]:
    """Inverse permutation: ``positions(r)[c]`` is the index of ``c`` in ``r``."""
    pos = [0] * len(r)
    for i, c in enumerate(r):
        pos[c] = i
    return pos


@dataclass(frozen=True)
class PairTally:
    """``before[x, y]`` counts votes (with multiplicity) ranking x ahead of y."""

    n: int
    m: int
    before: np.ndarray = field(repr=False)

    def __post_init__(self):
        b = self.before
        if b.shape != (self.n, self.n):
            raise InputError("tally shape does not match n")
        if np.any(np.diag(b) != 0):
            raise InputError("tally diagonal must be zero")
        off = b + b.T
        np.fill_diagonal(off, self.m)
        if np.any(off != self.m):
            raise InputError("before[x][y] + before[y][x] must equal m")
        b.flags.writeable = False


def tally(v: VoteProfile) -> PairTally:
    before = np.zeros((v.n, v.n), dtype=np.int64)
    for r, k in v.votes:
        pos = np.asarray(positions(r))
        before += k * (pos[:, None] < pos[None, :])
    return PairTally(v.n, v.m, before)


@dataclass(frozen=True)
class MajorityGraph:
    """Antisymmetric integer margin matrix with scale denominator ``m``.

    ``margin[x, y] / m`` is the normalized ``a_xy - a_yx``. After certified
    arcs are pinned to ``m`` the matrix need not come from any profile.
    """

    n: int
    m: int
    margin: np.ndarray = field(repr=False)

    def __post_init__(self):
        d = self.margin
        if d.shape != (self.n, self.n):
            raise InputError("margin shape does not match n")
        if np.any(d != -d.T):
            raise InputError("margins must be antisymmetric")
        if np.any(np.abs(d) > self.m):
            raise InputError("margins must lie in [-m, m]")
        d.flags.writeable = False

    def rows(self) -> list[list[int]]:
        """Margins as nested lists of Python ints (unbounded precision)."""
        return self.margin.tolist()

    def __eq__(self, other):
        if not isinstance(other, MajorityGraph):
            return NotImplemented
        return self.n == other.n and self.m == other.m and np.array_equal(self.margin, other.margin)

    def __hash__(self):
        return hash((self.n, self.m, self.margin.tobytes()))


def graph_from_tally(t: PairTally) -> MajorityGraph:
    return MajorityGraph(t.n, t.m, t.before - t.before.T)


def majority_graph(v: VoteProfile) -> MajorityGraph:
    return graph_from_tally(tally(v))


def avg_distance(v: VoteProfile) -> Fraction:
    """Mean Kendall-tau distance over unordered pairs of vote instances.

    Uses ``2/(m(m-1)) * sum_{x<y} before[x][y] * before[y][x]``: a pair of
    votes disagrees on {x, y} exactly when one ranks x first and the other y.
    """
    m = v.m
    if m < 2:
        raise InputError("average distance needs at least two votes")
    b = tally(v).before.tolist()
    total = sum(b[x][y] * b[y][x] for x, y in itertools.combinations(range(v.n), 2))
    return Fraction(2 * total, m * (m - 1))


def nondirty_lower_bound(v: VoteProfile) -> Fraction:
    """Guaranteed number of 3/4-non-dirty candidates, ``n - 16 d_a / 3``."""
    return v.n - Fraction(16, 3) * avg_distance(v)


def kemeny_lower_bound(t: PairTally) -> int:
    """``sum_{x<y} min(before[x][y], before[y][x])``; no ranking scores lower."""
    b = t.before
    return int(np.minimum(b, b.T)[np.triu_indices(t.n, 1)].sum())


# ---------------------------------------------------------------------------
# Certified relations


def _close_masks(succ: list[int]) -> list[int]:
    """Warshall closure on successor bitmasks; raises on a cycle."""
    succ = list(succ)
    n = len(succ)
    for k in range(n):
        bit, sk = 1 << k, succ[k]
        for i in range(n):
            if succ[i] & bit:
                succ[i] |= sk
    for i in range(n):
        if succ[i] >> i & 1:
            raise InconsistencyError(f"certified relation has a cycle through candidate {i}")
    return succ


def _preds_from_succ(succ: list[int]) -> list[int]:
    n = len(succ)
    pred = [0] * n
    for x in range(n):
        s = succ[x]
        while s:
            low = s & -s
            pred[low.bit_length() - 1] |= 1 << x
            s ^= low
    return pred


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class SolvedRelation:
    """Ordered pairs ``(x, y)`` meaning "x precedes y in every median"."""

    n: int
    pairs: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self):
        pairs = frozenset((int(x), int(y)) for x, y in self.pairs)
        for x, y in pairs:
            if not (0 <= x < self.n and 0 <= y < self.n) or x == y:
                raise InputError(f"invalid pair ({x}, {y}) for n={self.n}")
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def from_masks(cls, succ: list[int]) -> SolvedRelation:
        return cls(len(succ), frozenset((x, y) for x, s in enumerate(succ) for y in bits(s)))

    def masks(self) -> list[int]:
        succ = [0] * self.n
        for x, y in self.pairs:
            succ[x] |= 1 << y
        return succ

    def __contains__(self, pair) -> bool:
        return tuple(pair) in self.pairs

    def __iter__(self):
        return iter(sorted(self.pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def __or__(self, other: SolvedRelation) -> SolvedRelation:
        if self.n != other.n:
            raise InputError("relations over different candidate sets")
        return SolvedRelation(self.n, self.pairs | other.pairs)

    def __le__(self, other: SolvedRelation) -> bool:
        return self.pairs <= other.pairs

    def relabeled(self, perm: Sequence[int]) -> SolvedRelation:
        return SolvedRelation(self.n, frozenset((perm[x], perm[y]) for x, y in self.pairs))

    def is_closed(self) -> bool:
        return transitive_closure(self).pairs == self.pairs

    def decided(self, x: int, y: int) -> bool:
        return (x, y) in self.pairs or (y, x) in self.pairs


def transitive_closure(r: SolvedRelation) -> SolvedRelation:
    return SolvedRelation.from_masks(_close_masks(r.masks()))


def predecessors(x: int, r: SolvedRelation) -> frozenset[int]:
    return frozenset(z for z, w in r.pairs if w == x)


def successors(x: int, r: SolvedRelation) -> frozenset[int]:
    return frozenset(w for z, w in r.pairs if z == x)


def known_positions(r: SolvedRelation) -> dict[int, int]:
    """Candidates related to every other one, mapped to their absolute position."""
    succ = r.masks()
    pred = _preds_from_succ(succ)
    full = r.n - 1
    return {
        x: pred[x].bit_count()
        for x in range(r.n)
        if (succ[x] | pred[x]).bit_count() == full
    }


# ---------------------------------------------------------------------------
# Partial rankings


@dataclass(frozen=True)
class PartialResult:
    """``T1 z1 T2 z2 ... Tl zl T(l+1)``: fixed candidates between unresolved blocks."""

    blocks: tuple[frozenset[int], ...]
    fixed: tuple[int, ...]

    def __post_init__(self):
        blocks = tuple(frozenset(b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "fixed", tuple(self.fixed))
        if len(blocks) != len(self.fixed) + 1:
            raise InputError("need exactly one more block than fixed candidates")
        seen = set(self.fixed)
        if len(seen) != len(self.fixed):
            raise InputError("fixed candidates repeat")
        for b in blocks:
            if seen & b:
                raise InputError("blocks and fixed candidates overlap")
            seen |= b
        if seen != set(range(len(seen))):
            raise InputError("blocks and fixed candidates must partition 0..n-1")

    @property
    def n(self) -> int:
        return len(self.fixed) + sum(len(b) for b in self.blocks)

    def fixed_positions(self) -> dict[int, int]:
        out, offset = {}, 0
        for b, z in zip(self.blocks, self.fixed):
            offset += len(b)
            out[z] = offset
            offset += 1
        return out

    def exact_positions(self) -> dict[int, int]:
        """Fixed candidates plus sole members of singleton blocks."""
        out, offset = {}, 0
        for i, b in enumerate(self.blocks):
            if len(b) == 1:
                out[next(iter(b))] = offset
            offset += len(b)
            if i < len(self.fixed):
                out[self.fixed[i]] = offset
                offset += 1
        return out

    def segments(self) -> list[frozenset[int]]:
        """Blocks and fixed singletons in rank order, empty blocks dropped."""
        out = []
        for i, b in enumerate(self.blocks):
            if b:
                out.append(b)
            if i < len(self.fixed):
                out.append(frozenset((self.fixed[i],)))
        return out

    def implied_pairs(self) -> SolvedRelation:
        """Every pair of candidates lying in different segments."""
        pairs = set()
        segs = self.segments()
        for i, a in enumerate(segs):
            for b in segs[i + 1:]:
                pairs.update((x, y) for x in a for y in b)
        return SolvedRelation(self.n, frozenset(pairs))

    def relabeled(self, perm: Sequence[int]) -> PartialResult:
        return PartialResult(
            tuple(frozenset(perm[c] for c in b) for b in self.blocks),
            tuple(perm[z] for z in self.fixed),
        )

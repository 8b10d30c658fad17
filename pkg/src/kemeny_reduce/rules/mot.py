"""Pair rules: the Major Order Theorem (plain and iterated) and the
iterated (alpha, beta)-MOT.

Passes are evaluated against a snapshot of the closed relation from the
previous pass; pairs found in one pass are merged and closed at the end of
it. The first pass of every rule therefore starts from the given ``known``
relation (empty by default).
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from ..core import (
    InputError,
    MajorityGraph,
    SolvedRelation,
    VoteProfile,
    _close_masks,
    _preds_from_succ,
    bits,
    known_positions,
    majority_graph,
    positions,
)
from .penalty import min_penalty_terms
from .report import ReductionReport


@dataclass(frozen=True)
class InferenceSets:
    """Multiset of candidates seen strictly between ``u`` and ``w`` (u first)."""

    u: int
    w: int
    counts: dict[int, int]

    def size(self) -> int:
        return sum(self.counts.values())

    def minus(self, other: InferenceSets) -> int:
        """Size of the multiset difference ``self \\ other``."""
        return sum(max(0, k - other.counts.get(z, 0)) for z, k in self.counts.items())


def inference_tensor(v: VoteProfile) -> np.ndarray:
    """``E[u, w, z]``: number of votes ranking u > z > w."""
    n = v.n
    E = np.zeros((n, n, n), dtype=np.int64)
    for r, k in v.votes:
        pos = np.asarray(positions(r))
        ahead = pos[:, None] < pos[None, :]
        E += k * (ahead[:, None, :] & ahead.T[None, :, :])
    return E


def inference_sets(v: VoteProfile, u: int, w: int) -> InferenceSets:
    if u == w:
        raise InputError("inference sets need two distinct candidates")
    counts: dict[int, int] = {}
    for r, k in v.votes:
        i, j = r.index(u), r.index(w)
        for z in r[i + 1:j]:
            counts[z] = counts.get(z, 0) + k
    return InferenceSets(u, w, counts)


def filtered_inference(E: np.ndarray, u: int, w: int, known: SolvedRelation) -> InferenceSets:
    """Inference set of (u, w) with candidates that cannot sit between them removed.

    z is dropped when the relation already places it before u or after w.
    """
    succ = _close_masks(known.masks())
    pred = _preds_from_succ(succ)
    banned = pred[u] | succ[w]
    counts = {
        z: int(E[u, w, z])
        for z in range(E.shape[0])
        if E[u, w, z] and not banned >> z & 1
    }
    return InferenceSets(u, w, counts)


def _mot_passes(v: VoteProfile, known: Optional[SolvedRelation], iterate: bool) -> Iterator[list[int]]:
    n = v.n
    g = majority_graph(v)
    rows = g.rows()
    E = inference_tensor(v)
    succ = _close_masks(known.masks()) if known is not None else [0] * n
    full = (1 << n) - 1
    while True:
        pred = _preds_from_succ(succ)
        new = list(succ)
        grew = False
        for x in range(n):
            for y in range(n):
                d = rows[x][y]
                if d <= 0 or succ[x] >> y & 1 or succ[y] >> x & 1:
                    continue
                # z may sit strictly between y and x only if not placed before y or after x
                keep_yx = full & ~(pred[y] | succ[x])
                keep_xy = full & ~(pred[x] | succ[y])
                rhs = 0
                e_yx, e_xy = E[y, x], E[x, y]
                for z in bits(keep_yx & ~(1 << x | 1 << y)):
                    a = int(e_yx[z])
                    if a:
                        b = int(e_xy[z]) if keep_xy >> z & 1 else 0
                        if a > b:
                            rhs += a - b
                if d > rhs:
                    new[x] |= 1 << y
                    grew = True
        if not grew:
            return
        succ = _close_masks(new)
        yield succ
        if not iterate:
            return


def mot(v: VoteProfile) -> SolvedRelation:
    """One MOT pass: x before y whenever ``D_xy > |E_yx \\ E_xy|``, then closed."""
    for succ in _mot_passes(v, None, iterate=False):
        return SolvedRelation.from_masks(succ)
    return SolvedRelation(v.n)


def iterated_mot_passes(v: VoteProfile, known: Optional[SolvedRelation] = None) -> Iterator[SolvedRelation]:
    """Closed relation after each productive pass of iterated MOT."""
    for succ in _mot_passes(v, known, iterate=True):
        yield SolvedRelation.from_masks(succ)


def iterated_mot(v: VoteProfile, known: Optional[SolvedRelation] = None) -> SolvedRelation:
    out = known if known is not None else SolvedRelation(v.n)
    for out in iterated_mot_passes(v, known):
        pass
    return out


def _ab_mot_passes(g: MajorityGraph, known: Optional[SolvedRelation]) -> Iterator[list[int]]:
    n = g.n
    rows = g.rows()
    succ = _close_masks(known.masks()) if known is not None else [0] * n
    full = (1 << n) - 1
    while True:
        pred = _preds_from_succ(succ)
        new = list(succ)
        grew = False
        for x in range(n):
            for y in range(n):
                d = rows[x][y]
                if d <= 0 or succ[x] >> y & 1 or succ[y] >> x & 1:
                    continue
                zmask = full & ~(pred[y] | succ[x] | 1 << x | 1 << y)
                terms = [(rows[z][x], rows[y][z]) for z in bits(zmask)]
                value, _ = min_penalty_terms(terms)
                if d > value:
                    new[x] |= 1 << y
                    grew = True
        if not grew:
            return
        succ = _close_masks(new)
        yield succ


def ab_mot_passes(g: MajorityGraph, known: Optional[SolvedRelation] = None) -> Iterator[SolvedRelation]:
    """Closed relation after each productive pass of the iterated (alpha, beta)-MOT."""
    for succ in _ab_mot_passes(g, known):
        yield SolvedRelation.from_masks(succ)


def ab_mot(
    g: MajorityGraph, known: Optional[SolvedRelation] = None, *, max_passes: Optional[int] = None
) -> SolvedRelation:
    """Iterated (alpha, beta)-MOT.

    ``(x, y)`` is added when ``D_xy`` strictly exceeds the minimum over
    alpha in [0, 1] of ``sum_z max(0, alpha*D_yz + (1-alpha)*D_zx)``, the sum
    running over candidates not yet known to precede y or follow x.
    Works on any weighted tournament, including updated graphs.
    """
    out = known if known is not None else SolvedRelation(g.n)
    for i, out in enumerate(ab_mot_passes(g, known), start=1):
        if max_passes is not None and i >= max_passes:
            break
    return out


def mot_report(rule: str, v: VoteProfile) -> ReductionReport:
    """Run one of the pair rules and wrap the outcome in a report."""
    start = time.perf_counter()
    if rule == "mot":
        passes = [mot(v)]
    elif rule == "iterated-mot":
        passes = list(iterated_mot_passes(v))
    elif rule == "ab-mot":
        passes = list(ab_mot_passes(majority_graph(v)))
    else:
        raise InputError(f"not a pair rule: {rule!r}")
    rel = passes[-1] if passes else SolvedRelation(v.n)
    solved = known_positions(rel)
    return ReductionReport(
        rule=rule,
        n=v.n,
        solved_pairs=rel,
        solved_positions=solved,
        positioned=frozenset(solved),
        iterations=len(passes),
        rounds=tuple({"pass": i + 1, "pairs": len(p)} for i, p in enumerate(passes)),
        elapsed_ms=(time.perf_counter() - start) * 1000,
    )


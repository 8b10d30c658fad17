"""Block-splitting majority rules: the 3/4-majority rule and the optimized
(alpha, beta)-majority rule, plus the position-aware pair refinement.

A candidate whose pairwise relations are all lopsided enough has the same
position in every median; the remaining candidates then split into the
ones ranked before it and the ones ranked after it, and each side is
reduced again on its own.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from ..core import (
    InconsistencyError,
    InputError,
    MajorityGraph,
    PartialResult,
    SolvedRelation,
    _close_masks,
    _preds_from_succ,
)
from .report import ReductionReport

THREE_HALVES = Fraction(3, 2)


@dataclass(frozen=True)
class NonDirtyCert:
    """Proof that ``candidate`` has a fixed position inside its block.

    ``left`` holds the block members ranked before it in every median,
    ``right`` the ones ranked after it.
    """

    candidate: int
    alpha: Fraction
    beta: Fraction
    left: frozenset[int]
    right: frozenset[int]


def alpha_beta(x: int, A: Iterable[int], rows: Sequence[Sequence[int]], m: int) -> tuple[Fraction, Fraction]:
    """Weakest majority against x and weakest majority of x, within A.

    alpha is the smallest share of votes by which a candidate beats (or
    ties) x, beta the smallest share by which x beats (or ties) a candidate.
    An empty side imposes no constraint and yields 1.
    """
    against = [rows[z][x] for z in A if z != x and rows[z][x] >= 0]
    for_x = [rows[x][z] for z in A if z != x and rows[x][z] >= 0]
    alpha = Fraction(m + min(against), 2 * m) if against else Fraction(1)
    beta = Fraction(m + min(for_x), 2 * m) if for_x else Fraction(1)
    return alpha, beta


def passes_threshold(alpha: Fraction, beta: Fraction, p: int) -> bool:
    """``alpha + (p+1)/p * beta > 3/2 + 1/(2p)`` with p >= 1.

    This bounds the case where x beats y but a ranking puts y first. The
    mirrored case (y beats x, x put first) is the same bound on reversed
    votes, i.e. with alpha and beta swapped.
    """
    return alpha + Fraction(p + 1, p) * beta > THREE_HALVES + Fraction(1, 2 * p)


def passes_both(alpha: Fraction, beta: Fraction, p: int) -> bool:
    return passes_threshold(alpha, beta, p) and passes_threshold(beta, alpha, p)


def _sides(x: int, A: Iterable[int], rows) -> tuple[frozenset[int], frozenset[int]]:
    left = frozenset(z for z in A if z != x and rows[z][x] > 0)
    right = frozenset(z for z in A if z != x and rows[x][z] >= 0)
    return left, right


def _directional(x: int, A: frozenset[int], rows, m: int, after: int, before: int, p: int) -> tuple:
    """Certified-relation-aware version of the two threshold tests.

    ``after``/``before`` are bitmasks of candidates already known to follow
    or precede x in every median. A ranking violating "x before y" (x beats
    y) can only hold candidates between y and x that are not known to
    follow x, so shares are taken over ``A`` minus ``after``; the mirrored
    claim drops ``before`` and swaps alpha and beta. A claim with no open
    candidate left to decide holds trivially.
    """
    open_ = [z for z in A if z != x and not (after | before) >> z & 1]
    fwd_needed = any(rows[x][z] >= 0 for z in open_)
    bwd_needed = any(rows[z][x] >= 0 for z in open_)
    fa, fb = alpha_beta(x, [z for z in A if not after >> z & 1], rows, m)
    ba, bb = alpha_beta(x, [z for z in A if not before >> z & 1], rows, m)
    fwd = not fwd_needed or passes_threshold(fa, fb, p)
    bwd = not bwd_needed or passes_threshold(bb, ba, p)
    return fwd, bwd, (fa, fb)


def good_ab_candidate(
    x: int, A: Iterable[int], g: MajorityGraph, known: Optional[SolvedRelation] = None
) -> Optional[NonDirtyCert]:
    """Certificate if x is a good (alpha, beta)-non-dirty candidate of A.

    ``g`` must be the margin graph of an actual profile: the test relies on
    vote counting (a candidate beating x and x beating y implies a share of
    votes ranking the first above y), which pinned graphs do not satisfy.
    Certified pairs go in ``known`` instead.
    """
    A = frozenset(A)
    if x not in A:
        raise InputError(f"candidate {x} is not in the block")
    if len(A) < 3:
        raise InputError("blocks of fewer than 3 candidates take the threshold base case")
    if known is None:
        return _ab_test(x, A, g.rows(), g.m)
    succ = _close_masks(known.masks())
    return _make_known_test(succ, _preds_from_succ(succ))(x, A, g.rows(), g.m)


def _ab_test(x, A, rows, m) -> Optional[NonDirtyCert]:
    alpha, beta = alpha_beta(x, A, rows, m)
    if not passes_both(alpha, beta, len(A) - 2):
        return None
    return NonDirtyCert(x, alpha, beta, *_sides(x, A, rows))


def _make_known_test(succ: list[int], pred: list[int]):
    def test(x, A, rows, m) -> Optional[NonDirtyCert]:
        fwd, bwd, (alpha, beta) = _directional(x, A, rows, m, succ[x], pred[x], len(A) - 2)
        if not (fwd and bwd):
            return None
        decided = succ[x] | pred[x]
        left = frozenset(
            z for z in A if z != x and (pred[x] >> z & 1 or (not decided >> z & 1 and rows[z][x] > 0))
        )
        return NonDirtyCert(x, alpha, beta, left, A - left - {x})

    return test


def _betzler_test(x, A, rows, m) -> Optional[NonDirtyCert]:
    # a_xz >= 3/4  <=>  2 * D_xz >= m
    if any(2 * abs(rows[x][z]) < m for z in A if z != x):
        return None
    left = frozenset(z for z in A if z != x and rows[z][x] > 0)
    right = frozenset(A) - left - {x}
    q = Fraction(3, 4)
    return NonDirtyCert(x, q, q, left, right)


_Test = Callable[[int, frozenset, list, int], Optional[NonDirtyCert]]


def _scan_order(A: frozenset[int], scan: str) -> list[int]:
    if scan == "descending":
        return sorted(A, reverse=True)
    return sorted(A)


def _split(A: frozenset[int], test: _Test, rows, m: int, t: int, scan: str, out: list) -> None:
    """Append ``("block", members, small)`` / ``("fixed", x)`` items in rank order."""
    if len(A) <= t:
        out.append(("block", A, True))
        return
    certs = []
    for x in _scan_order(A, scan):
        cert = test(x, A, rows, m)
        if cert is not None:
            certs.append(cert)
            if scan != "all":
                break
    if not certs:
        out.append(("block", A, False))
        return
    certs.sort(key=lambda c: len(c.left))
    done: frozenset[int] = frozenset()
    for cert in certs:
        if not done <= cert.left:
            raise InconsistencyError(f"certified candidates disagree around {cert.candidate}")
        _split(cert.left - done, test, rows, m, t, scan, out)
        out.append(("fixed", cert.candidate))
        done = cert.left | {cert.candidate}
    _split(A - done, test, rows, m, t, scan, out)


def _run_split(name: str, g: MajorityGraph, t: int, test: _Test, scan: str) -> ReductionReport:
    if t < 2:
        raise InputError("threshold must be at least 2")
    if scan not in ("all", "ascending", "descending"):
        raise InputError(f"unknown scan order {scan!r}")
    start = time.perf_counter()
    items: list = []
    _split(frozenset(range(g.n)), test, g.rows(), g.m, t, scan, items)
    blocks = [it[1] for it in items if it[0] == "block"]
    fixed = [it[1] for it in items if it[0] == "fixed"]
    partial = PartialResult(tuple(blocks), tuple(fixed))
    positioned = set(fixed)
    for it in items:
        if it[0] == "block" and it[2]:
            positioned |= it[1]
    return ReductionReport(
        rule=name,
        n=g.n,
        solved_pairs=partial.implied_pairs(),
        solved_positions=partial.exact_positions(),
        positioned=frozenset(positioned),
        partial=partial,
        elapsed_ms=(time.perf_counter() - start) * 1000,
    )


def betzler34(g: MajorityGraph, t: int = 2, *, scan: str = "all") -> ReductionReport:
    """Iterated 3/4-majority rule: split on candidates whose every pairwise
    relation is backed by at least 3/4 of the votes."""
    return _run_split("betzler34", g, t, _betzler_test, scan)


def ab_majority(
    g: MajorityGraph,
    t: int = 2,
    *,
    scan: str = "all",
    known: Optional[SolvedRelation] = None,
) -> ReductionReport:
    """Optimized (alpha, beta)-majority rule with block threshold ``t``.

    Blocks of at most ``t`` candidates are left to an exact solver and count
    as positioned. With ``scan="all"`` every good candidate of a block splits
    it at once, which makes the output independent of candidate numbering;
    ``"ascending"``/``"descending"`` split on the first good candidate found.

    ``g`` must come from a real profile. Pairs already certified for it go
    in ``known``: they drop out of the shares that could only matter for a
    ranking contradicting them, and they fix sides directly.
    """
    if known is None:
        return _run_split("ab-majority", g, t, _ab_test, scan)
    if known.n != g.n:
        raise InputError("relation and graph sizes differ")
    succ = _close_masks(known.masks())
    return _run_split("ab-majority", g, t, _make_known_test(succ, _preds_from_succ(succ)), scan)


def positional_refine(g: MajorityGraph, solved: SolvedRelation) -> SolvedRelation:
    """Fix majority relations of candidates known to sit near an end.

    A candidate with ``s`` certified successors is among the first
    ``n - s`` of every median; with ``p = n - 1 - s >= 1`` and a passing
    ``alpha + (p+1)/p * beta`` test it precedes everyone it beats by strict
    majority. The mirrored test uses certified predecessors and swaps
    alpha and beta. ``g`` must be the graph of a real profile.
    """
    n, m = g.n, g.m
    if solved.n != n:
        raise InputError("relation and graph sizes differ")
    rows = g.rows()
    succ = _close_masks(solved.masks())
    pred = _preds_from_succ(succ)
    everyone = frozenset(range(n))
    added = list(succ)
    for x in range(n):
        decided = succ[x] | pred[x] | 1 << x
        open_ = [y for y in range(n) if not decided >> y & 1]
        if not open_:
            continue
        p_first = n - 1 - succ[x].bit_count()
        p_last = n - 1 - pred[x].bit_count()
        first, _, _ = _directional(x, everyone, rows, m, succ[x], pred[x], max(p_first, 1))
        _, last, _ = _directional(x, everyone, rows, m, succ[x], pred[x], max(p_last, 1))
        for y in open_:
            if first and p_first >= 1 and rows[x][y] > 0:
                added[x] |= 1 << y
            if last and p_last >= 1 and rows[y][x] > 0:
                added[y] |= 1 << x
    return SolvedRelation.from_masks(_close_masks(added))

"""Exact minimization of the pairwise penalty used by the (alpha, beta)-MOT.

For an ordered pair (x, y) and a set Z of other candidates,

    F(a) = sum_{z in Z} max(0, a * D[y][z] + (1 - a) * D[z][x]),  a in [0, 1]

is convex and piecewise linear. Each term either is affine on the whole
interval, vanishes on it, or has one kink at ``D[z][x] / (D[z][x] - D[y][z])``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from ..core import InputError, MajorityGraph


def _terms(x: int, y: int, zs: Iterable[int], rows: Sequence[Sequence[int]]) -> list[tuple[int, int]]:
    # (value at a=0, value at a=1) for each z
    return [(rows[z][x], rows[y][z]) for z in zs]


def evaluate_penalty(terms: Sequence[tuple[int, int]], alpha: Fraction) -> Fraction:
    """F(alpha) for terms given as (D_zx, D_yz) pairs."""
    p, q = alpha.numerator, alpha.denominator
    total = 0
    for c, d in terms:
        v = c * q + (d - c) * p
        if v > 0:
            total += v
    return Fraction(total, q)


def breakpoints(terms: Sequence[tuple[int, int]]) -> list[Fraction]:
    """{0, 1} plus every interior kink, sorted and deduplicated."""
    pts = {Fraction(0), Fraction(1)}
    for c, d in terms:
        if c * d < 0:
            pts.add(Fraction(c, c - d))
    return sorted(pts)


def min_penalty_terms(terms: Sequence[tuple[int, int]]) -> tuple[Fraction, Fraction]:
    """(min F, leftmost argmin) by walking the kinks with the running slope.

    The right-derivative of a convex function is nondecreasing, so the
    leftmost minimizer is the first point whose right slope is >= 0.
    """
    slope = 0
    events: dict[Fraction, int] = {}
    for c, d in terms:
        if c >= 0 and d >= 0:
            slope += d - c
        elif c > 0 > d:
            # active on [0, t], slope d - c < 0, drops out after t
            slope += d - c
            t = Fraction(c, c - d)
            events[t] = events.get(t, 0) - (d - c)
        elif c < 0 < d:
            # inactive until t, then slope d - c > 0
            t = Fraction(c, c - d)
            events[t] = events.get(t, 0) + (d - c)
    best = Fraction(1)
    if slope >= 0:
        best = Fraction(0)
    else:
        for t in sorted(events):
            slope += events[t]
            if slope >= 0:
                best = t
                break
    return evaluate_penalty(terms, best), best


def min_penalty_breakpoints(terms: Sequence[tuple[int, int]]) -> tuple[Fraction, Fraction]:
    """Same result as :func:`min_penalty_terms` by evaluating F at every breakpoint."""
    best_val, best_t = None, None
    for t in breakpoints(terms):
        v = evaluate_penalty(terms, t)
        if best_val is None or v < best_val:
            best_val, best_t = v, t
    return best_val, best_t


def minimize_pairwise_penalty(
    x: int, y: int, Z: Iterable[int], g: MajorityGraph, *, method: str = "slope"
) -> tuple[Fraction, Fraction]:
    """Exact ``(min_value, argmin_alpha)`` of F over [0, 1] in count scale.

    Ties break toward the smallest alpha. ``method`` selects the slope walk
    (default) or brute evaluation at all breakpoints; both are exact.
    """
    Z = list(Z)
    if x in Z or y in Z:
        raise InputError("x and y must not belong to Z")
    terms = _terms(x, y, Z, g.rows())
    if method == "slope":
        return min_penalty_terms(terms)
    if method == "breakpoints":
        return min_penalty_breakpoints(terms)
    raise InputError(f"unknown method {method!r}")

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings

from kemeny_reduce.core import InputError, MajorityGraph, SolvedRelation, VoteProfile, kendall_tau_profile
from kemeny_reduce.oracle import MAX_CANDIDATES, OracleRefused, certify, enumerate_medians
from kemeny_reduce.rules import run_rule

from support import E1, REVERSAL, profiles, unanimous


def slow_medians(v):
    """Second enumeration route: itertools order, per-vote distances."""
    scores = {r: kendall_tau_profile(r, v) for r in itertools.permutations(reversed(range(v.n)))}
    best = min(scores.values())
    return best, {r for r, s in scores.items() if s == best}


class TestEnumerate:
    def test_e1(self):
        ms = enumerate_medians(E1)
        assert ms.optimal_score == 2
        assert ms.medians == {(0, 1, 2)}

    def test_unanimous(self):
        ms = enumerate_medians(unanimous(5))
        assert ms.optimal_score == 0 and ms.medians == {(0, 1, 2, 3, 4)}

    def test_reversal_all_optimal(self):
        ms = enumerate_medians(REVERSAL)
        assert ms.optimal_score == 3
        assert ms.medians == set(itertools.permutations(range(3)))

    @settings(max_examples=60, deadline=None)
    @given(profiles(max_n=6))
    def test_two_routes_agree(self, v):
        ms = enumerate_medians(v)
        best, meds = slow_medians(v)
        assert ms.optimal_score == best and ms.medians == meds

    def test_guard(self):
        with pytest.raises(OracleRefused):
            enumerate_medians(unanimous(MAX_CANDIDATES + 2))
        assert issubclass(OracleRefused, InputError)

    def test_graph_with_odd_half_score(self):
        D = np.array([[0, 1], [-1, 0]])
        ms = enumerate_medians(MajorityGraph(2, 2, D))
        assert ms.optimal_score == Fraction(1, 2)
        assert ms.medians == {(0, 1)}

    def test_position_table(self):
        table = enumerate_medians(REVERSAL).position_table()
        assert table.shape == (6, 3)
        assert sorted(map(tuple, table.tolist()))[0] == (0, 1, 2)


class TestCertify:
    def test_examples(self):
        ms = enumerate_medians(E1)
        assert certify(SolvedRelation(3), ms)
        assert certify(SolvedRelation(3, frozenset({(0, 1)})), ms)
        verdict = certify(SolvedRelation(3, frozenset({(1, 0)})), ms)
        assert not verdict and verdict.pair_violations == ((1, 0),)

    def test_report_positions_checked(self):
        ms = enumerate_medians(VoteProfile.from_rankings([(0, 1, 2), (1, 0, 2)]))
        rep = run_rule("ab-mot", E1)
        assert certify(rep, enumerate_medians(E1))
        # against medians {012, 102} the positions of 0 and 1 are not fixed
        verdict = certify(rep, ms)
        assert verdict.position_violations == ((0, 0), (1, 1))

    def test_size_mismatch(self):
        with pytest.raises(InputError):
            certify(SolvedRelation(4), enumerate_medians(E1))

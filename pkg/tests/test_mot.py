from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings

from kemeny_reduce.core import InputError, SolvedRelation, VoteProfile, majority_graph, tally
from kemeny_reduce.oracle import certify, enumerate_medians
from kemeny_reduce.rules import (
    ab_mot,
    ab_mot_passes,
    filtered_inference,
    inference_sets,
    inference_tensor,
    iterated_mot,
    iterated_mot_passes,
    mot,
    run_rule,
)

from support import E1, REVERSAL, perturbed_profiles, profiles, unanimous

A, B, C = 0, 1, 2


class TestInferenceSets:
    def test_e1(self):
        assert inference_sets(E1, B, A).counts == {C: 1}
        assert inference_sets(E1, A, B).counts == {}
        assert inference_sets(E1, C, B).counts == {}
        assert inference_sets(E1, B, A).minus(inference_sets(E1, A, B)) == 1

    def test_same_candidate(self):
        with pytest.raises(InputError):
            inference_sets(E1, A, A)

    @given(profiles(min_n=3))
    def test_tensor_matches_scan_and_bounds(self, v):
        E = inference_tensor(v)
        b = tally(v).before
        for u, w in itertools.permutations(range(v.n), 2):
            counts = inference_sets(v, u, w).counts
            assert {z: int(E[u, w, z]) for z in range(v.n) if E[u, w, z]} == counts
            for z, k in counts.items():
                assert k <= min(b[u][z], b[z][w])
            assert sum(counts.values()) <= v.m * (v.n - 2)

    def test_filter_drops_impossible_middles(self):
        E = inference_tensor(E1)
        known = SolvedRelation(3, frozenset({(A, C)}))
        # c cannot sit between b and a once a is known to precede c
        assert filtered_inference(E, B, A, known).counts == {}


class TestMot:
    def test_e1_single_pass(self):
        assert mot(E1).pairs == {(B, C), (A, C)}

    def test_e1_iterated(self):
        passes = list(iterated_mot_passes(E1))
        assert [len(p) for p in passes] == [2, 3]
        assert iterated_mot(E1).pairs == {(A, B), (B, C), (A, C)}

    def test_unanimous(self):
        assert len(mot(unanimous(5))) == 10

    def test_reversal_solves_nothing(self):
        assert len(mot(REVERSAL)) == 0
        assert len(iterated_mot(REVERSAL)) == 0
        assert len(ab_mot(majority_graph(REVERSAL))) == 0

    def test_report_counts_passes(self):
        rep = run_rule("iterated-mot", E1)
        assert rep.iterations == 2
        assert rep.rounds == ({"pass": 1, "pairs": 2}, {"pass": 2, "pairs": 3})


class TestAbMot:
    def test_e1_one_pass(self):
        passes = list(ab_mot_passes(majority_graph(E1)))
        assert len(passes) == 1
        assert len(passes[0]) == 3

    def test_max_passes(self):
        v = perturbed_profiles(1, seed=3)[0]
        g = majority_graph(v)
        assert ab_mot(g, max_passes=1) <= ab_mot(g)

    def test_dominates_mot_pairs(self):
        # the alpha = 0 / alpha = 1 end points are at least as strong as the MOT bound
        for v in perturbed_profiles(80, seed=21):
            assert mot(v) <= ab_mot(majority_graph(v))

    @settings(max_examples=80, deadline=None)
    @given(profiles(min_n=2, max_n=6))
    def test_sound(self, v):
        ms = enumerate_medians(v)
        assert certify(mot(v), ms)
        assert certify(iterated_mot(v), ms)
        assert certify(ab_mot(majority_graph(v)), ms)

    def test_passes_grow(self):
        for v in perturbed_profiles(80, seed=2):
            prev = SolvedRelation(v.n)
            for rel in ab_mot_passes(majority_graph(v)):
                assert prev <= rel and len(rel) > len(prev)
                prev = rel

    def test_scaling_invariant(self):
        v = VoteProfile.from_rankings([(0, 1, 2, 3), (1, 0, 3, 2), (0, 2, 1, 3)])
        assert ab_mot(majority_graph(v)) == ab_mot(majority_graph(v.scaled(4)))

"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v`` or
``python3 tests/test_acceptance.py``; the verdicts are repeated in the
"acceptance criteria" section of the terminal summary.
"""

from __future__ import annotations

import itertools
import math
import random
import sys
import time
from fractions import Fraction

import numpy as np
import pytest
from scipy.stats import chisquare

from kemeny_reduce.cli import main
from kemeny_reduce.core import MajorityGraph, SolvedRelation, kendall_tau, majority_graph
from kemeny_reduce.data import make_rng, mallows_batch, mallows_draws
from kemeny_reduce.oracle import certify, enumerate_medians
from kemeny_reduce.rules import (
    RULES,
    ab_majority,
    ab_mot_passes,
    betzler34,
    filtered_inference,
    inference_tensor,
    iterated_mot_passes,
    minimize_pairwise_penalty,
    mot,
    run_rule,
)

from support import E1, criterion, sweep_grid

SWEEP = sweep_grid()
GRID = 10_000


@pytest.fixture(scope="module")
def sweep_medians():
    return [enumerate_medians(v) for _, v in SWEEP]


def test_1_soundness_sweep(sweep_medians):
    with criterion(1, "soundness sweep, all rules vs exhaustive medians") as c:
        start = time.perf_counter()
        violations: dict[str, int] = {rule: 0 for rule in RULES}
        checks = 0
        for (_, v), ms in zip(SWEEP, sweep_medians):
            for t in (2, 3):
                for rule in RULES:
                    checks += 1
                    if not certify(run_rule(rule, v, t), ms):
                        violations[rule] += 1
        elapsed = time.perf_counter() - start
        c.detail = f"{len(SWEEP)} instances, {checks} checks, violations {sum(violations.values())}, {elapsed:.1f}s"
        assert len(SWEEP) >= 200
        assert {n for (n, _, _, _), _ in SWEEP} == set(range(4, 9))
        assert all(k == 0 for k in violations.values()), violations
        assert elapsed < 120


def test_2_dominance():
    with criterion(2, "3/4-rule positions contained in (alpha, beta)-rule positions") as c:
        strict = 0
        for _, v in SWEEP:
            g = majority_graph(v)
            for t in (2, 3):
                small, big = betzler34(g, t).positioned, ab_majority(g, t).positioned
                assert small <= big, (v, t)
                strict += small < big
        c.detail = f"{len(SWEEP)} instances x 2 thresholds, strictly larger on {strict}"


def test_3_worked_instance():
    with criterion(3, "worked-instance regression on a>b>c x2, b>c>a x1") as c:
        g = majority_graph(E1)
        a, b, cc = 0, 1, 2
        assert enumerate_medians(E1).medians == {(a, b, cc)}
        assert betzler34(g).positions_solved == 0
        assert ab_majority(g, 2).positions_solved == 3
        assert mot(E1).pairs == {(b, cc), (a, cc)}
        first = next(ab_mot_passes(g))
        assert len(first) == 3
        passes = list(iterated_mot_passes(E1))
        assert len(passes) == 2 and len(passes[-1]) == 3
        c.detail = "betzler34 0, ab-majority 3, mot {(b,c),(a,c)}, ab-mot 3 in 1 pass, iterated-mot 3 in 2 passes"


def _random_config(rng: random.Random):
    k = rng.randint(0, 50)
    m = rng.randint(1, 60)
    n = k + 2
    D = np.zeros((n, n), dtype=np.int64)
    for i, j in itertools.combinations(range(n), 2):
        d = rng.randrange(-m, m + 1, 2) if rng.random() < 0.9 else rng.choice((-m, m))
        D[i, j], D[j, i] = d, -d
    x, y = rng.sample(range(n), 2)
    Z = [z for z in range(n) if z not in (x, y)]
    return MajorityGraph(n, m, D), x, y, Z


_STEPS = np.arange(GRID + 1, dtype=np.int32)[:, None]


def _grid_values(g, x, y, Z) -> np.ndarray:
    # GRID * F(k / GRID) for k = 0..GRID; |terms| <= 1.8e6 and |Z| <= 50, so int32 is exact
    c = g.margin[Z, x].astype(np.int32)
    d = g.margin[y, Z].astype(np.int32)
    vals = _STEPS * (d - c)
    vals += c * GRID
    np.maximum(vals, 0, out=vals)
    return vals.sum(axis=1, dtype=np.int64)


def test_4_minimizer_exactness():
    with criterion(4, "penalty minimizer vs 10^4-point grid") as c:
        rng = random.Random(4)
        start = time.perf_counter()
        on_grid = 0
        for _ in range(10_000):
            g, x, y, Z = _random_config(rng)
            value, arg = minimize_pairwise_penalty(x, y, Z, g)
            grid = _grid_values(g, x, y, Z)
            gmin = int(grid.min())
            assert value * GRID <= gmin
            if (arg * GRID).denominator == 1:
                on_grid += 1
                assert value * GRID == gmin
                assert arg == Fraction(int(np.argmin(grid)), GRID)
        elapsed = time.perf_counter() - start
        c.detail = f"10000 configs, argmin on grid in {on_grid}, {elapsed:.1f}s"
        assert elapsed < 30


def test_5_high_agreement_regime():
    with criterion(5, "iterated (alpha, beta)-MOT pair share, n=m=50, theta=0.5") as c:
        start = time.perf_counter()
        shares = []
        for v in mallows_batch(50, 50, 0.5, 20, seed=5050):
            rep = run_rule("ab-mot", v)
            shares.append(rep.pairs_solved / rep.pairs_total)
        mean = sum(shares) / len(shares)
        c.detail = f"mean {mean:.4f} over 20 instances, min {min(shares):.4f}, {time.perf_counter() - start:.1f}s"
        assert mean >= 0.88


def test_6_monotonicity():
    with criterion(6, "pass-over-pass growth of relations and shrinking of inference sets") as c:
        passes_seen = 0
        for _, v in SWEEP:
            prev = SolvedRelation(v.n)
            for rel in ab_mot_passes(majority_graph(v)):
                assert prev <= rel
                prev = rel
                passes_seen += 1
            E = inference_tensor(v)
            chain = [SolvedRelation(v.n)] + list(iterated_mot_passes(v))
            for before, after in zip(chain, chain[1:]):
                assert before <= after
                for u, w in itertools.permutations(range(v.n), 2):
                    old = filtered_inference(E, u, w, before).counts
                    new = filtered_inference(E, u, w, after).counts
                    assert all(k <= old.get(z, 0) for z, k in new.items())
        c.detail = f"{len(SWEEP)} instances, {passes_seen} productive (alpha, beta)-MOT passes"


def test_7_scale_and_relabel_invariance():
    with criterion(7, "outputs unchanged by x3 duplication and candidate relabeling") as c:
        rng = random.Random(7)
        picks = rng.sample(SWEEP, 50)
        for _, v in picks:
            perm = list(range(v.n))
            rng.shuffle(perm)
            for rule in RULES:
                base = run_rule(rule, v)
                assert run_rule(rule, v.scaled(3)).outcome() == base.outcome()
                moved = base.relabeled(perm).outcome()
                assert run_rule(rule, v.relabeled(perm)).outcome() == moved
                assert run_rule(rule, v.scaled(3).relabeled(perm)).outcome() == moved
        c.detail = f"50 instances x {len(RULES)} rules x 3 transforms"


def test_8_mallows_fidelity():
    with criterion(8, "Mallows sampler frequencies") as c:
        draws = 1_000_000
        sample = mallows_draws(3, draws, 0.5, (0, 1, 2), make_rng(8))
        perms = list(itertools.permutations(range(3)))
        weights = {p: 0.5 ** kendall_tau(p, (0, 1, 2)) for p in perms}
        z = sum(weights.values())
        codes = sample[:, 0] * 9 + sample[:, 1] * 3 + sample[:, 2]
        worst = 0.0
        for p in perms:
            freq = np.count_nonzero(codes == p[0] * 9 + p[1] * 3 + p[2]) / draws
            prob = weights[p] / z
            se = math.sqrt(prob * (1 - prob) / draws)
            worst = max(worst, abs(freq - prob) / se)
        uniform = mallows_draws(4, 100_000, 1.0, (0, 1, 2, 3), make_rng(88))
        index = {p: i for i, p in enumerate(itertools.permutations(range(4)))}
        counts = np.bincount([index[tuple(r)] for r in uniform.tolist()], minlength=24)
        pvalue = chisquare(counts).pvalue
        c.detail = f"max deviation {worst:.2f} SE over 6 rankings, S4 chi-square p={pvalue:.3f}"
        assert worst <= 3
        assert pvalue > 0.001


def test_9_cli_determinism(tmp_path, capsys):
    with criterion(9, "byte-identical CLI output across runs") as c:
        outputs = []
        for run in ("a", "b"):
            folder = tmp_path / run
            assert main(["sample", "--n", "6", "--m", "5", "--theta", "0.5", "--seed", "42",
                         "--count", "3", "--out", str(folder)]) == 0
            report = tmp_path / f"report-{run}.json"
            argv = ["reduce", str(folder / "mallows-0001.soc"), "--no-timing", "--out", str(report)]
            for rule in RULES:
                argv += ["--rule", rule]
            assert main(argv) == 0
            files = sorted(folder.iterdir())
            outputs.append([f.read_bytes() for f in files] + [report.read_bytes()])
        capsys.readouterr()
        assert outputs[0] == outputs[1]
        c.detail = f"sample (3 files) and reduce ({len(RULES)} rules) identical"


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))

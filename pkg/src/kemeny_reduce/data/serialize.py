"""Canonical instance text (.soc style) and JSON / CSV report output."""

from __future__ import annotations

import csv
import io
import json
from typing import Iterable, Optional

from ..core import VoteProfile
from ..rules.report import ReductionReport

CSV_FIELDS = (
    "instance",
    "n",
    "m",
    "theta",
    "rule",
    "pairs_total",
    "pairs_solved",
    "positions_solved",
    "rounds",
    "millis",
)


def serialize_instance(v: VoteProfile) -> str:
    """Profile as a .soc document; candidate i is written as alternative i+1.

    Vote order and multiplicities are kept exactly, so parsing the text
    gives back an equal profile.
    """
    out = [
        "# DATA TYPE: soc",
        f"# NUMBER ALTERNATIVES: {v.n}",
        f"# NUMBER VOTERS: {v.m}",
        f"# NUMBER UNIQUE ORDERS: {len(v.votes)}",
    ]
    if v.labels is not None:
        out += [f"# ALTERNATIVE NAME {i + 1}: {s}" for i, s in enumerate(v.labels)]
    out += [f"{k}: " + ",".join(str(c + 1) for c in r) for r, k in v.votes]
    return "\n".join(out) + "\n"


def report_to_dict(report: ReductionReport, *, timing: bool = True) -> dict:
    d = {
        "rule": report.rule,
        "n": report.n,
        "pairs_total": report.pairs_total,
        "pairs_solved": report.pairs_solved,
        "positions_solved": report.positions_solved,
        "iterations": report.iterations,
        "rounds": [dict(r) for r in report.rounds],
        "solved_pairs": [list(p) for p in sorted(report.solved_pairs.pairs)],
        "solved_positions": [[c, p] for c, p in sorted(report.solved_positions.items())],
        "positioned": sorted(report.positioned),
        "partial": None,
    }
    if report.partial is not None:
        d["partial"] = {
            "blocks": [sorted(b) for b in report.partial.blocks],
            "fixed": list(report.partial.fixed),
        }
    if timing:
        d["elapsed_ms"] = round(report.elapsed_ms, 3)
    return d


def serialize_report(report: ReductionReport, *, timing: bool = True) -> str:
    return json.dumps(report_to_dict(report, timing=timing), indent=2) + "\n"


def summary_row(
    instance: str, v: VoteProfile, report: ReductionReport, theta: Optional[float] = None
) -> dict:
    return {
        "instance": instance,
        "n": v.n,
        "m": v.m,
        "theta": "" if theta is None else theta,
        "rule": report.rule,
        "pairs_total": report.pairs_total,
        "pairs_solved": report.pairs_solved,
        "positions_solved": report.positions_solved,
        "rounds": report.iterations,
        "millis": round(report.elapsed_ms, 3),
    }


def aggregate_rows(rows: list[dict]) -> list[dict]:
    """One row per rule with the mean of every numeric column."""
    out = []
    for rule in dict.fromkeys(r["rule"] for r in rows):
        group = [r for r in rows if r["rule"] == rule]
        agg = {"instance": "MEAN", "rule": rule, "theta": group[0]["theta"]}
        for key in ("n", "m", "pairs_total", "pairs_solved", "positions_solved", "rounds", "millis"):
            agg[key] = round(sum(r[key] for r in group) / len(group), 4)
        if "certified" in group[0]:
            agg["certified"] = all(r["certified"] for r in group)
        out.append(agg)
    return out


def write_csv(rows: Iterable[dict], fields: Iterable[str]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(fields), lineterminator="\n", extrasaction="ignore")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()

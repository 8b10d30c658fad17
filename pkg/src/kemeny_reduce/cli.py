"""Command-line entry point: ``kemeny-reduce {reduce,stats,sample,verify}``.

Exit statuses:
    0  success
    1  verify found a claim contradicted by some median
    2  usage, input or parse error
    3  internal inconsistency (a certified relation formed a cycle)
    4  instance too large for the exhaustive oracle
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Iterator, Optional, Sequence

from .core import InconsistencyError, InputError, VoteProfile
from .data import (
    CSV_FIELDS,
    MallowsParams,
    aggregate_rows,
    imputed_pairs,
    load_preflib,
    mallows_sample,
    report_to_dict,
    serialize_instance,
    summary_row,
    write_csv,
)
from .oracle import OracleRefused, certify, enumerate_medians
from .rules import RULES, run_rule

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_INCONSISTENT = 3
EXIT_REFUSED = 4

INSTANCE_SUFFIXES = (".soc", ".soi")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kemeny-reduce",
        description="Search-space reduction rules for Kemeny rank aggregation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def rules_and_threshold(p: argparse.ArgumentParser, default_help: str) -> None:
        p.add_argument(
            "--rule",
            action="append",
            choices=RULES,
            help=f"rule to run; repeat for several ({default_help})",
        )
        p.add_argument("--threshold", type=int, default=2, help="block size left to an exact solver (>= 2)")

    def generator(p: argparse.ArgumentParser) -> None:
        p.add_argument("--n", type=int, help="candidates per generated instance")
        p.add_argument("--m", type=int, help="votes per generated instance")
        p.add_argument("--theta", type=float, help="Mallows dispersion in (0, 1]")
        p.add_argument("--count", type=int, default=1, help="number of generated instances")
        p.add_argument("--seed", type=int, default=0, help="base seed; instance i uses (seed, i)")

    def output(p: argparse.ArgumentParser) -> None:
        p.add_argument("--out", type=Path, help="output path (default: stdout)")
        p.add_argument("--no-timing", action="store_true", help="omit wall-clock fields")

    p = sub.add_parser("reduce", help="run rules on one instance and write a JSON report")
    p.add_argument("input", type=Path, help=".soc or .soi file")
    rules_and_threshold(p, "default: combined")
    p.add_argument("--certify", action="store_true", help="check every claim against all medians")
    output(p)

    p = sub.add_parser("stats", help="summary table over files, directories or a generated batch")
    p.add_argument("inputs", type=Path, nargs="*", help=".soc/.soi files or directories of them")
    rules_and_threshold(p, "default: combined")
    generator(p)
    p.add_argument("--certify", action="store_true", help="add a certified column (n <= 10)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    output(p)

    p = sub.add_parser("sample", help="write Mallows instances as .soc text")
    generator(p)
    p.add_argument("--out", type=Path, help="directory for the files (stdout if omitted and count is 1)")

    p = sub.add_parser("verify", help="certify rules against exhaustively enumerated medians")
    p.add_argument("inputs", type=Path, nargs="*", help=".soc/.soi files or directories of them")
    rules_and_threshold(p, "default: all rules")
    generator(p)
    p.add_argument("--out", type=Path, help="output path (default: stdout)")
    return parser


# ---------------------------------------------------------------- instances


def _expand_paths(paths: Sequence[Path]) -> list[Path]:
    out = []
    for path in paths:
        if path.is_dir():
            found = sorted(p for p in path.iterdir() if p.suffix.lower() in INSTANCE_SUFFIXES)
            if not found:
                raise InputError(f"{path}: no .soc/.soi files")
            out.extend(found)
        elif path.exists():
            out.append(path)
        else:
            raise InputError(f"{path}: no such file")
    return out


def _generator_params(args) -> Optional[MallowsParams]:
    given = [args.n is not None, args.m is not None, args.theta is not None]
    if not any(given):
        return None
    if not all(given):
        raise InputError("a generated batch needs --n, --m and --theta")
    if args.count < 1:
        raise InputError("--count must be positive")
    return MallowsParams(args.n, args.m, args.theta, seed=args.seed)


def _instances(args) -> Iterator[tuple[str, VoteProfile, Optional[float]]]:
    params = _generator_params(args)
    if params is not None and args.inputs:
        raise InputError("give either input files or generator parameters, not both")
    if params is not None:
        for i in range(args.count):
            yield f"mallows-{i:04d}", mallows_sample(params, i), params.theta
        return
    if not args.inputs:
        raise InputError("no instances: give input files or --n/--m/--theta")
    for path in _expand_paths(args.inputs):
        v, _ = _load(path)
        yield str(path), v, None


def _load(path: Path):
    try:
        return load_preflib(path)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from None


def _write(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


# ---------------------------------------------------------------- commands


def cmd_reduce(args) -> int:
    v, doc = _load(args.input)
    rules = args.rule or ["combined"]
    ms = enumerate_medians(v) if args.certify else None
    reports = []
    for rule in rules:
        rep = run_rule(rule, v, args.threshold)
        entry = report_to_dict(rep, timing=not args.no_timing)
        if ms is not None:
            entry["certified"] = certify(rep, ms).certified
        reports.append(entry)
    out = {
        "instance": args.input.name,
        "n": v.n,
        "m": v.m,
        "threshold": args.threshold,
        "alternatives": doc.alternatives,
        "labels": list(v.labels) if v.labels is not None else None,
        "imputed_pairs": sorted([list(p) for p in imputed_pairs(doc)]),
        "reports": reports,
    }
    _write(json.dumps(out, indent=2) + "\n", args.out)
    if ms is not None and not all(r["certified"] for r in reports):
        return EXIT_VIOLATION
    return EXIT_OK


def _stats_rows(job) -> list[dict]:
    name, v, theta, rules, threshold, check, timing = job
    ms = enumerate_medians(v) if check else None
    rows = []
    for rule in rules:
        rep = run_rule(rule, v, threshold)
        row = summary_row(name, v, rep, theta)
        if not timing:
            row["millis"] = 0
        if ms is not None:
            row["certified"] = certify(rep, ms).certified
        rows.append(row)
    return rows


def cmd_stats(args) -> int:
    rules = args.rule or ["combined"]
    if args.jobs < 1:
        raise InputError("--jobs must be positive")
    jobs = [
        (name, v, theta, rules, args.threshold, args.certify, not args.no_timing)
        for name, v, theta in _instances(args)
    ]
    if args.certify:
        too_big = [j[0] for j in jobs if j[1].n > 10]
        if too_big:
            raise OracleRefused(f"--certify needs n <= 10; {too_big[0]} is larger")
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            per_instance = list(pool.map(_stats_rows, jobs))
    else:
        per_instance = [_stats_rows(j) for j in jobs]
    rows = [r for block in per_instance for r in block]
    rows += aggregate_rows(rows)
    if args.format == "json":
        text = json.dumps(rows, indent=2) + "\n"
    else:
        fields = CSV_FIELDS + (("certified",) if args.certify else ())
        text = write_csv(
            ({k: (str(val).lower() if isinstance(val, bool) else val) for k, val in r.items()} for r in rows),
            fields,
        )
    _write(text, args.out)
    if args.certify and not all(r["certified"] for r in rows):
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_sample(args) -> int:
    params = _generator_params(args)
    if params is None:
        raise InputError("sample needs --n, --m and --theta")
    if args.out is None:
        if args.count != 1:
            raise InputError("writing several instances needs --out DIR")
        sys.stdout.write(serialize_instance(mallows_sample(params, 0)))
        return EXIT_OK
    args.out.mkdir(parents=True, exist_ok=True)
    for i in range(args.count):
        text = serialize_instance(mallows_sample(params, i))
        (args.out / f"mallows-{i:04d}.soc").write_text(text, encoding="utf-8")
    return EXIT_OK


def cmd_verify(args) -> int:
    rules = args.rule or list(RULES)
    results = []
    for name, v, _ in _instances(args):
        ms = enumerate_medians(v)
        verdicts = []
        for rule in rules:
            cert = certify(run_rule(rule, v, args.threshold), ms)
            verdicts.append(
                {
                    "rule": rule,
                    "certified": cert.certified,
                    "pair_violations": [list(p) for p in cert.pair_violations],
                    "position_violations": [list(p) for p in cert.position_violations],
                }
            )
        results.append(
            {
                "instance": name,
                "n": v.n,
                "m": v.m,
                "optimal_score": str(ms.optimal_score),
                "medians": len(ms.medians),
                "rules": verdicts,
            }
        )
    _write(json.dumps(results, indent=2) + "\n", args.out)
    ok = all(r["certified"] for res in results for r in res["rules"])
    return EXIT_OK if ok else EXIT_VIOLATION


COMMANDS = {"reduce": cmd_reduce, "stats": cmd_stats, "sample": cmd_sample, "verify": cmd_verify}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if getattr(args, "threshold", 2) < 2:
            raise InputError("--threshold must be at least 2")
        return COMMANDS[args.command](args)
    except OracleRefused as exc:
        print(f"kemeny-reduce: refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except InconsistencyError as exc:
        print(f"kemeny-reduce: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except (InputError, OSError) as exc:
        print(f"kemeny-reduce: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

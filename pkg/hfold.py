# hfold.py
"""
Command line front end: tables, verification suites, the blueprint run and the run log.
Usage:
    python hfold.py tables fibers --system h3 --format md
    python hfold.py verify blueprint --out report.json
    python hfold.py verify all --jobs 4 --no-timing
    python hfold.py blueprint run --mode emit-terms
    python hfold.py history
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from itertools import repeat
from typing import Callable, Dict, List, Optional

from dotenv import load_dotenv
from pydantic import ValidationError

import report_logger
from api.models import CheckResult, RunConfig, SuiteReport, check
from utils import default_report_name

load_dotenv()

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
NO_A4_UNFOLDING = "A4 has no unfolding; use --kind d6 or e8"


def _e8_sample(config: RunConfig) -> Optional[int]:
    return config.e8_sample if config.kind == "e8" and not config.full else None


def _suite_rootsys(config: RunConfig) -> List[CheckResult]:
    from root_systems import rootsys_checks
    return rootsys_checks()


def _suite_folding(config: RunConfig) -> List[CheckResult]:
    from folding import folding_checks
    from tables import compare_with_figure
    return folding_checks() + [compare_with_figure("fibers", "h3"), compare_with_figure("fibers", "h4")]


def _suite_chevalley(config: RunConfig) -> List[CheckResult]:
    from grading import square_action_checks, verify_grading
    from tables import compare_with_figure
    results = verify_grading(config.kind.upper(), seed=config.seed, sample=_e8_sample(config))
    if config.kind == "d6":
        results.extend(square_action_checks(seed=config.seed))
        results.append(compare_with_figure("commaps", "h3"))
    elif config.kind == "e8":
        results.append(compare_with_figure("commaps", "h4"))
    return results


def _suite_parity(config: RunConfig) -> List[CheckResult]:
    from grading import parity_restriction_check, parity_suite
    return parity_suite(config.system.upper()) + [parity_restriction_check()]


def _suite_blueprint(config: RunConfig) -> List[CheckResult]:
    from blueprint import blueprint_checks, emit_terms
    results = blueprint_checks()
    if config.mode == "emit-terms":
        results.extend(r.to_check("blueprint-terms", f"term identity {r.label} evaluates to the verify-mode run")
                       for r in emit_terms())
    return results


def _suite_identities(config: RunConfig) -> List[CheckResult]:
    from identities import identity_checks
    return identity_checks()


def _suite_ringstructure(config: RunConfig) -> List[CheckResult]:
    from identities import verify_ring_structure
    return verify_ring_structure()


def _suite_steinberg(config: RunConfig) -> List[CheckResult]:
    from steinberg import steinberg_checks
    return steinberg_checks(config.ring, e8_sample=config.e8_sample, seed=config.seed, full=config.full)


def _suite_unfold(config: RunConfig) -> List[CheckResult]:
    from steinberg import unfold_and_verify
    if config.kind == "a4":
        raise ValueError(NO_A4_UNFOLDING)
    return unfold_and_verify(config.kind, sample=_e8_sample(config), seed=config.seed)


SUITES: Dict[str, Callable[[RunConfig], List[CheckResult]]] = {
    "rootsys": _suite_rootsys,
    "folding": _suite_folding,
    "chevalley": _suite_chevalley,
    "parity": _suite_parity,
    "blueprint": _suite_blueprint,
    "identities": _suite_identities,
    "ringstructure": _suite_ringstructure,
    "steinberg": _suite_steinberg,
    "unfold": _suite_unfold,
}


def _run_one(name: str, config: RunConfig) -> List[CheckResult]:
    try:
        return SUITES[name](config)
    except (ValueError, ArithmeticError) as e:
        return [check(f"{name}-error", f"the {name} suite runs to completion", False, str(e))]


def run_suite(name: str, config: RunConfig) -> SuiteReport:
    """
    Run one suite (or 'all') and collect its checks sorted by id.

    Raises:
        ValueError: for an unknown suite name, or unfold with --kind a4
    """
    if name != "all" and name not in SUITES:
        raise ValueError(f"Unknown suite '{name}'. Available: {sorted(SUITES) + ['all']}")
    if name == "unfold" and config.kind == "a4":
        raise ValueError(NO_A4_UNFOLDING)
    names = list(SUITES) if name == "all" else [name]
    start = time.perf_counter()
    if config.jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            batches = list(pool.map(_run_one, names, repeat(config)))
    else:
        batches = [_run_one(n, config) for n in names]
    checks = sorted((c for batch in batches for c in batch), key=lambda c: c.id)
    elapsed = round(time.perf_counter() - start, 3) if config.timing else 0.0
    return SuiteReport(suite=name, checks=checks, elapsed=elapsed)


def _write(text: str, out: Optional[str]):
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    out_dir = os.path.dirname(out)
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
    with open(out, "w", encoding="utf-8") as f:
        f.write(text)


def _report_json(report: SuiteReport) -> str:
    return json.dumps(report.model_dump(), indent=2, ensure_ascii=False) + "\n"


# --- commands ------------------------------------------------------------
def cmd_tables(config: RunConfig) -> int:
    from tables import build_table, render_table
    df = build_table(config.target, config.system)
    _write(render_table(df, config.format), config.out)
    return EXIT_OK


def cmd_verify(config: RunConfig) -> int:
    report = run_suite(config.target, config)
    out = config.out if config.out is not None else default_report_name(config.target)
    _write(_report_json(report), out)
    report_logger.log_run(command="verify", suite=config.target, passed=len(report.checks) - len(report.failed),
                          failed=len(report.failed), elapsed=report.elapsed,
                          extra={"ring": config.ring, "kind": config.kind, "system": config.system})
    for c in report.failed:
        print(f"FAIL {c.id}: {c.witness}", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_blueprint(config: RunConfig) -> int:
    if config.target == "identities":
        from identities import identity_checks
        checks = sorted(identity_checks(), key=lambda c: c.id)
        report = SuiteReport(suite="identities", checks=checks)
        _write(_report_json(report), config.out)
        return EXIT_OK if report.ok else EXIT_FAILED
    if config.target != "run":
        raise ValueError(f"Unknown blueprint action '{config.target}'. Use run or identities")

    from blueprint import emit_terms, run_blueprint
    records = emit_terms() if config.mode == "emit-terms" else run_blueprint()
    rows = []
    for r in records:
        row = {"label": r.label, "status": r.status, "witness": r.witness}
        if config.mode == "emit-terms":
            row["left"] = [str(r.left.left), str(r.left.right)]
            row["right"] = [str(r.right.left), str(r.right.right)]
        rows.append(row)
    _write(json.dumps(rows, indent=2, ensure_ascii=False) + "\n", config.out)
    return EXIT_OK if all(r.status == "verified" for r in records) else EXIT_FAILED


def cmd_history(config: RunConfig) -> int:
    df = report_logger.load_runs_df()
    if df.empty:
        print("No runs logged yet.")
        return EXIT_OK
    cols = ["ts", "command", "suite", "passed", "failed", "elapsed", "ring"]
    _write(df[cols].to_string(index=False) + "\n", config.out)
    return EXIT_OK


COMMANDS = {"tables": cmd_tables, "verify": cmd_verify, "blueprint": cmd_blueprint, "history": cmd_history}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hfold", description="Foldings of D6 and E8 Chevalley groups to H3 and H4.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser):
        p.add_argument("--system", default="h3", help="h3 or h4")
        p.add_argument("--kind", default="d6", help="a4, d6 or e8")
        p.add_argument("--ring", default="poly", help="z, zN or poly")
        p.add_argument("--out", default=None, help="output path, '-' for stdout")
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--seed", type=int, default=int(os.getenv("HFOLD_SEED", "20240601")))
        p.add_argument("--e8-sample", type=int, default=int(os.getenv("HFOLD_E8_SAMPLE", "40")))
        p.add_argument("--no-timing", action="store_true", help="report elapsed as 0")
        p.add_argument("--full", action="store_true", help="check every E8 instance instead of a sample")

    p = sub.add_parser("tables", help="emit a reference table")
    p.add_argument("target", help="fibers, parity, commaps or cycle")
    p.add_argument("--format", default="csv", help="csv, json or md")
    common(p)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("target", help=", ".join(sorted(SUITES)) + " or all")
    p.add_argument("--mode", default="verify", help="verify or emit-terms (blueprint suite)")
    common(p)

    p = sub.add_parser("blueprint", help="run the blueprint computation")
    p.add_argument("target", help="run or identities")
    p.add_argument("--mode", default="verify", help="verify or emit-terms")
    common(p)

    p = sub.add_parser("history", help="show the run log, newest first")
    common(p)
    return parser


def make_config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        target=getattr(args, "target", None),
        system=args.system.lower(),
        kind=args.kind.lower(),
        ring=args.ring,
        format=getattr(args, "format", "csv"),
        mode=getattr(args, "mode", "verify"),
        jobs=args.jobs,
        out=args.out,
        seed=args.seed,
        e8_sample=args.e8_sample,
        full=args.full,
        timing=not args.no_timing,
    )


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = make_config(args)
        return COMMANDS[config.command](config)
    except ValidationError as e:
        print(f"Invalid selector: {e.errors()[0]['msg']}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

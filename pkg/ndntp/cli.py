from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from .core.errors import NdntpError
from .harness.checks import CHECKS, run_check
from .harness.loader import builtin_names, load_scenario
from .harness.metrics import write_metrics
from .harness.runner import RunOverrides, RunResult, run_scenario, sweep
from .schemas import PitMode, StrategyKind
from .settings import settings
from .sim.audit import AuditTrail

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_AUDIT_FAILED = 2


def parse_seed_range(text: str) -> list[int]:
    """``a..b`` (inclusive) or a single seed."""
    if ".." in text:
        start, _, end = text.partition("..")
        try:
            first, last = int(start), int(end)
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad seed range {text!r}") from None
        if last < first:
            raise argparse.ArgumentTypeError(f"seed range {text!r} is empty")
        return list(range(first, last + 1))
    try:
        return [int(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad seed range {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ndntp", description="Deterministic NDNTP network simulator")
    parser.add_argument("--log-level", default=settings.LOG_LEVEL, help="logging level (default from NDNTP_LOG_LEVEL)")
    commands = parser.add_subparsers(dest="command", required=True)

    def add_run_options(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("--scenario", required=True, help="built-in scenario name or path to a JSON file")
        sub.add_argument("--pit-mode", type=PitMode, choices=list(PitMode), default=None,
                         help="override the scenario PIT mode")
        sub.add_argument("--strategy", type=StrategyKind, choices=list(StrategyKind), default=None,
                         help="override every strategy assignment")
        sub.add_argument("--out", default=settings.OUT_DIR, help="output directory")
        sub.add_argument("--format", choices=("csv", "jsonl"), default="csv", help="metrics file format")

    run = commands.add_parser("run", help="run one scenario")
    add_run_options(run)
    run.add_argument("--seed", type=int, default=settings.SIM_SEED, help="seed (default NDNTP_SIM_SEED or the scenario's)")
    run.add_argument("--db", action="store_true", default=settings.PERSIST_RUNS, help="store the run in the results database")

    scenarios = commands.add_parser("scenarios", help="built-in scenarios")
    scenarios.add_argument("action", choices=("list",))

    sweep_cmd = commands.add_parser("sweep", help="run one scenario over a range of seeds")
    add_run_options(sweep_cmd)
    sweep_cmd.add_argument("--seeds", type=parse_seed_range, required=True, help="seed range a..b (inclusive)")
    sweep_cmd.add_argument("--workers", type=int, default=settings.SWEEP_WORKERS, help="worker processes")

    audit = commands.add_parser("audit", help="check properties of a recorded audit trail")
    audit.add_argument("--trail", required=True, help="audit trail file (JSON lines)")
    audit.add_argument("--check", action="append", choices=sorted(CHECKS), default=None,
                       help="check to run; repeat for several (default: all)")

    serve = commands.add_parser("serve", help="start the results API")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser


def _stem(result: RunResult) -> str:
    return f"{result.scenario}-s{result.seed}-{result.pit_mode}"


def write_run(result: RunResult, out_dir: Path, fmt: str) -> list[Path]:
    stem = _stem(result)
    paths = [
        write_metrics(result.metrics, out_dir / f"{stem}.{fmt}", fmt),
        result.trail.write(out_dir / f"{stem}-trail.jsonl"),
    ]
    summary_path = out_dir / f"{stem}-summary.json"
    summary_path.write_text(json.dumps(result.summary, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    paths.append(summary_path)
    return paths


def _persist(result: RunResult) -> None:
    from sqlmodel import Session

    from .db.session import engine, init_db
    from .db.store import save_run

    init_db()
    with Session(engine) as session:
        run = save_run(session, result)
    print(f"stored run {run.id}")


def cmd_run(args: argparse.Namespace) -> int:
    config = load_scenario(args.scenario)
    result = run_scenario(config, RunOverrides(seed=args.seed, pit_mode=args.pit_mode, strategy=args.strategy))
    for path in write_run(result, Path(args.out), args.format):
        print(path)
    if args.db:
        _persist(result)
    return EXIT_OK


def cmd_scenarios(args: argparse.Namespace) -> int:
    for name in builtin_names():
        print(name)
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    config = load_scenario(args.scenario)
    results = sweep(
        config,
        args.seeds,
        RunOverrides(pit_mode=args.pit_mode, strategy=args.strategy),
        workers=args.workers,
    )
    out_dir = Path(args.out)
    merged = []
    for result in results:
        write_run(result, out_dir, args.format)
        merged.extend(result.metrics)
    first, last = results[0], results[-1]
    path = write_metrics(
        merged,
        out_dir / f"{config.name}-sweep-s{first.seed}-s{last.seed}-{first.pit_mode}.{args.format}",
        args.format,
    )
    print(path)
    return EXIT_OK


def cmd_audit(args: argparse.Namespace) -> int:
    try:
        trail = AuditTrail.load(args.trail)
    except (OSError, ValueError, TypeError) as exc:
        print(f"cannot read audit trail: {exc}", file=sys.stderr)
        return EXIT_INVALID

    failed = False
    for name in args.check or sorted(CHECKS):
        violations = run_check(name, trail)
        if violations:
            failed = True
            print(f"{name}: FAIL ({len(violations)} violations)")
            for violation in violations:
                print(f"  {violation.message}")
        else:
            print(f"{name}: ok")
    return EXIT_AUDIT_FAILED if failed else EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("ndntp.main:app", host=args.host, port=args.port)
    return EXIT_OK


COMMANDS = {
    "run": cmd_run,
    "scenarios": cmd_scenarios,
    "sweep": cmd_sweep,
    "audit": cmd_audit,
    "serve": cmd_serve,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=args.log_level.upper(), format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except NdntpError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID

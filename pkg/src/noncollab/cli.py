"""Command-line entry point: run, report, replay."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .agent.transcript import SchemaVersionError, Transcript, load_transcripts
from .config import ConfigError, RunConfig
from .evaluation.report import build_report, render_report, report_json
from .orchestrator import ABORT_THRESHOLD, execute
from .replay import render_transcript


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="noncollab", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run the scenario x mode x trial grid")
    run.add_argument("--config", required=True)
    run.add_argument("--mode", action="append", help="behavior mode, e.g. impatience or tangential+incomplete")
    run.add_argument("--trials", type=int)
    run.add_argument("--seed", type=int)
    run.add_argument("--workers", type=int)
    run.add_argument("--output-dir")
    run.add_argument("--force", action="store_true", help="re-run cells that already have transcripts")
    rep = sub.add_parser("report", help="recompute metrics from a transcript directory")
    rep.add_argument("dir")
    rep.add_argument("--json", action="store_true", help="print the JSON report instead of tables")
    rp = sub.add_parser("replay", help="render one transcript as a dialogue")
    rp.add_argument("file")
    return parser


def _cmd_run(args) -> int:
    try:
        cfg = RunConfig.load(args.config)
        overrides = {
            "modes": args.mode,
            "trials": args.trials,
            "seed": args.seed,
            "workers": args.workers,
            "output_dir": args.output_dir,
        }
        data = {k: getattr(cfg, k) for k in cfg.__dataclass_fields__ if k != "base_dir"}
        data.update({k: v for k, v in overrides.items() if v is not None})
        cfg = RunConfig.from_dict(data, base_dir=cfg.base_dir)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    summary = execute(cfg, force=args.force)
    print(render_report(summary.report), end="")
    print(
        f"\n{summary.executed} simulations run, {summary.skipped} skipped, {summary.aborted} aborted; "
        f"transcripts in {cfg.output_path}"
    )
    if summary.abort_rate > ABORT_THRESHOLD:
        print(f"error: {summary.abort_rate:.0%} of simulations aborted", file=sys.stderr)
        return 1
    return 0


def _cmd_report(args) -> int:
    directory = Path(args.dir)
    try:
        transcripts = load_transcripts(directory) if directory.is_dir() else []
    except SchemaVersionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if not transcripts:
        print(f"error: no transcripts in {directory}", file=sys.stderr)
        return 2
    report = build_report(transcripts)
    print(report_json(report) if args.json else render_report(report), end="")
    return 0


def _cmd_replay(args) -> int:
    try:
        transcript = Transcript.load(args.file)
    except SchemaVersionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError, TypeError, KeyError) as exc:
        print(f"error: cannot read transcript {args.file}: {exc}", file=sys.stderr)
        return 2
    print(render_transcript(transcript), end="")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR, format="%(levelname)s %(name)s: %(message)s")
    handler = {"run": _cmd_run, "report": _cmd_report, "replay": _cmd_replay}[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())

"""Metrics and analytics reports, recomputed from transcripts alone."""

from __future__ import annotations

import json
from collections import defaultdict
from typing import Any, Iterable

from ..agent.transcript import Transcript
from ..behaviors.modes import COLLABORATIVE, all_mode_combinations
from ..env.catalog import DOMAIN_APP, Catalog
from ..env.multiwoz import ENTITY_KEY
from .analytics import behavior_analytics
from .errors import classify_db_errors, classify_write_call_errors
from .metrics import graded, round1, success_rate

REPORT_VERSION = 1
HALLUCINATION_NOTE = "result hallucination uses a string-containment proxy over numbers and reference codes"


def _mode_order(modes: Iterable[str]) -> list[str]:
    canonical = [m.name for m in all_mode_combinations()]
    modes = set(modes)
    return [m for m in canonical if m in modes] + sorted(modes - set(canonical))


def _gt_calls(t: Transcript) -> list[tuple[str, dict]]:
    calls = []
    for rec in t.ground_truth:
        params = dict(rec.get("params", {}))
        if rec["domain"] in ENTITY_KEY:
            params[ENTITY_KEY[rec["domain"]]] = rec.get("entity_id")
        calls.append((f"{DOMAIN_APP[rec['domain']]}_book", params))
    return calls


def build_report(transcripts: list[Transcript], catalog: Catalog | None = None) -> dict[str, Any]:
    if not transcripts:
        raise ValueError("no transcripts to report on")
    by_mode: dict[str, list[Transcript]] = defaultdict(list)
    for t in sorted(transcripts, key=lambda t: t.file_name):
        by_mode[t.mode].append(t)
    baseline = None
    if COLLABORATIVE in by_mode and graded(by_mode[COLLABORATIVE]):
        baseline = success_rate(by_mode[COLLABORATIVE]).sr
    metrics, analytics = {}, {}
    for mode in _mode_order(by_mode):
        group = by_mode[mode]
        kept = graded(group)
        aborted = sum(t.outcome.status == "aborted" for t in group)
        if kept:
            m = success_rate(group, baseline).to_dict()
        else:
            m = {"n": 0, "sr": None, "relative_sr": None, "iga": None, "avg_steps": None,
                 "limit_exceeded_rate": None, "excluded": len(group)}
        m["aborted"] = aborted
        metrics[mode] = m
        rows = [behavior_analytics(t, catalog) for t in kept]
        n = len(rows) or 1
        analytics[mode] = {
            "avg_duplicated_helper_calls": round(sum(r["duplicated_helper_calls"] for r in rows) / n, 3),
            "avg_parameter_hallucinations": round(sum(r["parameter_hallucinations"] for r in rows) / n, 3),
            "apology_ratio": round1(100.0 * sum(r["apology_turns"] for r in rows) / max(1, sum(r["talk_turns"] for r in rows))),
            "avg_complaints": round(sum(r["complaints"] for r in rows) / n, 3),
            "result_hallucination_rate": round1(100.0 * sum(bool(r["result_hallucination_flags"]) for r in rows) / n),
        }
    errors = []
    totals = {"db": defaultdict(int), "write_call": defaultdict(int)}
    for t in sorted(transcripts, key=lambda t: t.file_name):
        if t.outcome.status == "aborted" or t.outcome.ga_exhausted or t.outcome.success:
            continue
        db = classify_db_errors(t.final_bookings, t.ground_truth)
        wc = classify_write_call_errors(t.agent_actions(), _gt_calls(t), catalog)
        for tag in db.values():
            totals["db"][tag] += 1
        for tag, count in wc.items():
            totals["write_call"][tag] += count
        errors.append(
            {"file": t.file_name, "scenario_id": t.scenario_id, "mode": t.mode, "trial": t.trial,
             "db": db, "write_call": dict(sorted(wc.items()))}
        )
    return {
        "report_version": REPORT_VERSION,
        "transcripts": len(transcripts),
        "baseline_sr": baseline,
        "metrics": metrics,
        "analytics": analytics,
        "errors": errors,
        "error_totals": {k: dict(sorted(v.items())) for k, v in totals.items()},
        "notes": [HALLUCINATION_NOTE],
    }


def report_json(report: dict[str, Any]) -> str:
    return json.dumps(report, indent=1, sort_keys=True) + "\n"


def _fmt(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:.1f}"
    return str(value)


def _table(headers: list[str], rows: list[list[Any]]) -> str:
    cells = [headers] + [[_fmt(v) for v in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def render_report(report: dict[str, Any]) -> str:
    m, a = report["metrics"], report["analytics"]
    out = ["Success rates"]
    out.append(_table(
        ["mode", "n", "SR", "Relative SR", "IGA", "avg steps", "limit %", "aborted"],
        [[k, v["n"], v["sr"], v["relative_sr"], v["iga"], v["avg_steps"], v["limit_exceeded_rate"], v["aborted"]]
         for k, v in m.items()],
    ))
    out.append("")
    out.append("Behavior analytics")
    out.append(_table(
        ["mode", "dup helpers", "param halluc.", "apology %", "complaints", "result halluc. %"],
        [[k, v["avg_duplicated_helper_calls"], v["avg_parameter_hallucinations"], v["apology_ratio"],
          v["avg_complaints"], v["result_hallucination_rate"]] for k, v in a.items()],
    ))
    out.append("")
    out.append("Errors on failed simulations")
    if report["errors"]:
        out.append(_table(
            ["scenario", "mode", "trial", "database", "write calls"],
            [[e["scenario_id"], e["mode"], e["trial"],
              ", ".join(f"{d}:{t}" for d, t in sorted(e["db"].items())) or "-",
              ", ".join(f"{t}x{n}" for t, n in e["write_call"].items()) or "-"] for e in report["errors"]],
        ))
    else:
        out.append("(none)")
    out.append("")
    out.append("Note: " + HALLUCINATION_NOTE + ".")
    return "\n".join(out) + "\n"

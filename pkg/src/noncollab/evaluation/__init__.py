from .analytics import behavior_analytics, cited_tokens, is_apology, judge_apology_detector
from .errors import DB_TAGS, WRITE_TAGS, classify_db_errors, classify_write_call_errors
from .metrics import (
    DEFAULT_MAX_ATTEMPTS,
    RunMetrics,
    goal_alignment,
    graded,
    percentage,
    relative_sr,
    round1,
    run_with_ga_guarantee,
    sr_from_counts,
    success_rate,
)
from .report import build_report, render_report, report_json
from .sft import export_sft_samples, write_jsonl

__all__ = [
    "DB_TAGS",
    "DEFAULT_MAX_ATTEMPTS",
    "WRITE_TAGS",
    "RunMetrics",
    "behavior_analytics",
    "build_report",
    "cited_tokens",
    "classify_db_errors",
    "classify_write_call_errors",
    "export_sft_samples",
    "goal_alignment",
    "graded",
    "is_apology",
    "judge_apology_detector",
    "percentage",
    "relative_sr",
    "render_report",
    "report_json",
    "round1",
    "run_with_ga_guarantee",
    "sr_from_counts",
    "success_rate",
    "write_jsonl",
]

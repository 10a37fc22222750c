"""Failure taxonomies: per-domain database errors and write-call errors."""

from __future__ import annotations

from collections import Counter
from typing import Any, Iterable, Mapping, Sequence

from ..env.canonical import params_key
from ..env.catalog import API_ALIASES, Catalog, default_catalog
from ..env.multiwoz import BookingRecord

DB_TAGS = ("no_book", "wrong_book", "multi_book")
WRITE_TAGS = ("parse_error", "no_gt_api", "wrong_input_parameter", "invalid_api")


def _record(item: BookingRecord | Mapping[str, Any]) -> BookingRecord:
    return item if isinstance(item, BookingRecord) else BookingRecord.from_dict(item)


def classify_db_errors(
    final_bookings: Iterable[BookingRecord | Mapping[str, Any]],
    ground_truth: Iterable[BookingRecord | Mapping[str, Any]],
) -> dict[str, str]:
    """One tag per ground-truth domain that went wrong."""
    bookings = [_record(b) for b in final_bookings]
    tags = {}
    for truth in map(_record, ground_truth):
        mine = [b for b in bookings if b.domain == truth.domain]
        if not mine:
            tags[truth.domain] = "no_book"
        elif len(mine) > 1:
            tags[truth.domain] = "multi_book"
        elif mine[0].key() != truth.key():
            tags[truth.domain] = "wrong_book"
    return tags


def classify_write_call_errors(
    action_log: Sequence[Mapping[str, Any]],
    gt_write_calls: Sequence[tuple[str, Mapping[str, Any]]],
    catalog: Catalog | None = None,
) -> Counter:
    """Tag agent actions against the ground-truth write calls.

    ``action_log`` holds agent actions as stored in transcripts
    (``kind``, ``api_name``, ``input_parameters``).
    """
    catalog = catalog or default_catalog()
    writes = catalog.write_api_names()
    tags: Counter = Counter()
    made: list[tuple[str, str]] = []
    for action in action_log:
        if action["kind"] == "parse_error":
            tags["parse_error"] += 1
        elif action["kind"] == "api_call":
            name = API_ALIASES.get(action["api_name"], action["api_name"])
            if name in writes:
                made.append((name, params_key(action.get("input_parameters") or {})))
    gt_names = {name for name, _ in gt_write_calls}
    for name, params in gt_write_calls:
        same_name = [p for n, p in made if n == name]
        if not same_name:
            tags["no_gt_api"] += 1
        elif params_key(params) not in same_name:
            tags["wrong_input_parameter"] += 1
    tags["invalid_api"] += sum(1 for n, _ in made if n not in gt_names)
    return +tags

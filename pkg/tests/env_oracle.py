"""Brute-force reference checks for the booking environment."""

from __future__ import annotations

import json
import random
from pathlib import Path

from noncollab.env.scenario import mini_pack

DB_DIR = Path(__file__).resolve().parents[1] / "src" / "noncollab" / "data" / "mini_pack" / "db"


def _minutes(hhmm: str) -> int:
    h, m = hhmm.split(":")
    return int(h) * 60 + int(m)


def _reference_scan(rows: list[dict], filters: dict) -> list[int]:
    hits = []
    for row in rows:
        keep = True
        for key, want in filters.items():
            if key == "arriveBy":
                keep = _minutes(row["arriveBy"]) <= _minutes(want)
            elif key == "leaveAt":
                keep = _minutes(row["leaveAt"]) >= _minutes(want)
            else:
                keep = row[key] == want
            if not keep:
                break
        if keep:
            hits.append(int(row["id"]))
    return sorted(hits)


def random_train_filters(rng: random.Random, rows: list[dict]) -> dict:
    filters: dict = {}
    if rng.random() < 0.9:
        filters["arriveBy" if rng.random() < 0.5 else "leaveAt"] = f"{rng.randint(0, 23):02d}:{rng.randint(0, 59):02d}"
    if rng.random() < 0.3:
        filters["leaveAt"] = f"{rng.randint(0, 23):02d}:{rng.choice([0, 15, 30, 45]):02d}"
    for key in ("departure", "destination", "day"):
        if rng.random() < 0.5:
            filters[key] = rng.choice(rows)[key]
    return filters


def retrieve_mismatches(n: int, seed: int) -> int:
    rows = json.loads((DB_DIR / "train_db.json").read_text(encoding="utf-8"))
    env = mini_pack().scenario("mul0001").new_environment()
    rng = random.Random(seed)
    bad = 0
    for _ in range(n):
        filters = random_train_filters(rng, rows)
        got = sorted(e["id"] for e in env.execute("train_retrieve", dict(filters)))
        bad += got != _reference_scan(rows, filters)
    return bad


def _book_args(rng: random.Random, domain: str) -> tuple[str, dict]:
    day = rng.choice(["monday", "tuesday", "friday", "sunday"])
    if domain == "restaurant":
        return "restaurant_book", {"restaurant_id": 19210, "people": str(rng.randint(1, 8)), "day": day, "time": "18:45"}
    return "taxi_book", {"departure": "centre", "destination": "station", "leaveAt": f"{rng.randint(0, 23):02d}:00"}


def duplicate_bookings_rejected(n: int, seed: int) -> bool:
    rng = random.Random(seed)
    for _ in range(n):
        env = mini_pack().scenario("mul0001").new_environment(rng=random.Random(rng.random()))
        domain = rng.choice(["restaurant", "taxi"])
        first = env.execute(*_book_args(rng, domain))
        second = env.execute(*_book_args(rng, domain))
        if first.get("status") != "booked" or second.get("error") != "duplicate_domain_booking":
            return False
        if len(env.final_bookings()) != 1:
            return False
    return True


def book_cancel_restores(n: int, seed: int) -> bool:
    rng = random.Random(seed)
    for _ in range(n):
        env = mini_pack().scenario("mul0001").new_environment(rng=random.Random(rng.random()))
        if rng.random() < 0.5:
            env.execute(*_book_args(rng, "taxi"))
        before = env.final_bookings()
        booked = env.execute(*_book_args(rng, "restaurant"))
        by = {"reference": booked["reference"]} if rng.random() < 0.5 else {"domain": "restaurant"}
        cancelled = env.execute("book_cancel", by)
        if cancelled.get("status") != "cancelled" or env.final_bookings() != before:
            return False
    return True

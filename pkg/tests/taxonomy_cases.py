"""Fifty constructed (final state, ground truth, action log) cases with hand labels.

Each case applies one named mutation per ground-truth domain. The labels come
from a fixed table keyed by mutation name, not from the classifier.
"""

from __future__ import annotations

import itertools

TRAIN = {"domain": "train", "entity_id": 1223, "params": {"people": "2"}}
RESTAURANT = {"domain": "restaurant", "entity_id": 19210, "params": {"people": "2", "day": "sunday", "time": "18:45"}}
HOTEL = {"domain": "hotel", "entity_id": 7, "params": {"people": "3", "day": "friday", "stay": "2"}}
API = {"train": ("train_book", "train_id"), "restaurant": ("restaurant_book", "restaurant_id"), "hotel": ("accommodation_book", "hotel_id")}

# mutation -> (database tag or None, write-call tag or None)
LABELS = {
    "correct": (None, None),
    "missing": ("no_book", "no_gt_api"),
    "double": ("multi_book", None),
    "wrong_entity": ("wrong_book", "wrong_input_parameter"),
    "wrong_param": ("wrong_book", "wrong_input_parameter"),
}
MUTATIONS = tuple(LABELS)


def _call(record: dict) -> dict:
    name, key = API[record["domain"]]
    return {"kind": "api_call", "api_name": name, "input_parameters": {key: record["entity_id"], **record["params"]}}


def _apply(truth: dict, mutation: str) -> tuple[list[dict], list[dict]]:
    """Final bookings and write calls an agent would leave behind."""
    if mutation == "missing":
        return [], []
    if mutation == "correct":
        return [truth], [_call(truth)]
    if mutation == "double":
        other = {**truth, "params": {**truth["params"], "people": "9"}}
        return [truth, other], [_call(truth), _call(other)]
    if mutation == "wrong_entity":
        wrong = {**truth, "entity_id": truth["entity_id"] + 1}
    else:
        wrong = {**truth, "params": {**truth["params"], "people": "5"}}
    return [wrong], [_call(wrong)]


def _case(name: str, truths: list[dict], mutations: tuple[str, ...], parse_errors: int, stray_write: bool) -> dict:
    final, actions = [], [{"kind": "api_call", "api_name": "show_app_description", "input_parameters": {}}]
    db_tags, write_tags = {}, {}
    for truth, mutation in zip(truths, mutations):
        f, a = _apply(truth, mutation)
        final += f
        actions += a
        db_tag, write_tag = LABELS[mutation]
        if db_tag:
            db_tags[truth["domain"]] = db_tag
        if write_tag:
            write_tags[write_tag] = write_tags.get(write_tag, 0) + 1
    actions += [{"kind": "parse_error", "raw": "API call{"}] * parse_errors
    if parse_errors:
        write_tags["parse_error"] = parse_errors
    if stray_write:
        actions.append({"kind": "api_call", "api_name": "taxi_book", "input_parameters": {"departure": "a", "destination": "b", "leaveAt": "10:00"}})
        write_tags["invalid_api"] = 1
    gt_calls = [(_call(t)["api_name"], _call(t)["input_parameters"]) for t in truths]
    return {
        "name": name,
        "final": final,
        "truth": truths,
        "actions": actions,
        "gt_calls": gt_calls,
        "db_tags": db_tags,
        "write_tags": write_tags,
    }


def build_cases() -> list[dict]:
    cases = []
    for i, pair in enumerate(itertools.product(MUTATIONS, MUTATIONS)):
        cases.append(_case(f"pair-{'-'.join(pair)}", [TRAIN, RESTAURANT], pair, i % 3, i % 4 == 0))
    for i, mutation in enumerate(MUTATIONS):
        for variant in range(3):
            cases.append(_case(f"hotel-{mutation}-{variant}", [HOTEL], (mutation,), variant, variant == 2))
    for i, triple in enumerate(itertools.islice(itertools.product(MUTATIONS, repeat=3), 0, 125, 13)):
        cases.append(_case(f"triple-{'-'.join(triple)}", [TRAIN, RESTAURANT, HOTEL], triple, i % 2, i % 3 == 1))
    return cases

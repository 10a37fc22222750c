from __future__ import annotations

import pytest

import env_oracle
from noncollab.env.canonical import TimeFormatError, canon_value, params_key, parse_time
from noncollab.env.catalog import default_catalog
from noncollab.env.scenario import ScenarioError, mini_pack


def env():
    return mini_pack().scenario("mul0001").new_environment()


def test_pack_has_twelve_scenarios():
    pack = mini_pack()
    assert len(pack) == 12
    with pytest.raises(ScenarioError):
        pack.scenario("nope")


def test_catalog_exposes_eleven_apis():
    names = {a.name for a in default_catalog().all_specs}
    assert len(names) == 11
    assert {"show_app_description", "book_cancel", "taxi_book"} <= names
    assert "taxi_retrieve" not in names
    assert default_catalog().write_api_names() == {
        "train_book",
        "restaurant_book",
        "accommodation_book",
        "taxi_book",
        "book_cancel",
    }


def test_helper_apis_and_docs_alias():
    e = env()
    apps = {a["name"] for a in e.execute("show_app_description", {})}
    assert apps == {"train", "restaurant", "accommodation", "taxi", "general"}
    listed = {a["name"] for a in e.execute("show_api_description", {"app_name": "train"})}
    assert listed == {"train_retrieve", "train_book"}
    doc = e.execute("show_api_docs", {"app_name": "train", "api_name": "train_book"})
    assert doc == e.execute("show_api_documentation", {"app_name": "train", "api_name": "train_book"})
    assert e.execute("show_api_description", {"app_name": "spa"})["error"] == "unknown_app"


@pytest.mark.parametrize(
    "api,params,error",
    [
        ("train_retrieve", {"seat_class": "first"}, "unknown_parameter"),
        ("train_book", {"train_id": 1223}, "missing_parameter"),
        ("train_retrieve", {"arriveBy": "25:00"}, "invalid_time"),
        ("restaurant_retrieve", {"area": "moon"}, "constraint_violation"),
        ("fly_plane", {}, "unknown_api"),
        ("train_book", {"train_id": 1, "people": "2"}, "unknown_entity"),
        ("train_book", {"train_id": 1223, "people": "two"}, "invalid_value"),
        ("book_cancel", {"domain": "train"}, "no_matching_booking"),
        ("taxi_book", {"departure": "a", "destination": "b"}, "missing_parameter"),
    ],
)
def test_errors_are_observations(api, params, error):
    assert env().execute(api, params)["error"] == error


def test_retrieve_matches_reference_scan():
    assert env_oracle.retrieve_mismatches(300, seed=11) == 0


def test_duplicate_domain_and_cancel_round_trip():
    assert env_oracle.duplicate_bookings_rejected(50, seed=12)
    assert env_oracle.book_cancel_restores(50, seed=13)


def test_grading_uses_canonical_values():
    e = env()
    e.execute("train_book", {"train_id": 1223, "people": "2 people"})
    e.execute("restaurant_book", {"restaurant_id": "19210", "people": 2, "day": "Sunday", "time": "18:45"})
    assert e.grade()
    e.execute("book_cancel", {"domain": "train"})
    assert not e.grade()


def test_references_are_unique_and_seeded():
    import random

    refs = []
    for _ in range(2):
        e = mini_pack().scenario("mul0001").new_environment(rng=random.Random(3))
        refs.append(e.execute("taxi_book", {"departure": "a", "destination": "b", "leaveAt": "9:00"})["reference"])
    assert refs[0] == refs[1] and len(refs[0]) == 8


def test_canonicalization_rules():
    assert canon_value(" 2  People ") == "2"
    assert canon_value("9:15") == "09:15"
    assert canon_value(2) == canon_value("2") == canon_value(2.0)
    assert params_key({"b": "3 nights", "a": "x"}) == params_key({"a": "X", "b": 3})
    assert parse_time("09:15") == 555
    with pytest.raises(TimeFormatError):
        parse_time("9am")

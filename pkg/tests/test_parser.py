from __future__ import annotations

import pytest

from noncollab.agent.parser import AgentAction, parse_action
from test_acceptance import EXEMPLAR_1, EXEMPLAR_2, fuzz_cases


def test_react_format_with_thought():
    a = parse_action("Thought: look up trains\nAction: API call{\"api_name\": \"train_retrieve\", \"input_parameters\": {\"day\": \"monday\"}}")
    assert (a.kind, a.thought, a.api_name, a.input_parameters) == ("api_call", "look up trains", "train_retrieve", {"day": "monday"})


def test_exemplars_and_equals_repair():
    assert parse_action(EXEMPLAR_1).input_parameters == {"id": 3, "duration": "4"}
    assert parse_action(EXEMPLAR_2).api_name == "book_flight"
    helper = parse_action("API call{'api_name':'show_api_docs','input_parameters':{'app_name'='train', 'api_name'='train_book'}}")
    assert helper.input_parameters == {"app_name": "train", "api_name": "train_book"}


@pytest.mark.parametrize(
    "raw,utterance",
    [
        ('Action: Talk("Which day?")', "Which day?"),
        ("Action: Talk('It\\'s booked.')", "It's booked."),
        ("Talk(Your reference is AB12CD34.)", "Your reference is AB12CD34."),
    ],
)
def test_talk_forms(raw, utterance):
    a = parse_action(raw)
    assert a.kind == "talk" and a.utterance == utterance


@pytest.mark.parametrize(
    "raw",
    [
        "",
        "I think I should call an API.",
        "API call{'api_name': 3}",
        "API call{'api_name':'x','input_parameters':[1, 2]}",
        "API call{'api_name':'x'",
        "Talk('')",
        "Action: something else",
    ],
)
def test_malformed_outputs_are_parse_errors(raw):
    a = parse_action(raw)
    assert a.kind == "parse_error" and a.error


def test_fuzz_never_raises_and_round_trips():
    for raw in fuzz_cases(200, seed=99):
        a = parse_action(raw)
        assert a.kind in ("api_call", "talk", "parse_error")
        assert AgentAction.from_dict(a.to_dict()) == a

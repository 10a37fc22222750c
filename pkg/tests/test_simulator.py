from __future__ import annotations

import pytest

from fakes import gateway_with
from noncollab.goals import DialogueState, InformationPiece, UserGoal
from noncollab.simulator import STOP_TOKENS, SimulationError, SimulatorContext, UserSimulator

PIECES = ["train-day-sunday", "train-destination-cambridge"]


def ctx(sent: bool = False) -> SimulatorContext:
    st = DialogueState([InformationPiece(i, t) for i, t in enumerate(PIECES)])
    if sent:
        for p in st.pieces:
            st._set(p, "sent")
    goal = UserGoal("You want a train to cambridge on sunday.", structured={"train": {"day": "sunday", "destination": "cambridge"}})
    return SimulatorContext(goal=goal, state=st, history=[("User", "hi"), ("Agent", "Hello, how can I help?")])


def test_stop_tokens_per_template():
    assert STOP_TOKENS == {"collab_multiwoz": "<END>", "collab_tau": "###STOP###"}
    with pytest.raises(ValueError):
        SimulatorContext(goal=UserGoal("x"), state=DialogueState([]), stop_token="")


def test_premature_end_triggers_rest_provider():
    gw, provider = gateway_with({"collab": ["Thanks, that's all! <END>"]})
    turn = UserSimulator(gw).simulate_user_turn(ctx())
    assert turn.rest_applied and not turn.ended
    assert turn.state.all_conveyed
    assert "<END>" not in turn.final_text
    assert "rest" in provider.tasks()


def test_rest_provider_failure_is_retried_once_then_raises():
    gw, provider = gateway_with({"collab": ["bye <END>"], "rest": ["bye", "bye again"]})
    with pytest.raises(SimulationError):
        UserSimulator(gw).simulate_user_turn(ctx())
    assert provider.tasks().count("rest") == 2


def test_invalid_ending_is_caught_by_verifier():
    gw, _ = gateway_with({"collab": ["Yes, please go ahead and proceed with the booking. <END>"]})
    turn = UserSimulator(gw).simulate_user_turn(ctx(sent=True))
    assert turn.invalid_ending and not turn.ended and turn.wants_end
    assert turn.final_text == "Yes, please go ahead and proceed with the booking."


def test_valid_ending_and_bare_stop_token():
    gw, provider = gateway_with({"collab": ["Thanks, that's everything! <END>", "<END>"]})
    sim = UserSimulator(gw)
    assert sim.simulate_user_turn(ctx(sent=True)).ended
    bare = sim.simulate_user_turn(ctx(sent=True))
    assert bare.ended and bare.final_text == ""
    ending_requests = [r for r in provider.seen if r.task == "ending"]
    assert ending_requests[-1].context["utterance"] == "<END>"


def test_user_messages_flip_roles_and_include_additions():
    gw, provider = gateway_with({"collab": ["I need a train on sunday."]})
    c = ctx()
    c.additions = ["I also want a museum ticket."]
    UserSimulator(gw).next_utterance(c)
    request = provider.seen[0]
    assert [r for r, _ in request.messages] == ["system", "assistant", "user"]
    assert "Additionally, I also want a museum ticket." in request.messages[0][1]

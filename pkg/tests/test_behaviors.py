from __future__ import annotations

import json
import random

import pytest

from fakes import gateway_with
from noncollab.behaviors import (
    AngerState,
    AugmentationError,
    BehaviorMode,
    BehaviorParams,
    BehaviorPipeline,
    EmptyPoolError,
    FragmentPool,
    Persona,
    TangentError,
    UtteranceTooShort,
    all_mode_combinations,
    augment_goal_unavailable,
    build_fragment_pool,
    gen_complaint,
    impatience_step,
    level_for,
    load_fragment_pool,
    load_personas,
    merge_utterances,
    truncate_premature,
)
from noncollab.env.catalog import default_catalog
from noncollab.goals import DialogueState, InformationPiece, UserGoal
from noncollab.simulator import SimulatorContext, UserSimulator

GOAL = UserGoal(
    "You want a train to cambridge on sunday.",
    structured={"train": {"destination": "cambridge", "day": "sunday"}},
)


def make_ctx(sent: bool = False) -> SimulatorContext:
    st = DialogueState([InformationPiece(0, "train-destination-cambridge"), InformationPiece(1, "train-day-sunday")])
    if sent:
        for p in st.pieces:
            st._set(p, "sent")
    return SimulatorContext(goal=GOAL, state=st)


def pipeline(mode: str, answers: dict, seed: int = 0, **params) -> tuple[BehaviorPipeline, object]:
    gw, provider = gateway_with(answers)
    p = BehaviorPipeline(
        UserSimulator(gw),
        BehaviorMode.parse(mode),
        random.Random(seed),
        BehaviorParams(**params),
        personas=[Persona("I am a retired potter.", "pottery")],
    )
    return p, provider


# modes ---------------------------------------------------------------------


def test_mode_grid_has_eleven_canonical_names():
    names = [m.name for m in all_mode_combinations()]
    assert len(names) == len(set(names)) == 11
    assert names[0] == "collaborative"
    assert BehaviorMode.parse("incomplete+tangential").name == "tangential+incomplete"
    with pytest.raises(ValueError):
        BehaviorMode.parse("grumpy")


def test_params_accept_flat_or_sectioned_overrides():
    p = BehaviorParams.from_overrides({"impatience": {"anger_base": 0.5}, "tangent_cap": 2})
    assert (p.anger_base, p.tangent_cap, p.anger_step) == (0.5, 2, 0.25)
    with pytest.raises(ValueError):
        BehaviorParams.from_overrides({"nope": 1})
    with pytest.raises(ValueError):
        BehaviorParams(cut_min=0.9, cut_max=0.2)


# incomplete ----------------------------------------------------------------


def test_truncation_examples():
    utt = "I want to reserve a train for 2 people"
    rng = random.Random(0)
    assert truncate_premature(utt, rng, cut_fraction=0.35, midword=True)["text"] == "I want to res"
    assert truncate_premature(utt, rng, cut_fraction=0.35, midword=False)["text"] == "I want to"
    with pytest.raises(UtteranceTooShort):
        truncate_premature("hi there", rng)


def test_fragment_pool_filters():
    corpus = [
        {"text": "Hi ther", "language_tag": "en"},
        {"text": "need hotel north cheap pls", "language_tag": "en"},
        {"text": "need hotel north cheap pls", "language_tag": "en"},
        {"text": "hotel nord pas cher svp merci", "language_tag": "fr"},
        {"text": "my number is [REDACTED] ok", "language_tag": "en", "redacted_flag": True},
        {"text": "I would like to book a table for four people tonight, please.", "language_tag": "en"},
    ]
    gw, provider = gateway_with()
    pool = build_fragment_pool(corpus, gw)
    assert pool.fragments == ["need hotel north cheap pls"]
    assert provider.tasks() == ["fragment", "fragment"]
    with pytest.raises(EmptyPoolError):
        build_fragment_pool(corpus[:1], gw)


def test_bundled_resources_load(tmp_path):
    assert len(load_fragment_pool()) >= 5
    assert len(load_personas()) == 50
    f = tmp_path / "personas.txt"
    f.write_text("one\n\ntwo\n", encoding="utf-8")
    assert [p.text for p in load_personas(f)] == ["one", "two"]
    with pytest.raises(ValueError):
        FragmentPool(["ok", " "])


def test_incomplete_premature_marks_lost_pieces_unsent():
    p, _ = pipeline(
        "incomplete",
        {"collab": ["I need a train to cambridge on sunday."]},
        brief_prob=0.0,
        cut_min=0.3,
        cut_max=0.3,
        midword_prob=0.0,
    )
    ctx = make_ctx()
    ctx.state.turn = 1
    turn = p.user_turn(ctx)
    assert turn.final_text == "I need a"
    note = [a for a in p.annotations if a["mode"] == "incomplete"][0]
    assert note["kind"] == "premature" and note["lost"] == [0, 1]
    assert not ctx.state.sent_ids and turn.conveyed == set()


def test_incomplete_ending_turn_keeps_goal_delivered():
    text = "Thanks, that's everything for today, goodbye! <END>"
    p, _ = pipeline("incomplete", {"collab": [text]}, brief_prob=0.0, cut_min=0.3, cut_max=0.3, midword_prob=0.0)
    ctx = make_ctx(sent=True)
    turn = p.user_turn(ctx)
    assert turn.ended and ctx.state.all_conveyed
    assert "Thanks, that's everything for today, goodbye!".startswith(turn.final_text)


# impatience ----------------------------------------------------------------


def test_levels_escalate_only_when_fired():
    assert [level_for(k) for k in range(5)] == ["none", "mild", "moderate", "extreme", "extreme"]

    class Fixed:
        def __init__(self, values):
            self.values = list(values)

        def random(self):
            return self.values.pop(0)

    anger, fired = impatience_step(AngerState(), "delay", Fixed([0.9]))
    assert not fired and anger.level == "none"
    anger, fired = impatience_step(anger, "failure", Fixed([0.1]))
    assert fired and anger.level == "moderate" and anger.outburst_happened
    anger, fired = impatience_step(anger, "delay", Fixed([0.99]))
    assert not fired and anger.outburst_happened and anger.level == "moderate"
    with pytest.raises(ValueError):
        impatience_step(anger, "boredom", random.Random(0))


def test_delay_outburst_replaces_turn_and_latches_cynical_tone():
    p, provider = pipeline(
        "impatience",
        {"collab": ["Is it booked yet?", "Could you confirm the booking?"], "impatience": ["Hurry up, this is taking forever!"]},
        anger_base=1.0,
    )
    ctx = make_ctx(sent=True)
    ctx.state.turns_since_complete = 2
    ctx.state.turn = 3
    first = p.user_turn(ctx, "Let me check on that for you.")
    assert first.final_text == "Hurry up, this is taking forever!"
    kinds = [a["kind"] for a in p.annotations]
    assert kinds == ["trigger", "outburst"]
    ctx.state.turns_since_complete = 0
    ctx.state.turn = 4
    p.user_turn(ctx, "Here is your train.")
    assert "cynical" in provider.tasks()
    assert p.annotations[-1]["kind"] == "cynical"


def test_failure_outburst_is_prepended():
    p, provider = pipeline(
        "impatience",
        {"collab": ["Then try another day."], "failure": ['{"verdict": true}'], "impatience": ["This is useless!"]},
        anger_base=1.0,
    )
    ctx = make_ctx()
    ctx.state.turn = 2
    p.user_turn(ctx, "Unfortunately, I could not book that train.")
    merge = [r for r in provider.seen if r.task == "merge"][0]
    assert merge.context["sentences"] == ["This is useless!", "Then try another day."]


# tangential ----------------------------------------------------------------


def test_complaint_only_after_unaddressed_tangent():
    answers = {"collab": ["A train to cambridge please.", "On sunday.", "That's right."]}
    answers["tangent_addressed"] = ['{"verdict": true}', '{"verdict": false}']
    p, provider = pipeline("tangential", answers, tangent_prob=1.0)
    ctx = make_ctx()
    for turn_no, agent in enumerate([None, "Sure. Pottery sounds lovely! Which day?", "Which train time?"], start=1):
        ctx.state.turn = turn_no
        p.user_turn(ctx, agent)
    kinds = [(a["turn"], a["kind"]) for a in p.annotations]
    assert (2, "complaint") not in kinds
    assert (3, "complaint") in kinds
    assert kinds.index((3, "tangent_check")) < kinds.index((3, "complaint"))


def test_complaint_requires_fifteen_words():
    gw, _ = gateway_with({"complaint": ['{"sentences": ["Too short."]}'] * 2})
    with pytest.raises(TangentError):
        gen_complaint("I love jazz.", gw, random.Random(0))
    long = "You completely ignored what I just told you about my pottery class and that is honestly quite rude."
    gw, _ = gateway_with({"complaint": [json.dumps({"sentences": ["Short one.", long]})]})
    assert gen_complaint("I love jazz.", gw, random.Random(0)) == long


def test_merge_singleton_makes_no_call():
    gw, provider = gateway_with()
    assert merge_utterances([], ["only"], gw) == "only"
    assert provider.seen == []


# unavailable ---------------------------------------------------------------


def test_augmentation_requires_three_non_cancellation_sentences():
    three = json.dumps({"sentences": ["Book a museum tour.", "Order flowers.", "Rent a bike."]})
    gw, _ = gateway_with({"unavailable": [three]})
    out = augment_goal_unavailable(GOAL, default_catalog(), gw)
    assert out.additions == ["Book a museum tour.", "Order flowers.", "Rent a bike."]
    cancel = json.dumps({"sentences": ["Cancel my hotel.", "Order flowers.", "Rent a bike."]})
    two = json.dumps({"sentences": ["Order flowers.", "Rent a bike."]})
    gw, provider = gateway_with({"unavailable": [cancel, two]})
    with pytest.raises(AugmentationError):
        augment_goal_unavailable(GOAL, default_catalog(), gw)
    assert provider.tasks() == ["unavailable", "unavailable"]


def test_unavailable_setup_extends_goal_text():
    p, _ = pipeline("unavailable", {})
    ctx = make_ctx()
    p.setup(ctx, default_catalog())
    assert len(ctx.additions) == 3
    assert ctx.goal_text.startswith(GOAL.goal_text) and "Additionally, " in ctx.goal_text

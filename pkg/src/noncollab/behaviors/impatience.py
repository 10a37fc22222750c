"""Anger escalation, impatient outbursts and the post-outburst cynical tone."""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..goals import History, UserGoal, format_history
from ..llm import ChatRequest, Decoding, LLMGateway, schema
from ..llm.types import DEFAULT_TEMPERATURE
from ..prompts import render

LEVELS = ("none", "mild", "moderate", "extreme")
LEVEL_LABEL = {"mild": "Mildly Angry", "moderate": "Moderately Angry", "extreme": "Extremely Angry"}
IMPATIENCE_ACTS = {
    "belligerent_abuse": "insult the assistant or belittle its competence",
    "threat": "warn of consequences such as complaints, bad reviews or leaving",
    "urge": "demand that the assistant act faster",
}
TRIGGERS = ("failure", "delay")


@dataclass
class AngerState:
    trigger_count: int = 0
    activation_prob: float = 0.0
    level: str = "none"
    outburst_happened: bool = False


def activation_probability(count: int, base: float = 0.3, step: float = 0.25) -> float:
    if count <= 0:
        return 0.0
    return min(1.0, base + step * (count - 1))


def level_for(count: int) -> str:
    if count <= 0:
        return "none"
    return LEVELS[min(count, 3)]


def impatience_step(
    anger: AngerState, trigger: str, rng: random.Random, base: float = 0.3, step: float = 0.25
) -> tuple[AngerState, bool]:
    if trigger not in TRIGGERS:
        raise ValueError(f"unknown trigger {trigger!r}")
    count = anger.trigger_count + 1
    prob = activation_probability(count, base, step)
    fire = rng.random() < prob
    level = anger.level
    if fire and LEVELS.index(level_for(count)) > LEVELS.index(level):
        level = level_for(count)
    new = AngerState(
        trigger_count=count,
        activation_prob=max(prob, anger.activation_prob),
        level=level,
        outburst_happened=anger.outburst_happened or fire,
    )
    return new, fire


def sample_impatience_act(rng: random.Random) -> str:
    return rng.choice(sorted(IMPATIENCE_ACTS))


def detect_failure_notification(agent_utterance: str, goal: UserGoal | str, gateway: LLMGateway) -> bool:
    if not agent_utterance.strip():
        return False
    goal_text = goal.goal_text if isinstance(goal, UserGoal) else goal
    request = ChatRequest(
        role_tag="judge",
        messages=[("user", render("failure_detector", user_goal=goal_text, system_utterance=agent_utterance))],
        context={"task": "failure", "agent_utterance": agent_utterance},
    )
    return bool(gateway.complete_structured(request, schema.VERDICT)["verdict"])


def impatience_prompt(history: History, act: str, level: str, trigger: str) -> str:
    return render(
        f"impatience_{trigger}",
        dial_hist=format_history(history),
        dialogue_act=act,
        description=IMPATIENCE_ACTS[act],
        current_anger=LEVEL_LABEL[level],
    )


def gen_impatience(history: History, act: str, level: str, trigger: str, gateway: LLMGateway) -> str:
    if level not in LEVEL_LABEL:
        raise ValueError(f"cannot voice anger level {level!r}")
    request = ChatRequest(
        role_tag="generator",
        messages=[("user", impatience_prompt(history, act, level, trigger))],
        decoding=Decoding(temperature=DEFAULT_TEMPERATURE["generator"]),
        context={"task": "impatience", "act": act, "level": level, "trigger": trigger},
    )
    return gateway.complete(request).text.strip()


def cynical_call(history: History, utterance: str, gateway: LLMGateway) -> str:
    request = ChatRequest(
        role_tag="generator",
        messages=[("user", render("cynical", dial_hist=format_history(history), content=utterance))],
        decoding=Decoding(temperature=DEFAULT_TEMPERATURE["generator"]),
        context={"task": "cynical", "utterance": utterance},
    )
    return gateway.complete(request).text.strip()

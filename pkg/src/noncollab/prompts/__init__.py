"""Prompt templates stored as text assets.

Placeholders use ``{name}``. Only names passed to :func:`render` are
substituted, so literal braces in a template (the agent prompt's API-call
examples) survive untouched.
"""

from __future__ import annotations

import re
from functools import lru_cache
from importlib import resources

TEMPLATE_VERSION = "1"

CATALOG = {
    "collab_multiwoz": "collaborative user, MultiWOZ-style goal, stop token <END>",
    "collab_tau": "collaborative user, tau-style instruction, stop token ###STOP###",
    "dst": "dialogue state tracker: select conveyed information pieces",
    "rest_provider": "append every undelivered piece to an ending utterance",
    "ending_verifier": "decide whether an ending utterance really ends the dialogue",
    "shard_goal": "split a free-form goal into information pieces",
    "unavailable_multiwoz": "generate 3 unfulfillable goal additions (booking APIs)",
    "unavailable_tau": "generate 3 unfulfillable goal additions (airline/retail APIs)",
    "tangential_utterance": "persona-grounded off-topic utterance for one dialogue act",
    "tangent_addressed": "did the agent acknowledge the off-topic remark",
    "complaint": "5 complaints about an ignored off-topic remark",
    "merge": "merge ordered sentences into one utterance",
    "failure_detector": "does the agent message signal the goal cannot be met",
    "impatience_failure": "impatient utterance after a failure notification",
    "impatience_delay": "impatient utterance after a perceived delay",
    "cynical": "post-outburst cynical rewrite",
    "style_transfer": "brief fragment-style rewrite from few-shot exemplars",
    "fragment_classifier": "label a corpus message Fragmented/Complete",
    "apology_judge": "does an agent message apologise",
    "agent_multiwoz": "ReAct tool-agent system prompt for the booking environment",
}

_PLACEHOLDER = re.compile(r"\{([a-z_]+)\}")


@lru_cache(maxsize=None)
def load(template_id: str) -> str:
    if template_id not in CATALOG:
        raise KeyError(f"unknown template {template_id!r}")
    return resources.files(__package__).joinpath(f"{template_id}.txt").read_text(encoding="utf-8")


def placeholders(template_id: str) -> set[str]:
    return set(_PLACEHOLDER.findall(load(template_id)))


def render(template_id: str, **values: object) -> str:
    text = load(template_id)

    def sub(match: re.Match) -> str:
        name = match.group(1)
        return str(values[name]) if name in values else match.group(0)

    return _PLACEHOLDER.sub(sub, text).rstrip("\n")

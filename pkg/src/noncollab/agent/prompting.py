"""Rendering of the agent's prompt from the visible dialogue so far.

Each step appends to the previous rendering, so the prompt for step k plus
the generation of step k is a prefix of the prompt for step k+1.
"""

from __future__ import annotations

from typing import Any, Iterable

from ..prompts import render

AGENT_TEMPLATE = "agent_multiwoz"
AGENT_CUE = "Agent: "
FORMAT_REMINDER = (
    "Format error: reply with one 'Thought:' line and one 'Action:' line, where the action is either "
    "API call{'api_name': ..., 'input_parameters': {...}} or Talk(\"...\")."
)


def history_line(item: dict[str, Any]) -> str:
    actor = item["actor"]
    if actor == "user":
        return f"User: {item['text']}"
    if actor == "agent_action":
        return AGENT_CUE + item["raw"]
    return f"Observation: {item['text']}"


def render_agent_prompt(view: Iterable[dict[str, Any]], template_id: str = AGENT_TEMPLATE) -> str:
    lines = "".join(history_line(item) + "\n" for item in view)
    return render(template_id) + "\n" + lines + AGENT_CUE

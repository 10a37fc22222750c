"""Turn-level supervised samples from successful dialogues."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Iterable

from ..agent.prompting import render_agent_prompt
from ..agent.transcript import Transcript, agent_view


def export_sft_samples(transcripts: Iterable[Transcript]) -> list[dict[str, Any]]:
    """One ``{context, target}`` pair per agent step of every successful dialogue."""
    samples = []
    for t in transcripts:
        if not t.outcome.success:
            continue
        step = 0
        for i, turn in enumerate(t.turns):
            if turn.actor != "agent_action":
                continue
            samples.append(
                {
                    "context": render_agent_prompt(agent_view(t.turns[:i]), t.templates.get("agent", "agent_multiwoz")),
                    "target": turn.payload["raw"],
                    "scenario_id": t.scenario_id,
                    "step_index": step,
                }
            )
            step += 1
    return samples


def write_jsonl(samples: Iterable[dict[str, Any]], path: str | Path) -> int:
    n = 0
    with open(path, "w", encoding="utf-8") as fh:
        for sample in samples:
            fh.write(json.dumps(sample, ensure_ascii=False, sort_keys=True) + "\n")
            n += 1
    return n

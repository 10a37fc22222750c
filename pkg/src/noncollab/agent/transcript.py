"""Versioned transcript records: the single source for every metric."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Iterable

SCHEMA_VERSION = 1
ACTORS = ("user", "agent_thought", "agent_action", "observation")
STATUSES = ("completed", "limit_exceeded", "aborted")


class SchemaVersionError(ValueError):
    pass


@dataclass
class Turn:
    actor: str
    payload: dict[str, Any]
    annotations: list[dict[str, Any]] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.actor not in ACTORS:
            raise ValueError(f"unknown actor {self.actor!r}")


@dataclass
class Outcome:
    status: str = "completed"
    success: bool = False
    steps_used: int = 0
    limit_exceeded: bool = False
    ended_by_user: bool = False
    all_conveyed: bool = False
    ga: bool | None = None
    iga: bool | None = None
    attempts: int = 1
    ga_exhausted: bool = False
    error: str | None = None


@dataclass
class Transcript:
    scenario_id: str
    mode: str
    seed: int
    trial: int = 0
    cell_seed: int | None = None
    step_budget: int = 30
    templates: dict[str, str] = field(default_factory=dict)
    goal: dict[str, Any] = field(default_factory=dict)
    persona: str | None = None
    pieces: list[dict[str, Any]] = field(default_factory=list)
    turns: list[Turn] = field(default_factory=list)
    annotations: list[dict[str, Any]] = field(default_factory=list)
    final_bookings: list[dict[str, Any]] = field(default_factory=list)
    ground_truth: list[dict[str, Any]] = field(default_factory=list)
    outcome: Outcome = field(default_factory=Outcome)
    schema_version: int = SCHEMA_VERSION

    def add(self, actor: str, payload: dict[str, Any], annotations: list[dict[str, Any]] | None = None) -> Turn:
        turn = Turn(actor, payload, list(annotations or []))
        self.turns.append(turn)
        return turn

    def of(self, actor: str) -> list[Turn]:
        return [t for t in self.turns if t.actor == actor]

    def user_utterances(self) -> list[str]:
        return [t.payload["text"] for t in self.of("user")]

    def agent_actions(self) -> list[dict[str, Any]]:
        return [t.payload for t in self.of("agent_action")]

    def talks(self) -> list[str]:
        return [a["utterance"] for a in self.agent_actions() if a["kind"] == "talk"]

    @property
    def file_name(self) -> str:
        seed = self.seed if self.cell_seed is None else self.cell_seed
        return transcript_name(self.scenario_id, self.mode, self.trial, seed)

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True, ensure_ascii=False) + "\n"

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Transcript":
        version = data.get("schema_version")
        if version != SCHEMA_VERSION:
            raise SchemaVersionError(f"transcript schema version {version!r}; this build reads {SCHEMA_VERSION}")
        data = dict(data)
        data["turns"] = [Turn(**t) for t in data.get("turns", [])]
        data["outcome"] = Outcome(**data.get("outcome", {}))
        return cls(**data)

    def save(self, directory: str | Path) -> Path:
        path = Path(directory) / self.file_name
        tmp = path.with_suffix(".json.tmp")
        tmp.write_text(self.to_json(), encoding="utf-8")
        tmp.replace(path)
        return path

    @classmethod
    def load(cls, path: str | Path) -> "Transcript":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


def transcript_name(scenario_id: str, mode: str, trial: int, seed: int) -> str:
    return f"{scenario_id}_{mode}_{trial}_{seed}.json"


def load_transcripts(directory: str | Path) -> list[Transcript]:
    return [Transcript.load(p) for p in sorted(Path(directory).glob("*.json")) if p.name != "report.json"]


def agent_view(turns: Iterable[Turn]) -> list[dict[str, Any]]:
    """What the agent may see: user text, its own actions, observations."""
    view = []
    for t in turns:
        if t.actor == "user":
            view.append({"actor": "user", "text": t.payload["text"]})
        elif t.actor == "agent_action":
            view.append({"actor": "agent_action", **t.payload})
        elif t.actor == "observation":
            view.append({"actor": "observation", "data": t.payload["data"], "text": t.payload["text"]})
    return view

"""Scenario packs: goals, database reference and ground-truth bookings."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any

from ..goals import UserGoal
from .catalog import DOMAIN_APP
from .multiwoz import ENTITY_KEY, BookingRecord, Database, EnvironmentState, MultiWOZEnvironment


class ScenarioError(ValueError):
    pass


@dataclass(frozen=True)
class Scenario:
    scenario_id: str
    goal: UserGoal
    db: Database
    ground_truth: tuple[BookingRecord, ...]

    def new_state(self) -> EnvironmentState:
        return EnvironmentState(db=self.db, ground_truth=self.ground_truth)

    def new_environment(self, rng: random.Random | None = None, **kwargs: Any) -> MultiWOZEnvironment:
        return MultiWOZEnvironment(self.new_state(), rng=rng, **kwargs)

    def gt_write_calls(self) -> list[tuple[str, dict[str, Any]]]:
        """Ground-truth booking calls as ``(api_name, params)`` pairs."""
        calls = []
        for rec in self.ground_truth:
            params = dict(rec.params)
            if rec.domain in ENTITY_KEY:
                params[ENTITY_KEY[rec.domain]] = rec.entity_id
            calls.append((f"{DOMAIN_APP[rec.domain]}_book", params))
        return calls


class ScenarioPack:
    """A scenario file plus the databases it references."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        scenario_file = self.path / "scenarios.json" if self.path.is_dir() else self.path
        try:
            with open(scenario_file, encoding="utf-8") as fh:
                data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ScenarioError(f"malformed scenario file {scenario_file}: {exc}") from None
        self.root = scenario_file.parent
        self.name = data.get("pack", self.root.name)
        self._raw = {}
        for entry in data["scenarios"]:
            for key in ("scenario_id", "goal", "ground_truth"):
                if key not in entry:
                    raise ScenarioError(f"scenario entry missing {key!r}")
            self._raw[entry["scenario_id"]] = entry
        self._dbs: dict[str, Database] = {}

    @property
    def ids(self) -> list[str]:
        return list(self._raw)

    def __len__(self) -> int:
        return len(self._raw)

    def _db(self, ref: str) -> Database:
        if ref not in self._dbs:
            self._dbs[ref] = Database.from_dir(self.root / ref)
        return self._dbs[ref]

    def scenario(self, scenario_id: str) -> Scenario:
        if scenario_id not in self._raw:
            raise ScenarioError(f"unknown scenario {scenario_id!r}")
        entry = self._raw[scenario_id]
        goal = entry["goal"]
        return Scenario(
            scenario_id=scenario_id,
            goal=UserGoal(goal_text=goal["text"], scenario_id=scenario_id, structured=goal.get("structured")),
            db=self._db(entry.get("db_ref", "db")),
            ground_truth=tuple(BookingRecord.from_dict(r) for r in entry["ground_truth"]),
        )

    def load_scenario(self, scenario_id: str) -> tuple[EnvironmentState, UserGoal]:
        sc = self.scenario(scenario_id)
        return sc.new_state(), sc.goal

    def __iter__(self):
        return (self.scenario(sid) for sid in self.ids)


def bundled_pack_path() -> Path:
    return Path(str(resources.files("noncollab").joinpath("data", "mini_pack")))


@lru_cache(maxsize=1)
def mini_pack() -> ScenarioPack:
    return ScenarioPack(bundled_pack_path())

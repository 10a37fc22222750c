"""Bundled persona and fragment-pool fixtures."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path


@dataclass(frozen=True)
class Persona:
    text: str
    interest: str = ""


@dataclass
class FragmentPool:
    fragments: list[str]

    def __post_init__(self) -> None:
        if any(not f.strip() for f in self.fragments):
            raise ValueError("fragments must be non-empty")

    def __len__(self) -> int:
        return len(self.fragments)


def _read_list(path: str | Path | None, default: str) -> list:
    if path is None:
        text = resources.files("noncollab").joinpath("data", default).read_text(encoding="utf-8")
        name = default
    else:
        text = Path(path).read_text(encoding="utf-8")
        name = str(path)
    if name.endswith(".json"):
        return json.loads(text)
    return [line.strip() for line in text.splitlines() if line.strip()]


def load_personas(path: str | Path | None = None) -> list[Persona]:
    """JSON list (strings or ``{persona, interest}`` objects) or one persona per line."""
    out = []
    for item in _read_list(path, "personas.json"):
        if isinstance(item, dict):
            out.append(Persona(item["persona"], item.get("interest", "")))
        else:
            out.append(Persona(str(item)))
    if not out:
        raise ValueError("persona file is empty")
    return out


def load_fragment_pool(path: str | Path | None = None) -> FragmentPool:
    return FragmentPool([str(f) for f in _read_list(path, "fragment_pool.json")])

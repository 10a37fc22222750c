"""Parse an agent generation into an API call, a Talk, or a parse error."""

from __future__ import annotations

import ast
import json
import re
import warnings
from dataclasses import dataclass, field
from typing import Any

_THOUGHT = re.compile(r"^[\s\-*]*Thought\s*:\s*(.*)$", re.IGNORECASE | re.MULTILINE)
_ACTION = re.compile(r"^[\s\-*]*Action\s*:\s*", re.IGNORECASE | re.MULTILINE)
_API = re.compile(r"API\s*call\s*(\{.*\})", re.IGNORECASE | re.DOTALL)
_TALK = re.compile(r"Talk\s*\((.*)\)", re.DOTALL)
# 'key'='value' pairs, as in the helper-API examples of the agent prompt
_EQ_PAIR = re.compile(r"""(['"][^'"]*['"])\s*=\s*""")

# literal_eval warns on stray escapes in model output; those are just bad strings
for _category in (DeprecationWarning, SyntaxWarning):
    warnings.filterwarnings("ignore", message="invalid escape sequence", category=_category)


@dataclass
class AgentAction:
    kind: str
    raw: str
    thought: str | None = None
    api_name: str | None = None
    input_parameters: dict[str, Any] | None = None
    utterance: str | None = None
    error: str | None = None

    def __post_init__(self) -> None:
        if self.kind == "api_call" and not self.api_name:
            raise ValueError("api_call needs api_name")
        if self.kind == "talk" and self.utterance is None:
            raise ValueError("talk needs an utterance")
        if self.kind not in ("api_call", "talk", "parse_error"):
            raise ValueError(f"unknown action kind {self.kind!r}")

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"kind": self.kind, "raw": self.raw}
        for key in ("thought", "api_name", "input_parameters", "utterance", "error"):
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        return out

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "AgentAction":
        return cls(**{k: data.get(k) for k in ("kind", "raw", "thought", "api_name", "input_parameters", "utterance", "error")})


def _load_mapping(text: str) -> Any:
    try:
        return json.loads(text)
    except ValueError:
        pass
    try:
        return ast.literal_eval(text)
    except (ValueError, SyntaxError, TypeError, MemoryError, RecursionError):
        pass
    return ast.literal_eval(_EQ_PAIR.sub(r"\1:", text))


def _api_call(body: str, raw: str, thought: str | None) -> AgentAction:
    try:
        data = _load_mapping(body)
    except Exception as exc:  # any literal that fails to load is a format error
        return AgentAction("parse_error", raw, thought, error=f"unreadable API call: {type(exc).__name__}")
    if not isinstance(data, dict) or not isinstance(data.get("api_name"), str) or not data["api_name"]:
        return AgentAction("parse_error", raw, thought, error="API call needs a string 'api_name'")
    params = data.get("input_parameters", {})
    if params is None:
        params = {}
    if not isinstance(params, dict):
        return AgentAction("parse_error", raw, thought, error="'input_parameters' must be a mapping")
    return AgentAction("api_call", raw, thought, api_name=data["api_name"], input_parameters=params)


def _talk(inner: str, raw: str, thought: str | None) -> AgentAction:
    inner = inner.strip()
    if len(inner) >= 2 and inner[0] == inner[-1] and inner[0] in "\"'":
        try:
            value = ast.literal_eval(inner)
            inner = value if isinstance(value, str) else inner[1:-1]
        except (ValueError, SyntaxError):
            inner = inner[1:-1]
    if not inner.strip():
        return AgentAction("parse_error", raw, thought, error="Talk with an empty message")
    return AgentAction("talk", raw, thought, utterance=inner.strip())


def parse_action(raw: str) -> AgentAction:
    """Classify ``raw``; never raises."""
    return _classify(raw)


def _classify(raw: str) -> AgentAction:
    try:
        m = _THOUGHT.search(raw)
        thought = m.group(1).strip() if m else None
        action = _ACTION.split(raw, maxsplit=1)
        body = action[1].strip() if len(action) == 2 else raw
        api = _API.match(body) or (None if len(action) == 2 else _API.search(body))
        if api:
            return _api_call(api.group(1), raw, thought)
        talk = _TALK.match(body) or (None if len(action) == 2 else _TALK.search(body))
        if talk:
            return _talk(talk.group(1), raw, thought)
        return AgentAction("parse_error", raw, thought, error="no API call or Talk action found")
    except Exception as exc:  # defensive: parsing must classify, not crash
        return AgentAction("parse_error", raw, None, error=f"parser failure: {type(exc).__name__}")

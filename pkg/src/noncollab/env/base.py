"""Interface every benchmark environment implements."""

from __future__ import annotations

import json
from abc import ABC, abstractmethod
from typing import Any

from .catalog import Catalog


class EnvError(Exception):
    """An API-level failure. Always surfaced to the agent as an observation."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message

    def to_observation(self) -> dict[str, Any]:
        return {"error": self.code, "message": self.message}


def render_observation(obs: Any) -> str:
    """JSON text with deterministic field order for the agent prompt."""
    return json.dumps(obs, ensure_ascii=False, sort_keys=True)


def is_error(obs: Any) -> bool:
    return isinstance(obs, dict) and "error" in obs


class Environment(ABC):
    catalog: Catalog

    @abstractmethod
    def execute(self, api_name: str, params: dict[str, Any]) -> Any:
        """Run one API call and return an observation (errors included)."""

    @abstractmethod
    def grade(self) -> bool:
        """Whether the final state matches the ground truth."""

    @abstractmethod
    def final_bookings(self) -> list[dict[str, Any]]:
        """Serializable snapshot of the write state."""

"""Request/response records shared by every provider."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any, Literal

RoleTag = Literal["user_sim", "judge", "generator", "agent"]
ROLE_TAGS: tuple[str, ...] = ("user_sim", "judge", "generator", "agent")

DEFAULT_TEMPERATURE = {"user_sim": 0.7, "generator": 0.7, "judge": 0.0, "agent": 0.0}


class GatewayError(Exception):
    """Base class for failures raised by the gateway."""


class TransportError(GatewayError):
    """A transient transport failure; retried by the gateway."""


class ProviderUnconfigured(GatewayError):
    """No provider (or no fixture) can answer the request."""


class SchemaValidationError(GatewayError):
    """Model output did not validate against the requested schema."""


@dataclass(frozen=True)
class Decoding:
    temperature: float = 0.0
    max_tokens: int = 512
    stop_sequences: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not 0.0 <= self.temperature <= 2.0:
            raise ValueError(f"temperature out of range: {self.temperature}")
        if self.max_tokens <= 0:
            raise ValueError("max_tokens must be positive")


@dataclass
class ChatRequest:
    """One model call.

    ``context`` carries structured task data for offline providers; it is
    never sent over the wire and never enters the prompt hash.
    """

    role_tag: str
    messages: list[tuple[str, str]]
    decoding: Decoding | None = None
    structure_schema: dict[str, str] | None = None
    context: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.role_tag not in ROLE_TAGS:
            raise ValueError(f"unknown role_tag {self.role_tag!r}")
        if not self.messages:
            raise ValueError("messages must be non-empty")
        if self.decoding is None:
            self.decoding = Decoding(temperature=DEFAULT_TEMPERATURE[self.role_tag])

    @property
    def task(self) -> str | None:
        return self.context.get("task")

    def rendered(self) -> str:
        return "\n".join(f"[{speaker}]\n{text}" for speaker, text in self.messages)

    def prompt_hash(self) -> str:
        return prompt_hash(self.messages)


def prompt_hash(messages: list[tuple[str, str]] | str) -> str:
    """Stable 16-hex-digit hash of a rendered prompt."""
    if isinstance(messages, str):
        payload = messages
    else:
        payload = json.dumps([list(m) for m in messages], ensure_ascii=False)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


@dataclass
class Usage:
    prompt_tokens: int = 0
    completion_tokens: int = 0


@dataclass
class ChatResponse:
    text: str
    provider_id: str
    structured: dict[str, Any] | None = None
    usage: Usage = field(default_factory=Usage)

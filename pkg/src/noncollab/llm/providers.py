"""Concrete providers: fixture-scripted replies and an HTTP chat-completion client."""

from __future__ import annotations

import json
import os
import threading
from collections import defaultdict, deque
from pathlib import Path
from typing import Any, Protocol

import httpx

from .schema import to_json_schema
from .types import (
    ChatRequest,
    ChatResponse,
    ProviderUnconfigured,
    TransportError,
    Usage,
)

API_KEY_ENV = "NONCOLLAB_API_KEY"
BASE_URL_ENV = "NONCOLLAB_BASE_URL"
MODEL_ENV = "NONCOLLAB_MODEL"


class Provider(Protocol):
    provider_id: str

    def complete(self, request: ChatRequest) -> ChatResponse: ...


def _word_count(text: str) -> int:
    return len(text.split())


class ScriptedProvider:
    """Replays fixture responses.

    Fixtures are dicts ``{role_tag, match, key, response}``. ``match="hash"``
    entries answer the request whose prompt hash equals ``key``;
    ``match="queue"`` entries are served in file order per role tag once no
    hash entry matches. A ``fallback`` provider answers anything left over.
    """

    provider_id = "scripted"

    def __init__(self, fixtures: list[dict[str, Any]] | None = None, fallback: Provider | None = None):
        self._by_hash: dict[tuple[str, str], str] = {}
        self._queues: dict[str, deque[str]] = defaultdict(deque)
        self._lock = threading.Lock()
        self.fallback = fallback
        for fx in fixtures or []:
            self.add(fx)

    @classmethod
    def from_file(cls, path: str | Path, fallback: Provider | None = None) -> "ScriptedProvider":
        with open(path, encoding="utf-8") as fh:
            return cls(json.load(fh), fallback=fallback)

    def add(self, fixture: dict[str, Any]) -> None:
        role, match = fixture["role_tag"], fixture.get("match", "hash")
        if match == "hash":
            self._by_hash[(role, fixture["key"])] = fixture["response"]
        elif match == "queue":
            self._queues[role].append(fixture["response"])
        else:
            raise ValueError(f"unknown fixture match kind {match!r}")

    def complete(self, request: ChatRequest) -> ChatResponse:
        key = (request.role_tag, request.prompt_hash())
        with self._lock:
            text = self._by_hash.get(key)
            if text is None and self._queues[request.role_tag]:
                text = self._queues[request.role_tag].popleft()
        if text is None:
            if self.fallback is None:
                raise ProviderUnconfigured(
                    f"no fixture for role={request.role_tag} hash={key[1]}"
                )
            return self.fallback.complete(request)
        return ChatResponse(
            text=text,
            provider_id=self.provider_id,
            usage=Usage(_word_count(request.rendered()), _word_count(text)),
        )


class HTTPProvider:
    """Client for an OpenAI-compatible ``/chat/completions`` endpoint."""

    provider_id = "http"

    def __init__(
        self,
        model: str | None = None,
        base_url: str | None = None,
        api_key: str | None = None,
        client: httpx.Client | None = None,
        timeout: float = 60.0,
    ):
        self.model = model or os.environ.get(MODEL_ENV, "gpt-4.1-mini")
        self.base_url = (base_url or os.environ.get(BASE_URL_ENV) or "").rstrip("/")
        self.api_key = api_key or os.environ.get(API_KEY_ENV)
        if not self.base_url:
            raise ProviderUnconfigured(f"set {BASE_URL_ENV} or pass base_url")
        self._client = client or httpx.Client(timeout=timeout)

    def payload(self, request: ChatRequest) -> dict[str, Any]:
        dec = request.decoding
        body: dict[str, Any] = {
            "model": self.model,
            "messages": [{"role": r, "content": t} for r, t in request.messages],
            "temperature": dec.temperature,
            "max_tokens": dec.max_tokens,
        }
        if dec.stop_sequences:
            body["stop"] = list(dec.stop_sequences)
        if request.structure_schema:
            body["response_format"] = {
                "type": "json_schema",
                "json_schema": {
                    "name": "structured_output",
                    "schema": to_json_schema(request.structure_schema),
                    "strict": True,
                },
            }
        return body

    def complete(self, request: ChatRequest) -> ChatResponse:
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        try:
            resp = self._client.post(
                f"{self.base_url}/chat/completions",
                json=self.payload(request),
                headers=headers,
            )
        except httpx.TransportError as exc:
            raise TransportError(str(exc)) from exc
        if resp.status_code == 429 or resp.status_code >= 500:
            raise TransportError(f"HTTP {resp.status_code}")
        resp.raise_for_status()
        data = resp.json()
        usage = data.get("usage") or {}
        return ChatResponse(
            text=data["choices"][0]["message"].get("content") or "",
            provider_id=f"http:{self.model}",
            usage=Usage(
                int(usage.get("prompt_tokens", 0)),
                int(usage.get("completion_tokens", 0)),
            ),
        )

"""Single entry point for every model call in the framework."""

from __future__ import annotations

import logging
import threading
import time
from collections import Counter
from dataclasses import dataclass, replace
from typing import Any, Callable

from .providers import Provider
from .schema import parse_structured
from .types import (
    ChatRequest,
    ChatResponse,
    ProviderUnconfigured,
    SchemaValidationError,
    TransportError,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CallRecord:
    role_tag: str
    provider_id: str
    prompt_hash: str
    task: str | None
    ok: bool


class CallLog:
    """Append-only, thread-safe log of outbound requests."""

    def __init__(self) -> None:
        self._records: list[CallRecord] = []
        self._lock = threading.Lock()

    def append(self, record: CallRecord) -> None:
        with self._lock:
            self._records.append(record)

    @property
    def records(self) -> list[CallRecord]:
        with self._lock:
            return list(self._records)

    def counts(self) -> Counter:
        return Counter(r.role_tag for r in self.records)

    def __len__(self) -> int:
        with self._lock:
            return len(self._records)


def apply_stop(text: str, stops: tuple[str, ...]) -> str:
    cut = len(text)
    for stop in stops:
        idx = text.find(stop)
        if idx != -1:
            cut = min(cut, idx)
    return text[:cut]


class LLMGateway:
    """Routes requests to a provider per role tag, with retries and logging.

    ``providers`` is either one provider for all roles or a mapping from role
    tag to provider (key ``"default"`` catches the rest).
    """

    def __init__(
        self,
        providers: Provider | dict[str, Provider],
        log: CallLog | None = None,
        attempts: int = 3,
        backoff: float = 0.5,
        sleep: Callable[[float], None] = time.sleep,
    ):
        if attempts < 1:
            raise ValueError("attempts must be >= 1")
        self._providers = providers if isinstance(providers, dict) else {"default": providers}
        self.log = log if log is not None else CallLog()
        self.attempts = attempts
        self.backoff = backoff
        self._sleep = sleep

    def provider_for(self, role_tag: str) -> Provider:
        provider = self._providers.get(role_tag) or self._providers.get("default")
        if provider is None:
            raise ProviderUnconfigured(f"no provider configured for role {role_tag!r}")
        return provider

    def complete(self, request: ChatRequest) -> ChatResponse:
        provider = self.provider_for(request.role_tag)
        delay = self.backoff
        for attempt in range(1, self.attempts + 1):
            try:
                response = provider.complete(request)
            except TransportError as exc:
                self.log.append(
                    CallRecord(request.role_tag, provider.provider_id, request.prompt_hash(), request.task, False)
                )
                if attempt == self.attempts:
                    raise
                logger.warning("transient failure (%s), retry %d/%d", exc, attempt, self.attempts - 1)
                self._sleep(delay)
                delay *= 2
                continue
            self.log.append(
                CallRecord(request.role_tag, response.provider_id, request.prompt_hash(), request.task, True)
            )
            break
        text = apply_stop(response.text, request.decoding.stop_sequences)
        response = replace(response, text=text)
        if request.structure_schema:
            response = replace(response, structured=parse_structured(text, request.structure_schema))
        return response

    def complete_structured(self, request: ChatRequest, schema: dict[str, str]) -> dict[str, Any]:
        """Return a field map validating against ``schema``; one re-prompt on bad output."""
        if not schema:
            raise ValueError("schema needs at least one field")
        request = replace(request, structure_schema=dict(schema))
        try:
            return self.complete(request).structured
        except SchemaValidationError as exc:
            logger.warning("malformed structured output (%s); re-prompting once", exc)
        return self.complete(request).structured

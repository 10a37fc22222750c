"""Test doubles: a provider answering per task from queues, with a rule-based fallback."""

from __future__ import annotations

from collections import defaultdict, deque

from noncollab.llm import ChatRequest, ChatResponse, LLMGateway
from noncollab.llm.rulebased import RuleBasedProvider


class TaskQueueProvider:
    provider_id = "task-queue"

    def __init__(self, answers: dict[str, list[str]] | None = None, fallback=None):
        self.queues = defaultdict(deque, {k: deque(v) for k, v in (answers or {}).items()})
        self.fallback = fallback or RuleBasedProvider()
        self.seen: list[ChatRequest] = []

    def complete(self, request: ChatRequest) -> ChatResponse:
        self.seen.append(request)
        queue = self.queues[request.task]
        if queue:
            return ChatResponse(queue.popleft(), self.provider_id)
        return self.fallback.complete(request)

    def tasks(self) -> list[str]:
        return [r.task for r in self.seen]


def gateway_with(answers: dict[str, list[str]] | None = None) -> tuple[LLMGateway, TaskQueueProvider]:
    provider = TaskQueueProvider(answers)
    return LLMGateway(provider, sleep=lambda s: None), provider

"""Goal additions the booking APIs cannot serve."""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass, field

from ..env.catalog import Catalog
from ..goals import UserGoal
from ..llm import ChatRequest, Decoding, LLMGateway, schema
from ..llm.types import DEFAULT_TEMPERATURE
from ..prompts import render

logger = logging.getLogger(__name__)

ADDITION_COUNT = 3
JOIN_SENTENCE = "Additionally, "
CANCELLATION = re.compile(r"\bcancel\w*|\bcall off\b", re.IGNORECASE)


class AugmentationError(RuntimeError):
    pass


@dataclass
class AugmentedGoal:
    goal: UserGoal
    additions: list[str] = field(default_factory=list)

    @property
    def goal_text(self) -> str:
        return self.goal.goal_text.rstrip() + " " + JOIN_SENTENCE + " ".join(self.additions)


def _acceptable(sentences: list[str]) -> bool:
    return len(sentences) == ADDITION_COUNT and not any(CANCELLATION.search(s) for s in sentences)


def augment_goal_unavailable(goal: UserGoal, catalog: Catalog, gateway: LLMGateway) -> AugmentedGoal:
    specs = [s for s in catalog.all_specs if s.app != "supervisor"]
    if not specs:
        raise AugmentationError("API catalog is empty")
    domains = list(goal.structured) if goal.structured else []
    request = ChatRequest(
        role_tag="generator",
        messages=[
            (
                "user",
                render(
                    "unavailable_multiwoz",
                    user_goal=goal.goal_text,
                    domain_list=", ".join(catalog.apps),
                    api_docs_list=json.dumps([s.to_dict() for s in specs], indent=1),
                ),
            )
        ],
        decoding=Decoding(temperature=DEFAULT_TEMPERATURE["generator"]),
        context={"task": "unavailable", "goal_text": goal.goal_text, "domains": domains},
    )
    for attempt in (1, 2):
        sentences = [s.strip() for s in gateway.complete_structured(request, schema.SENTENCES)["sentences"]]
        sentences = [s for s in sentences if s]
        if _acceptable(sentences):
            return AugmentedGoal(goal, sentences)
        logger.warning("unusable goal additions on attempt %d: %r", attempt, sentences)
    raise AugmentationError(f"expected {ADDITION_COUNT} non-cancellation additions, got {sentences!r}")

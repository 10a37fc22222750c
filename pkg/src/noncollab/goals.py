"""User goals, information pieces and the dialogue state tracker."""

from __future__ import annotations

import copy
import logging
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .llm import ChatRequest, LLMGateway, schema
from .prompts import render

logger = logging.getLogger(__name__)

UNSENT, SENT = "unsent", "sent"

History = Sequence[tuple[str, str]]


class GoalError(ValueError):
    pass


@dataclass
class UserGoal:
    goal_text: str
    scenario_id: str = ""
    structured: dict[str, dict[str, str]] | None = None

    def __post_init__(self) -> None:
        if not self.goal_text.strip():
            raise GoalError("goal_text must be non-empty")

    def to_dict(self) -> dict[str, Any]:
        return {"goal_text": self.goal_text, "scenario_id": self.scenario_id, "structured": self.structured}


@dataclass
class InformationPiece:
    id: int
    text: str
    status: str = UNSENT
    timeline: list[tuple[int, str]] = field(default_factory=list)

    @property
    def sent(self) -> bool:
        return self.status == SENT

    def to_dict(self) -> dict[str, Any]:
        return {"id": self.id, "text": self.text, "status_timeline": [list(t) for t in self.timeline]}


@dataclass
class DialogueState:
    pieces: list[InformationPiece]
    turns_since_complete: int = 0
    turn: int = 0

    def __post_init__(self) -> None:
        if [p.id for p in self.pieces] != list(range(len(self.pieces))):
            raise GoalError("piece ids must be contiguous from 0")
        self.check()

    @classmethod
    def from_pieces(cls, pieces: Iterable[InformationPiece]) -> "DialogueState":
        return cls([InformationPiece(p.id, p.text) for p in pieces])

    @property
    def all_conveyed(self) -> bool:
        return all(p.sent for p in self.pieces)

    @property
    def remaining(self) -> list[InformationPiece]:
        return [p for p in self.pieces if not p.sent]

    @property
    def sent_ids(self) -> set[int]:
        return {p.id for p in self.pieces if p.sent}

    def check(self) -> None:
        assert self.all_conveyed == (len(self.sent_ids) == len(self.pieces))
        assert self.turns_since_complete >= 0
        assert self.all_conveyed or self.turns_since_complete == 0

    def _set(self, piece: InformationPiece, status: str) -> None:
        piece.status = status
        piece.timeline.append((self.turn, status))

    def agent_turn(self) -> None:
        """Count an agent turn; only turns after full delivery are counted."""
        if self.all_conveyed:
            self.turns_since_complete += 1

    def snapshot(self) -> "DialogueState":
        return copy.deepcopy(self)


def piece_text(domain: str, slot: str, value: str) -> str:
    return f"{domain}-{slot}-{value}"


def split_piece(text: str) -> tuple[str, str, str] | None:
    """Inverse of :func:`piece_text`; ``None`` for free-form shards."""
    parts = text.split("-", 2)
    if len(parts) != 3 or not all(parts) or " " in parts[0] or " " in parts[1]:
        return None
    return parts[0], parts[1], parts[2]


def shard_structured_goal(goal: UserGoal) -> list[InformationPiece]:
    """One ``domain-slot-value`` piece per triple, in the goal's own order."""
    if not goal.structured:
        raise GoalError("structured goal is empty")
    texts = [
        piece_text(domain, slot, str(value))
        for domain, slots in goal.structured.items()
        for slot, value in slots.items()
    ]
    if not texts:
        raise GoalError("structured goal has no slots")
    return [InformationPiece(i, t) for i, t in enumerate(texts)]


def shard_freeform_goal(goal: UserGoal, gateway: LLMGateway) -> list[InformationPiece]:
    request = ChatRequest(
        role_tag="judge",
        messages=[("user", render("shard_goal", user_goal=goal.goal_text))],
        context={"task": "shard", "goal_text": goal.goal_text},
    )
    for attempt in (1, 2):
        shards = [s.strip() for s in gateway.complete_structured(request, schema.SENTENCES)["sentences"]]
        shards = [s for s in shards if s]
        if shards:
            return [InformationPiece(i, s) for i, s in enumerate(shards)]
        logger.warning("empty shard list (attempt %d)", attempt)
    raise GoalError("model returned no shards")


def shard_goal(goal: UserGoal, gateway: LLMGateway | None = None) -> list[InformationPiece]:
    if goal.structured:
        return shard_structured_goal(goal)
    if gateway is None:
        raise GoalError("free-form goals need a gateway to shard")
    return shard_freeform_goal(goal, gateway)


def format_history(history: History) -> str:
    return "\n".join(f"{speaker}: {text}" for speaker, text in history) or "(no previous turns)"


class DialogueStateTracker:
    """Judge-backed selection of the pieces an utterance conveys."""

    def __init__(self, gateway: LLMGateway):
        self.gateway = gateway

    def select(
        self, history: History, utterance: str, candidates: Sequence[InformationPiece]
    ) -> set[int]:
        """Ids among ``candidates`` that ``utterance`` states explicitly. Pure."""
        if not candidates or not utterance.strip():
            return set()
        options = "\n".join(f"{n}. {p.text}" for n, p in enumerate(candidates, start=1))
        request = ChatRequest(
            role_tag="judge",
            messages=[
                (
                    "user",
                    render(
                        "dst",
                        dial_hist=format_history(history),
                        user_utterance=utterance,
                        numbered_options=options,
                    ),
                )
            ],
            context={"task": "dst", "utterance": utterance, "options": [p.text for p in candidates]},
        )
        numbers = self.gateway.complete_structured(request, schema.SELECTION)["selected"]
        chosen = set()
        for n in numbers:
            if 1 <= n <= len(candidates):
                chosen.add(candidates[n - 1].id)
            else:
                logger.warning("judge selected out-of-range option %d (of %d); dropped", n, len(candidates))
        return chosen

    def track_state(
        self, history: History, utterance: str, state: DialogueState
    ) -> tuple[DialogueState, set[int]]:
        """Mark the remaining pieces ``utterance`` conveys as sent."""
        conveyed = self.select(history, utterance, state.remaining)
        for piece in state.pieces:
            if piece.id in conveyed:
                state._set(piece, SENT)
        state.check()
        return state, conveyed


def mark_unsent(state: DialogueState, ids: Iterable[int]) -> DialogueState:
    ids = list(ids)
    known = {p.id for p in state.pieces}
    unknown = [i for i in ids if i not in known]
    if unknown:
        raise GoalError(f"unknown piece ids {unknown}")
    for piece in state.pieces:
        if piece.id in ids and piece.sent:
            state._set(piece, UNSENT)
    if not state.all_conveyed:
        state.turns_since_complete = 0
    state.check()
    return state

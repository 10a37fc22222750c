"""The goal-aligned collaborative user simulator."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Sequence

from .goals import DialogueState, DialogueStateTracker, History, InformationPiece, UserGoal, format_history
from .llm import ChatRequest, Decoding, LLMGateway, schema
from .llm.types import DEFAULT_TEMPERATURE
from .prompts import render

logger = logging.getLogger(__name__)

STOP_TOKENS = {"collab_multiwoz": "<END>", "collab_tau": "###STOP###"}


class SimulationError(RuntimeError):
    """A simulator post-check failed and the dialogue cannot continue."""


@dataclass
class SimulatorContext:
    goal: UserGoal
    state: DialogueState
    history: list[tuple[str, str]] = field(default_factory=list)
    persona: str | None = None
    stop_token: str = "<END>"
    prompt_template_id: str = "collab_multiwoz"
    additions: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.stop_token:
            raise ValueError("stop_token must be non-empty")

    @property
    def goal_text(self) -> str:
        """Goal as the user model sees it, including unavailable-service additions."""
        if not self.additions:
            return self.goal.goal_text
        return self.goal.goal_text.rstrip() + " Additionally, " + " ".join(self.additions)


@dataclass
class UserTurn:
    final_text: str
    ended: bool
    state: DialogueState
    wants_end: bool = False
    rest_applied: bool = False
    invalid_ending: bool = False
    conveyed: set[int] = field(default_factory=set)


def _user_messages(ctx: SimulatorContext, system: str) -> list[tuple[str, str]]:
    # the simulated user is the "assistant" of its own chat; agent turns are its inputs
    messages = [("system", system)]
    for speaker, text in ctx.history:
        messages.append(("assistant" if speaker == "User" else "user", text))
    if len(messages) == 1:
        messages.append(("user", "Start the conversation."))
    return messages


class UserSimulator:
    def __init__(self, gateway: LLMGateway, tracker: DialogueStateTracker | None = None):
        self.gateway = gateway
        self.tracker = tracker or DialogueStateTracker(gateway)

    def next_utterance(self, ctx: SimulatorContext) -> dict[str, Any]:
        persona = f"Your persona: {ctx.persona}" if ctx.persona else ""
        if ctx.prompt_template_id == "collab_tau":
            system = render("collab_tau", instruction_display="\n\nInstruction: " + ctx.goal_text, persona=persona)
        else:
            system = render(ctx.prompt_template_id, user_goal=ctx.goal_text, persona=persona)
        request = ChatRequest(
            role_tag="user_sim",
            messages=_user_messages(ctx, system),
            decoding=Decoding(temperature=DEFAULT_TEMPERATURE["user_sim"]),
            context={
                "task": "collab",
                "history": list(ctx.history),
                "pieces": [{"text": p.text, "sent": p.sent} for p in ctx.state.pieces],
                "additions": list(ctx.additions),
                "stop_token": ctx.stop_token,
            },
        )
        raw = self.gateway.complete(request).text
        wants_end = ctx.stop_token in raw
        text = " ".join(raw.replace(ctx.stop_token, " ").split())
        return {"text": text, "wants_end": wants_end, "raw": raw}

    def verify_ending(self, history: History, utterance: str) -> bool:
        request = ChatRequest(
            role_tag="judge",
            messages=[("user", render("ending_verifier", dial_hist=format_history(history), user_utterance=utterance))],
            context={"task": "ending", "utterance": utterance},
        )
        return bool(self.gateway.complete_structured(request, schema.VERDICT)["verdict"])

    def _rest_call(self, history: History, utterance: str, remaining: Sequence[InformationPiece]) -> str:
        texts = [p.text for p in remaining]
        request = ChatRequest(
            role_tag="generator",
            messages=[
                (
                    "user",
                    render(
                        "rest_provider",
                        dial_hist=format_history(history),
                        content=utterance,
                        dialogue_state_list=str(texts),
                    ),
                )
            ],
            decoding=Decoding(temperature=DEFAULT_TEMPERATURE["generator"]),
            context={"task": "rest", "utterance": utterance, "remaining": texts},
        )
        return self.gateway.complete(request).text.strip()

    def append_rest(self, history: History, utterance: str, remaining: Sequence[InformationPiece]) -> str:
        """Extend ``utterance`` so it conveys every piece in ``remaining``."""
        if not remaining:
            raise ValueError("append_rest needs at least one remaining piece")
        want = {p.id for p in remaining}
        text = self._rest_call(history, utterance, remaining)
        missing = want - self.tracker.select(history, text, remaining)
        if missing:
            logger.warning("rest provider missed pieces %s; regenerating once", sorted(missing))
            text = self._rest_call(history, text, [p for p in remaining if p.id in missing])
            missing = want - self.tracker.select(history, text, remaining)
            if missing:
                raise SimulationError(f"rest provider failed to deliver pieces {sorted(missing)}")
        return text

    def simulate_user_turn(self, ctx: SimulatorContext) -> UserTurn:
        out = self.next_utterance(ctx)
        text, wants_end = out["text"], out["wants_end"]
        state = ctx.state
        turn = UserTurn(final_text=text, ended=False, state=state, wants_end=wants_end)
        if wants_end and not state.all_conveyed:
            text = self.append_rest(ctx.history, text, state.remaining)
            turn.rest_applied = True
        elif wants_end:
            # a bare stop token is judged as-is so the verifier sees the intent
            turn.ended = self.verify_ending(ctx.history, text or out["raw"].strip())
            turn.invalid_ending = not turn.ended
        state, conveyed = self.tracker.track_state(ctx.history, text, state)
        if turn.ended and not state.all_conveyed:
            turn.ended = False
        turn.final_text, turn.state, turn.conveyed = text, state, conveyed
        return turn

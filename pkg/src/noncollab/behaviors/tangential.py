"""Off-topic chatter and complaints when the agent ignores it."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass

from ..goals import History, format_history
from ..llm import ChatRequest, Decoding, LLMGateway, schema
from ..llm.types import DEFAULT_TEMPERATURE
from ..prompts import render
from .resources import Persona

logger = logging.getLogger(__name__)

TANGENT_ACTS = {
    "factual_q": "ask something that has one objectively correct answer",
    "opinion_q": "ask for the listener's personal view or preference",
    "general_opinion": "state a personal view on a general topic",
    "statement_nonopinion": "share a plain fact or personal anecdote without judgement",
}
MIN_COMPLAINT_WORDS = 15
COMPLAINT_CANDIDATES = 5


class TangentError(RuntimeError):
    pass


@dataclass
class TangentState:
    persona: Persona
    pending_tangent: dict | None = None
    complaints_issued: int = 0
    tangents_issued: int = 0


def sample_act(rng: random.Random) -> str:
    return rng.choice(sorted(TANGENT_ACTS))


def gen_tangential(persona: Persona, act: str, gateway: LLMGateway, goal_text: str = "") -> str:
    if not persona.text.strip():
        raise ValueError("persona must be non-empty")
    if act not in TANGENT_ACTS:
        raise ValueError(f"unknown tangent act {act!r}")
    request = ChatRequest(
        role_tag="generator",
        messages=[
            (
                "user",
                render(
                    "tangential_utterance",
                    user_goal=goal_text,
                    user_persona=persona.text,
                    action_name=act,
                    action_description=TANGENT_ACTS[act],
                ),
            )
        ],
        decoding=Decoding(temperature=DEFAULT_TEMPERATURE["generator"]),
        context={"task": "tangential", "act": act, "persona": persona.text, "interest": persona.interest},
    )
    return gateway.complete(request).text.strip()


def verify_tangent_addressed(tangent: str, agent_utterance: str, gateway: LLMGateway) -> bool:
    if not agent_utterance.strip():
        return False
    request = ChatRequest(
        role_tag="judge",
        messages=[("user", render("tangent_addressed", conversational_content=tangent, system_utterance=agent_utterance))],
        context={"task": "tangent_addressed", "tangent": tangent, "agent_utterance": agent_utterance},
    )
    return bool(gateway.complete_structured(request, schema.VERDICT)["verdict"])


def complaint_candidates(tangent: str, gateway: LLMGateway, topic: str = "") -> list[str]:
    request = ChatRequest(
        role_tag="generator",
        messages=[("user", render("complaint", conversation_content=tangent))],
        decoding=Decoding(temperature=DEFAULT_TEMPERATURE["generator"]),
        context={"task": "complaint", "tangent": tangent, "topic": topic},
    )
    return [s.strip() for s in gateway.complete_structured(request, schema.SENTENCES)["sentences"] if s.strip()]


def gen_complaint(tangent: str, gateway: LLMGateway, rng: random.Random, topic: str = "") -> str:
    for attempt in (1, 2):
        candidates = complaint_candidates(tangent, gateway, topic)
        if len(candidates) != COMPLAINT_CANDIDATES:
            logger.warning("expected %d complaint candidates, got %d", COMPLAINT_CANDIDATES, len(candidates))
        long_enough = [c for c in candidates if len(c.split()) >= MIN_COMPLAINT_WORDS]
        if long_enough:
            return rng.choice(long_enough)
        logger.warning("no complaint reached %d words (attempt %d)", MIN_COMPLAINT_WORDS, attempt)
    raise TangentError("every complaint candidate was too short")


def merge_utterances(history: History, sentences: list[str], gateway: LLMGateway) -> str:
    """One model call joining ``sentences`` in order; a single sentence is returned unchanged."""
    if not sentences:
        raise ValueError("merge needs at least one sentence")
    if len(sentences) == 1:
        return sentences[0]
    request = ChatRequest(
        role_tag="generator",
        messages=[("user", render("merge", dial_hist=format_history(history), sentence_list=str(list(sentences))))],
        decoding=Decoding(temperature=DEFAULT_TEMPERATURE["generator"]),
        context={"task": "merge", "sentences": list(sentences)},
    )
    return gateway.complete(request).text.strip()

"""Per-transcript behavior analytics."""

from __future__ import annotations

import json
import re
from typing import Any, Callable

from ..agent.transcript import Transcript
from ..env.canonical import canon_params
from ..env.catalog import API_ALIASES, HELPER_APIS, Catalog, default_catalog
from ..llm import ChatRequest, LLMGateway, schema
from ..prompts import render

APOLOGY = re.compile(r"\b(sorry|apologi[sz]e[sd]?|apologies)\b", re.IGNORECASE)
_NUMBER = re.compile(r"(?<![\w:.])\d+(?::\d+)?(?![\w:])")
_TOKEN = re.compile(r"\b[A-Za-z0-9]{8}\b")


def is_apology(text: str) -> bool:
    return bool(APOLOGY.search(text))


def judge_apology_detector(gateway: LLMGateway) -> Callable[[str], bool]:
    """Apology detection by the judge model, as an alternative to the lexicon."""

    def detect(text: str) -> bool:
        request = ChatRequest(
            role_tag="judge",
            messages=[("user", render("apology_judge", system_utterance=text))],
            context={"task": "apology", "utterance": text},
        )
        return bool(gateway.complete_structured(request, schema.VERDICT)["verdict"])

    return detect


def _reference_shaped(token: str) -> bool:
    has_digit = any(c.isdigit() for c in token)
    has_alpha = any(c.isalpha() for c in token)
    inner_upper = any(c.isupper() for c in token[1:])
    return (has_digit and has_alpha) or (inner_upper and any(c.islower() for c in token))


def cited_tokens(text: str) -> set[str]:
    """Numbers and reference-shaped codes an utterance states."""
    tokens = set(_NUMBER.findall(text))
    tokens |= {t for t in _TOKEN.findall(text) if _reference_shaped(t)}
    return tokens


def behavior_analytics(
    transcript: Transcript,
    catalog: Catalog | None = None,
    apology_detector: Callable[[str], bool] | None = None,
) -> dict[str, Any]:
    catalog = catalog or default_catalog()
    detect = apology_detector or is_apology
    seen_helpers: set[str] = set()
    duplicated = hallucinated_params = 0
    talks = apologies = 0
    flagged: list[dict[str, Any]] = []
    evidence = ""
    for turn in transcript.turns:
        if turn.actor in ("user", "observation"):
            evidence += " " + turn.payload["text"]
            continue
        if turn.actor != "agent_action":
            continue
        action = turn.payload
        if action["kind"] == "api_call":
            name = API_ALIASES.get(action["api_name"], action["api_name"])
            params = action.get("input_parameters") or {}
            if name in HELPER_APIS:
                key = json.dumps([name, canon_params(params)], sort_keys=True)
                if key in seen_helpers:
                    duplicated += 1
                seen_helpers.add(key)
            spec = catalog.lookup(name)
            if spec is not None and set(params) - spec.keys:
                hallucinated_params += 1
        elif action["kind"] == "talk":
            talks += 1
            apologies += bool(detect(action["utterance"]))
            missing = sorted(t for t in cited_tokens(action["utterance"]) if t not in evidence)
            if missing:
                flagged.append({"step": action.get("step"), "tokens": missing})
    return {
        "duplicated_helper_calls": duplicated,
        "parameter_hallucinations": hallucinated_params,
        "talk_turns": talks,
        "apology_turns": apologies,
        "apology_ratio": apologies / talks if talks else 0.0,
        "limit_exceeded": transcript.outcome.limit_exceeded,
        "steps_used": transcript.outcome.steps_used,
        "complaints": sum(1 for a in transcript.annotations if a.get("kind") == "complaint"),
        "result_hallucination_flags": flagged,
    }

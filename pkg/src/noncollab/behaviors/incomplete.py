"""Brief fragment-style rewrites and premature truncation."""

from __future__ import annotations

import logging
import random
from typing import Sequence

from ..llm import ChatRequest, Decoding, LLMGateway, schema
from ..llm.types import DEFAULT_TEMPERATURE
from ..prompts import render
from .resources import FragmentPool

logger = logging.getLogger(__name__)

MIN_POOL = 5


class UtteranceTooShort(ValueError):
    pass


class EmptyPoolError(ValueError):
    pass


def truncate_premature(
    utterance: str,
    rng: random.Random,
    cut_range: tuple[float, float] = (0.3, 0.8),
    midword_prob: float = 0.3,
    min_chars: int = 10,
    cut_fraction: float | None = None,
    midword: bool | None = None,
) -> dict:
    """Cut ``utterance`` to a strict prefix; ``cut_fraction``/``midword`` pin the draws."""
    if len(utterance) < min_chars:
        raise UtteranceTooShort(f"utterance shorter than {min_chars} characters")
    frac = rng.uniform(*cut_range) if cut_fraction is None else cut_fraction
    if midword is None:
        midword = rng.random() < midword_prob
    cut = min(max(int(frac * len(utterance)), 1), len(utterance) - 1)
    text = utterance[:cut]
    if not midword and utterance[cut] != " ":
        space = text.rfind(" ")
        if space > 0:
            text = text[:space]
    text = text.rstrip()
    if not text:
        text = utterance[:cut]
    return {"text": text, "cut_fraction": frac, "midword": midword}


def sample_exemplars(pool: FragmentPool, rng: random.Random, k: int = 5) -> list[str]:
    if len(pool) < max(k, MIN_POOL):
        raise EmptyPoolError(f"fragment pool needs at least {max(k, MIN_POOL)} items")
    return rng.sample(pool.fragments, k)


def style_transfer_brief(
    utterance: str, pool: FragmentPool, rng: random.Random, gateway: LLMGateway, k: int = 5
) -> tuple[str, list[str]]:
    exemplars = sample_exemplars(pool, rng, k)
    request = ChatRequest(
        role_tag="generator",
        messages=[("user", render("style_transfer", sentence_list=str(exemplars), utterance=utterance))],
        decoding=Decoding(temperature=DEFAULT_TEMPERATURE["generator"]),
        context={"task": "style_transfer", "utterance": utterance, "exemplars": exemplars},
    )
    text = gateway.complete(request).text.strip()
    return text or utterance, exemplars


def classify_fragment(text: str, gateway: LLMGateway) -> bool:
    request = ChatRequest(
        role_tag="judge",
        messages=[("user", render("fragment_classifier", text=text))],
        context={"task": "fragment", "text": text},
    )
    return gateway.complete_structured(request, schema.LABEL)["label"].strip().lower() == "fragmented"


def build_fragment_pool(
    corpus: Sequence[dict], gateway: LLMGateway, min_length: int = 10, dedup: bool = True
) -> FragmentPool:
    """Filter a corpus of ``{text, language_tag, redacted_flag}`` items down to fragments."""
    if not corpus:
        raise ValueError("corpus is empty")
    keep: list[str] = []
    seen: set[str] = set()
    for item in corpus:
        text = str(item.get("text", "")).strip()
        if str(item.get("language_tag", "en")).lower() not in ("en", "english"):
            continue
        if item.get("redacted_flag"):
            continue
        if len(text) <= min_length:
            continue
        if dedup and text in seen:
            continue
        seen.add(text)
        if classify_fragment(text, gateway):
            keep.append(text)
    if not keep:
        raise EmptyPoolError("no fragments survived filtering; use the bundled pool")
    return FragmentPool(keep)

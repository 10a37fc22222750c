"""Success rate, relative success rate, goal alignment and IGA."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Callable, Iterable, Sequence

from ..agent.transcript import Transcript
from ..goals import DialogueState, DialogueStateTracker, InformationPiece
from ..llm import LLMGateway

logger = logging.getLogger(__name__)

DEFAULT_MAX_ATTEMPTS = 10


def round1(x: float) -> float:
    """Round half up to one decimal, as the reported tables do."""
    return float(Decimal(repr(x)).quantize(Decimal("0.1"), rounding=ROUND_HALF_UP))


def sr_from_counts(successes: int, total: int) -> float:
    if total <= 0:
        raise ValueError("success rate needs at least one graded simulation")
    if not 0 <= successes <= total:
        raise ValueError("successes must lie in [0, total]")
    return round1(100.0 * successes / total)


def relative_sr(sr_mode: float, sr_collab: float) -> float:
    """Mode SR as a percentage of the collaborative SR (0 when the baseline is 0)."""
    if sr_collab <= 0:
        return 0.0
    return round1(100.0 * sr_mode / sr_collab)


def percentage(count: int, total: int) -> float:
    return round1(100.0 * count / total) if total else 0.0


def graded(transcripts: Iterable[Transcript]) -> list[Transcript]:
    """Transcripts that count toward metrics: not aborted, not GA-exhausted."""
    out = []
    for t in transcripts:
        if t.outcome.status == "aborted":
            logger.warning("excluding aborted simulation %s", t.file_name)
        elif t.outcome.ga_exhausted:
            logger.warning("excluding simulation %s: goal alignment never reached", t.file_name)
        else:
            out.append(t)
    return out


@dataclass
class RunMetrics:
    n: int
    sr: float
    relative_sr: float | None
    iga: float | None
    avg_steps: float
    limit_exceeded_rate: float
    excluded: int = 0

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def success_rate(transcripts: Sequence[Transcript], baseline_sr: float | None = None) -> RunMetrics:
    if not transcripts:
        raise ValueError("success rate needs at least one transcript")
    kept = graded(transcripts)
    if not kept:
        raise ValueError("no graded transcripts (all aborted or GA-exhausted)")
    wins = sum(t.outcome.success for t in kept)
    sr = sr_from_counts(wins, len(kept))
    with_ga = [t for t in kept if t.outcome.iga is not None]
    return RunMetrics(
        n=len(kept),
        sr=sr,
        relative_sr=None if baseline_sr is None else relative_sr(sr, baseline_sr),
        iga=percentage(sum(bool(t.outcome.iga) for t in with_ga), len(with_ga)) if with_ga else None,
        avg_steps=round(sum(t.outcome.steps_used for t in kept) / len(kept), 2),
        limit_exceeded_rate=percentage(sum(t.outcome.limit_exceeded for t in kept), len(kept)),
        excluded=len(transcripts) - len(kept),
    )


def goal_alignment(transcript: Transcript, gateway: LLMGateway) -> bool:
    """Re-track every user utterance against a fresh copy of the original pieces."""
    state = DialogueState([InformationPiece(p["id"], p["text"]) for p in transcript.pieces])
    tracker = DialogueStateTracker(gateway)
    history: list[tuple[str, str]] = []
    for turn in transcript.turns:
        if turn.actor == "user":
            tracker.track_state(history, turn.payload["text"], state)
            history.append(("User", turn.payload["text"]))
        elif turn.actor == "agent_action" and turn.payload["kind"] == "talk":
            history.append(("Agent", turn.payload["utterance"]))
    return state.all_conveyed


def run_with_ga_guarantee(
    run: Callable[[int], Transcript],
    check_ga: Callable[[Transcript], bool],
    seed0: int,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
) -> dict:
    """Re-run with seeds ``seed0, seed0+1, ...`` until goal alignment holds."""
    if max_attempts < 1:
        raise ValueError("max_attempts must be >= 1")
    transcript = None
    for attempt in range(1, max_attempts + 1):
        transcript = run(seed0 + attempt - 1)
        outcome = transcript.outcome
        outcome.attempts = attempt
        if outcome.status == "aborted":
            outcome.ga = outcome.iga = None
            return {"transcript": transcript, "attempts": attempt, "iga": False}
        outcome.ga = bool(check_ga(transcript))
        outcome.iga = outcome.ga and attempt == 1
        if outcome.ga:
            return {"transcript": transcript, "attempts": attempt, "iga": outcome.iga}
        logger.info("goal alignment failed for %s (attempt %d)", transcript.scenario_id, attempt)
    transcript.outcome.ga_exhausted = True
    logger.warning("goal alignment not reached after %d attempts: %s", max_attempts, transcript.file_name)
    return {"transcript": transcript, "attempts": max_attempts, "iga": False}

"""Layers the active behaviors over the collaborative simulator, one user turn at a time.

Per turn the layers run in a fixed order: goal additions (once, at setup),
tangential content, impatience, then the incomplete-utterance surface rewrite.
"""

from __future__ import annotations

import logging
import random
from typing import Any, Sequence

from ..env.catalog import Catalog
from ..goals import InformationPiece, mark_unsent
from ..simulator import SimulationError, SimulatorContext, UserSimulator, UserTurn
from .impatience import AngerState, cynical_call, detect_failure_notification, gen_impatience, impatience_step, sample_impatience_act
from .incomplete import UtteranceTooShort, style_transfer_brief, truncate_premature
from .modes import BehaviorMode, BehaviorParams
from .resources import FragmentPool, Persona, load_fragment_pool, load_personas
from .tangential import TangentState, gen_complaint, gen_tangential, merge_utterances, sample_act, verify_tangent_addressed
from .unavailable import augment_goal_unavailable

logger = logging.getLogger(__name__)


class BehaviorPipeline:
    """Per-simulation injector state plus the turn-level composition logic."""

    def __init__(
        self,
        simulator: UserSimulator,
        mode: BehaviorMode,
        rng: random.Random,
        params: BehaviorParams | None = None,
        personas: Sequence[Persona] | None = None,
        fragment_pool: FragmentPool | None = None,
    ):
        self.sim = simulator
        self.gateway = simulator.gateway
        self.tracker = simulator.tracker
        self.mode = mode
        self.rng = rng
        self.params = params or BehaviorParams()
        self.anger = AngerState()
        self.tangent: TangentState | None = None
        self.annotations: list[dict[str, Any]] = []
        self._pool = fragment_pool
        if "tangential" in mode:
            personas = personas or load_personas()
            self.tangent = TangentState(persona=rng.choice(list(personas)))
        if "incomplete" in mode and self._pool is None:
            self._pool = load_fragment_pool()

    def _note(self, mode: str, kind: str, turn: int, **extra: Any) -> None:
        self.annotations.append({"mode": mode, "kind": kind, "turn": turn, **extra})

    def setup(self, ctx: SimulatorContext, catalog: Catalog) -> None:
        if "unavailable" in self.mode:
            augmented = augment_goal_unavailable(ctx.goal, catalog, self.gateway)
            ctx.additions = list(augmented.additions)
            for text in augmented.additions:
                self._note("unavailable", "addition", 0, text=text)
        if self.tangent is not None:
            ctx.persona = self.tangent.persona.text

    # post-checked rewrites ------------------------------------------------

    def _conveyed(self, history, text: str, pieces: Sequence[InformationPiece]) -> set[int]:
        return self.tracker.select(history, text, pieces)

    def _merge(self, ctx: SimulatorContext, sentences: list[str]) -> str:
        if len(sentences) == 1:
            return sentences[0]
        pieces = ctx.state.pieces
        needed = set().union(*(self._conveyed(ctx.history, s, pieces) for s in sentences))
        for attempt in (1, 2):
            merged = merge_utterances(ctx.history, sentences, self.gateway)
            if needed <= self._conveyed(ctx.history, merged, pieces):
                return merged
            logger.warning("merge dropped information (attempt %d)", attempt)
        raise SimulationError("merged utterance lost information pieces")

    def _cynical(self, ctx: SimulatorContext, text: str) -> str:
        if not text.strip():
            return text
        pieces = ctx.state.pieces
        before = self._conveyed(ctx.history, text, pieces)
        for attempt in (1, 2):
            rewritten = cynical_call(ctx.history, text, self.gateway)
            if rewritten and self._conveyed(ctx.history, rewritten, pieces) == before:
                return rewritten
            logger.warning("cynical rewrite changed the conveyed pieces (attempt %d)", attempt)
        raise SimulationError("cynical rewrite changed the conveyed information")

    def _incomplete(self, ctx: SimulatorContext, turn: UserTurn, text: str) -> str:
        p = self.params
        brief = self.rng.random() < p.brief_prob
        info: dict[str, Any] = {}
        if not brief:
            try:
                cut = truncate_premature(text, self.rng, (p.cut_min, p.cut_max), p.midword_prob, p.min_truncate_chars)
                new_text, info = cut["text"], {"style": "premature", "cut_fraction": round(cut["cut_fraction"], 6)}
            except UtteranceTooShort:
                brief = True
        if brief:
            new_text, exemplars = style_transfer_brief(text, self._pool, self.rng, self.gateway, p.exemplar_count)
            info = {"style": "brief", "exemplars": exemplars}
        fresh = [piece for piece in ctx.state.pieces if piece.id in turn.conveyed]
        lost = sorted({piece.id for piece in fresh} - self._conveyed(ctx.history, new_text, fresh))
        if lost and turn.ended:
            # an ending turn must not lose content, so the surface rewrite is dropped
            self._note("incomplete", "skipped", ctx.state.turn, reason="ending turn would lose pieces", **info)
            return text
        if lost:
            mark_unsent(ctx.state, lost)
            turn.conveyed -= set(lost)
        self._note("incomplete", info.pop("style"), ctx.state.turn, lost=lost, **info)
        return new_text

    # turn ----------------------------------------------------------------

    def user_turn(self, ctx: SimulatorContext, last_agent_utterance: str | None = None) -> UserTurn:
        turn_no = ctx.state.turn
        tsc_before = ctx.state.turns_since_complete
        latched = self.anger.outburst_happened
        turn = self.sim.simulate_user_turn(ctx)
        if turn.rest_applied:
            self._note("core", "rest_provider", turn_no)
        if turn.invalid_ending:
            self._note("core", "invalid_ending", turn_no)
        head: list[str] = []
        tail: list[str] = []
        replaced = False
        if not turn.ended and last_agent_utterance is not None:
            if "impatience" in self.mode:
                trigger = None
                if detect_failure_notification(last_agent_utterance, ctx.goal, self.gateway):
                    trigger = "failure"
                elif tsc_before >= self.params.delay_threshold:
                    trigger = "delay"
                if trigger:
                    self.anger, fire = impatience_step(
                        self.anger, trigger, self.rng, self.params.anger_base, self.params.anger_step
                    )
                    self._note(
                        "impatience", "trigger", turn_no, trigger=trigger, fired=fire,
                        prob=round(self.anger.activation_prob, 6),
                    )
                    if fire:
                        act = sample_impatience_act(self.rng)
                        outburst = gen_impatience(ctx.history, act, self.anger.level, trigger, self.gateway)
                        self._note("impatience", "outburst", turn_no, act=act, level=self.anger.level, trigger=trigger, text=outburst)
                        head.append(outburst)
                        replaced = trigger == "delay"
            ts = self.tangent
            if ts is not None and ts.pending_tangent is not None:
                tangent = ts.pending_tangent["content"]
                addressed = verify_tangent_addressed(tangent, last_agent_utterance, self.gateway)
                self._note("tangential", "tangent_check", turn_no, addressed=addressed)
                if not addressed:
                    complaint = gen_complaint(tangent, self.gateway, self.rng, ts.persona.interest)
                    ts.complaints_issued += 1
                    self._note("tangential", "complaint", turn_no, text=complaint)
                    head.append(complaint)
                ts.pending_tangent = None
        ts = self.tangent
        if ts is not None and not turn.ended and not turn.rest_applied and not replaced and ts.tangents_issued < self.params.tangent_cap:
            first = ts.tangents_issued == 0 and turn_no <= 1 and self.params.tangent_on_first_turn
            if first or self.rng.random() < self.params.tangent_prob:
                act = sample_act(self.rng)
                tangent = gen_tangential(ts.persona, act, self.gateway, ctx.goal_text)
                ts.pending_tangent = {"content": tangent, "act": act}
                ts.tangents_issued += 1
                self._note("tangential", "tangent", turn_no, act=act, text=tangent)
                tail.append(tangent)
        if replaced:
            sentences = head
        else:
            sentences = head + ([turn.final_text] if turn.final_text else []) + tail
        text = self._merge(ctx, sentences) if sentences else turn.final_text
        if latched and text:
            text = self._cynical(ctx, text)
            self._note("impatience", "cynical", turn_no)
        if "incomplete" in self.mode and text:
            text = self._incomplete(ctx, turn, text)
        if text != turn.final_text and text:
            _, extra = self.tracker.track_state(ctx.history, text, ctx.state)
            turn.conveyed |= extra
        turn.final_text = text
        turn.state = ctx.state
        return turn

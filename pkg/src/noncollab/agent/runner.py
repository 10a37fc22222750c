"""The ReAct loop: user turns interleaved with budgeted agent steps."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Sequence

from ..behaviors import BehaviorMode, BehaviorParams, BehaviorPipeline, FragmentPool, Persona
from ..env.base import render_observation
from ..env.catalog import Catalog, default_catalog
from ..env.scenario import Scenario
from ..goals import DialogueState, shard_goal
from ..llm import ChatRequest, Decoding, GatewayError, LLMGateway
from ..prompts import TEMPLATE_VERSION
from ..simulator import STOP_TOKENS, SimulationError, SimulatorContext, UserSimulator
from .parser import parse_action
from .prompting import AGENT_TEMPLATE, FORMAT_REMINDER, render_agent_prompt
from .transcript import Outcome, Transcript, agent_view

logger = logging.getLogger(__name__)

DEFAULT_STEP_BUDGET = 30


@dataclass
class RunOptions:
    step_budget: int = DEFAULT_STEP_BUDGET
    params: BehaviorParams = field(default_factory=BehaviorParams)
    personas: Sequence[Persona] | None = None
    fragment_pool: FragmentPool | None = None
    user_template: str = "collab_multiwoz"
    catalog: Catalog | None = None

    def __post_init__(self) -> None:
        if self.step_budget < 1:
            raise ValueError("step_budget must be >= 1")


def _agent_request(transcript: Transcript) -> ChatRequest:
    view = agent_view(transcript.turns)
    return ChatRequest(
        role_tag="agent",
        messages=[("user", render_agent_prompt(view))],
        decoding=Decoding(temperature=0.0, max_tokens=400),
        context={"task": "agent", "turns": view},
    )


def run_simulation(
    scenario: Scenario,
    mode: BehaviorMode,
    seed: int,
    gateway: LLMGateway,
    options: RunOptions | None = None,
    trial: int = 0,
) -> Transcript:
    """Run one dialogue; ``gateway`` must route the ``agent`` role to the agent under test."""
    opts = options or RunOptions()
    catalog = opts.catalog or default_catalog()
    rng = random.Random(seed)
    transcript = Transcript(
        scenario_id=scenario.scenario_id,
        mode=mode.name,
        seed=seed,
        trial=trial,
        step_budget=opts.step_budget,
        templates={"user": opts.user_template, "agent": AGENT_TEMPLATE, "version": TEMPLATE_VERSION},
        goal=scenario.goal.to_dict(),
        ground_truth=[r.to_dict() for r in scenario.ground_truth],
    )
    outcome = transcript.outcome
    env = scenario.new_environment(rng=random.Random(f"env-{seed}"), catalog=catalog)
    state: DialogueState | None = None
    pipeline = None
    try:
        state = DialogueState(shard_goal(scenario.goal, gateway))
        sim = UserSimulator(gateway)
        pipeline = BehaviorPipeline(sim, mode, rng, opts.params, opts.personas, opts.fragment_pool)
        ctx = SimulatorContext(
            goal=scenario.goal,
            state=state,
            stop_token=STOP_TOKENS.get(opts.user_template, "<END>"),
            prompt_template_id=opts.user_template,
        )
        pipeline.setup(ctx, catalog)
        transcript.persona = ctx.persona
        transcript.goal["additions"] = list(ctx.additions)
        last_talk: str | None = None
        steps = 0
        while True:
            state.turn += 1
            seen = len(pipeline.annotations)
            user = pipeline.user_turn(ctx, last_talk)
            transcript.add(
                "user",
                {"text": user.final_text, "ended": user.ended, "conveyed": sorted(user.conveyed)},
                pipeline.annotations[seen:],
            )
            if user.ended:
                outcome.ended_by_user = True
                break
            ctx.history.append(("User", user.final_text))
            talked = False
            while not talked:
                if steps >= opts.step_budget:
                    outcome.limit_exceeded = True
                    break
                raw = gateway.complete(_agent_request(transcript)).text
                steps += 1
                action = parse_action(raw)
                if action.thought:
                    transcript.add("agent_thought", {"text": action.thought, "step": steps})
                transcript.add("agent_action", {**action.to_dict(), "step": steps})
                if action.kind == "api_call":
                    obs = env.execute(action.api_name, action.input_parameters)
                    transcript.add("observation", {"data": obs, "text": render_observation(obs)})
                elif action.kind == "parse_error":
                    transcript.add("observation", {"data": {"error": "format"}, "text": FORMAT_REMINDER})
                else:
                    last_talk = action.utterance
                    ctx.history.append(("Agent", action.utterance))
                    state.agent_turn()
                    talked = True
            if outcome.limit_exceeded:
                break
        outcome.steps_used = steps
        outcome.status = "limit_exceeded" if outcome.limit_exceeded else "completed"
        outcome.success = bool(env.grade()) and not outcome.limit_exceeded
    except (GatewayError, SimulationError) as exc:
        logger.warning("simulation %s/%s seed %d aborted: %s", scenario.scenario_id, mode.name, seed, exc)
        outcome.status = "aborted"
        outcome.error = f"{type(exc).__name__}: {exc}"
        outcome.steps_used = len([t for t in transcript.turns if t.actor == "agent_action"])
        outcome.success = False
    if state is not None:
        transcript.pieces = [p.to_dict() for p in state.pieces]
        outcome.all_conveyed = state.all_conveyed
    if pipeline is not None:
        transcript.annotations = list(pipeline.annotations)
    transcript.final_bookings = env.final_bookings()
    return transcript


"""Simulated non-collaborative users for evaluating tool-calling booking agents."""

from .agent import OracleAgentProvider, RunOptions, Transcript, load_transcripts, parse_action, run_simulation
from .behaviors import BehaviorMode, BehaviorParams, BehaviorPipeline, all_mode_combinations
from .config import ProviderFactory, RunConfig, cell_seed
from .env.scenario import ScenarioPack, mini_pack
from .evaluation import build_report, export_sft_samples, goal_alignment, run_with_ga_guarantee, success_rate
from .goals import DialogueState, DialogueStateTracker, InformationPiece, UserGoal, shard_goal
from .llm import HTTPProvider, LLMGateway, ScriptedProvider
from .simulator import SimulatorContext, UserSimulator

__version__ = "0.1.0"

__all__ = [
    "BehaviorMode",
    "BehaviorParams",
    "BehaviorPipeline",
    "DialogueState",
    "DialogueStateTracker",
    "HTTPProvider",
    "InformationPiece",
    "LLMGateway",
    "OracleAgentProvider",
    "ProviderFactory",
    "RunConfig",
    "RunOptions",
    "ScenarioPack",
    "ScriptedProvider",
    "SimulatorContext",
    "Transcript",
    "UserGoal",
    "UserSimulator",
    "all_mode_combinations",
    "build_report",
    "cell_seed",
    "export_sft_samples",
    "goal_alignment",
    "load_transcripts",
    "mini_pack",
    "parse_action",
    "run_simulation",
    "run_with_ga_guarantee",
    "shard_goal",
    "success_rate",
]

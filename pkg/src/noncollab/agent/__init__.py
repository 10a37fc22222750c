from .oracle import OracleAgentProvider
from .parser import AgentAction, parse_action
from .prompting import FORMAT_REMINDER, render_agent_prompt
from .runner import DEFAULT_STEP_BUDGET, RunOptions, run_simulation
from .transcript import SCHEMA_VERSION, Outcome, SchemaVersionError, Transcript, Turn, agent_view, load_transcripts

__all__ = [
    "DEFAULT_STEP_BUDGET",
    "FORMAT_REMINDER",
    "SCHEMA_VERSION",
    "AgentAction",
    "OracleAgentProvider",
    "Outcome",
    "RunOptions",
    "SchemaVersionError",
    "Transcript",
    "Turn",
    "agent_view",
    "load_transcripts",
    "parse_action",
    "render_agent_prompt",
    "run_simulation",
]

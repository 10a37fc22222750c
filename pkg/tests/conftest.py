from __future__ import annotations

import json
import time
from pathlib import Path

import pytest

from noncollab.config import RunConfig
from noncollab.orchestrator import execute

ACCEPTANCE: dict[int, tuple[str, str]] = {}


def record(criterion: int, ok: bool | None, detail: str = "") -> None:
    status = "SKIP" if ok is None else ("PASS" if ok else "FAIL")
    ACCEPTANCE[criterion] = (status, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        status, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:>2}: {status}" + (f"  ({detail})" if detail else ""))


def golden_config(output_dir: Path, **overrides) -> RunConfig:
    data = {
        "scenario_pack": "bundled",
        "trials": 2,
        "seed": 7,
        "step_budget": 30,
        "workers": 4,
        "output_dir": str(output_dir),
        "agent_provider": {"name": "scripted"},
        "user_provider": {"name": "scripted"},
        "judge_provider": {"name": "scripted"},
    }
    data.update(overrides)
    return RunConfig.from_dict(data)


@pytest.fixture(scope="session")
def golden_runs(tmp_path_factory):
    """The golden grid run twice into separate directories, with wall times."""
    out = []
    for name in ("golden_a", "golden_b"):
        directory = tmp_path_factory.mktemp(name)
        start = time.perf_counter()
        summary = execute(golden_config(directory))
        out.append((directory, time.perf_counter() - start, summary))
    return out


@pytest.fixture(scope="session")
def golden_dir(golden_runs) -> Path:
    return golden_runs[0][0]


@pytest.fixture(scope="session")
def golden_transcripts(golden_dir):
    from noncollab.agent.transcript import load_transcripts

    return load_transcripts(golden_dir)


def load_json(path: Path):
    return json.loads(Path(path).read_text(encoding="utf-8"))

"""Batch execution of the scenario x mode x trial grid."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .agent.runner import RunOptions, run_simulation
from .agent.transcript import Transcript, load_transcripts, transcript_name
from .behaviors.modes import BehaviorMode
from .behaviors.resources import load_fragment_pool, load_personas
from .config import ProviderFactory, RunConfig, cell_seed
from .env.scenario import Scenario
from .evaluation.metrics import goal_alignment, run_with_ga_guarantee
from .evaluation.report import build_report, render_report, report_json

logger = logging.getLogger(__name__)

ABORT_THRESHOLD = 0.10
REPORT_JSON = "report.json"
REPORT_TEXT = "report.txt"


@dataclass
class Cell:
    scenario: Scenario
    mode: BehaviorMode
    trial: int
    seed: int

    @property
    def file_name(self) -> str:
        return transcript_name(self.scenario.scenario_id, self.mode.name, self.trial, self.seed)


@dataclass
class RunSummary:
    executed: int
    skipped: int
    aborted: int
    total: int
    report: dict

    @property
    def abort_rate(self) -> float:
        return self.aborted / self.total if self.total else 0.0


def plan_cells(cfg: RunConfig) -> list[Cell]:
    pack = cfg.pack()
    cells = []
    for scenario in pack:
        for mode in cfg.behavior_modes:
            for trial in range(cfg.trials):
                cells.append(Cell(scenario, mode, trial, cell_seed(cfg.seed, scenario.scenario_id, mode.name, trial)))
    return cells


def run_cell(cell: Cell, cfg: RunConfig, factory: ProviderFactory, options: RunOptions) -> Transcript:
    def attempt(seed: int) -> Transcript:
        gateway = factory.gateway(cell.scenario, seed)
        return run_simulation(cell.scenario, cell.mode, seed, gateway, options, trial=cell.trial)

    def check(t: Transcript) -> bool:
        return goal_alignment(t, factory.gateway(cell.scenario, t.seed))

    result = run_with_ga_guarantee(attempt, check, cell.seed, cfg.max_ga_attempts)
    transcript = result["transcript"]
    transcript.cell_seed = cell.seed
    return transcript


def write_report(out_dir: Path) -> dict:
    report = build_report(load_transcripts(out_dir))
    (out_dir / REPORT_JSON).write_text(report_json(report), encoding="utf-8")
    (out_dir / REPORT_TEXT).write_text(render_report(report), encoding="utf-8")
    return report


def execute(cfg: RunConfig, force: bool = False) -> RunSummary:
    out_dir = cfg.output_path
    out_dir.mkdir(parents=True, exist_ok=True)
    cells = plan_cells(cfg)
    todo = [c for c in cells if force or not (out_dir / c.file_name).exists()]
    factory = ProviderFactory(cfg)
    options = RunOptions(
        step_budget=cfg.step_budget,
        params=cfg.behavior_params,
        personas=load_personas(cfg._resolve(cfg.personas)),
        fragment_pool=load_fragment_pool(cfg._resolve(cfg.fragment_pool)),
    )
    logger.info("%d cells planned, %d to run, %d already on disk", len(cells), len(todo), len(cells) - len(todo))

    def work(cell: Cell) -> Transcript:
        transcript = run_cell(cell, cfg, factory, options)
        transcript.save(out_dir)
        return transcript

    if cfg.workers == 1:
        done = [work(c) for c in todo]
    else:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            done = list(pool.map(work, todo))
    aborted = sum(t.outcome.status == "aborted" for t in done)
    report = write_report(out_dir)
    return RunSummary(len(done), len(cells) - len(todo), aborted, len(done), report)

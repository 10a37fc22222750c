"""Run configuration and provider construction."""

from __future__ import annotations

import json
import zlib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .agent.oracle import OracleAgentProvider
from .behaviors.modes import BehaviorMode, BehaviorParams, all_mode_combinations
from .env.scenario import Scenario, ScenarioPack, bundled_pack_path
from .llm import CallLog, HTTPProvider, LLMGateway, Provider, ScriptedProvider
from .llm.rulebased import RuleBasedProvider

BUNDLED = "bundled"
ORACLE_OPTIONS = ("courtesy", "slip", "stall", "fail", "malformed", "wrong_entity")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    scenario_pack: str = BUNDLED
    modes: list[str] = field(default_factory=lambda: [m.name for m in all_mode_combinations()])
    trials: int = 4
    seed: int = 0
    step_budget: int = 30
    agent_provider: dict[str, Any] = field(default_factory=lambda: {"name": "scripted"})
    user_provider: dict[str, Any] = field(default_factory=lambda: {"name": "scripted"})
    judge_provider: dict[str, Any] = field(default_factory=lambda: {"name": "scripted"})
    injector_params: dict[str, Any] = field(default_factory=dict)
    workers: int = 1
    output_dir: str = "runs/latest"
    max_ga_attempts: int = 10
    personas: str | None = None
    fragment_pool: str | None = None
    base_dir: Path = field(default=Path("."), repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if self.step_budget < 1:
            raise ConfigError("step_budget must be >= 1")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        if self.max_ga_attempts < 1:
            raise ConfigError("max_ga_attempts must be >= 1")
        try:
            self.behavior_modes
            self.behavior_params
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        for path in (self.pack_path, self._resolve(self.personas), self._resolve(self.fragment_pool)):
            if path is not None and not path.exists():
                raise ConfigError(f"path does not exist: {path}")
        for spec in (self.agent_provider, self.user_provider, self.judge_provider):
            if spec.get("name") not in ("scripted", "http"):
                raise ConfigError(f"provider name must be 'scripted' or 'http', got {spec.get('name')!r}")
            fixtures = self._resolve(spec.get("fixtures"))
            if fixtures is not None and not fixtures.exists():
                raise ConfigError(f"fixture file does not exist: {fixtures}")

    def _resolve(self, path: str | None) -> Path | None:
        if path is None:
            return None
        p = Path(path)
        return p if p.is_absolute() else self.base_dir / p

    @property
    def pack_path(self) -> Path:
        return bundled_pack_path() if self.scenario_pack == BUNDLED else self._resolve(self.scenario_pack)

    @property
    def output_path(self) -> Path:
        return self._resolve(self.output_dir)

    @property
    def behavior_modes(self) -> list[BehaviorMode]:
        return [BehaviorMode.parse(m) for m in self.modes]

    @property
    def behavior_params(self) -> BehaviorParams:
        return BehaviorParams.from_overrides(self.injector_params)

    @classmethod
    def from_dict(cls, data: dict[str, Any], base_dir: Path | str = ".") -> "RunConfig":
        known = set(cls.__dataclass_fields__) - {"base_dir"}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config key(s) {sorted(unknown)}")
        return cls(**data, base_dir=Path(base_dir))

    @classmethod
    def load(cls, path: str | Path) -> "RunConfig":
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
        try:
            if path.suffix == ".toml":
                import tomllib  # Python 3.11+

                data = tomllib.loads(text)
            else:
                data = json.loads(text)
        except ModuleNotFoundError:
            raise ConfigError("TOML configs need Python 3.11+; use JSON instead") from None
        except ValueError as exc:
            raise ConfigError(f"malformed config {path}: {exc}") from None
        return cls.from_dict(data, base_dir=path.parent)

    def pack(self) -> ScenarioPack:
        return ScenarioPack(self.pack_path)


def cell_seed(base_seed: int, scenario_id: str, mode: str, trial: int) -> int:
    """Stable per-cell seed, independent of execution order."""
    return (base_seed * 1_000_003 + zlib.crc32(f"{scenario_id}/{mode}/{trial}".encode())) % (2**31)


def _fixtures(spec: dict[str, Any], cfg: RunConfig) -> list[dict[str, Any]]:
    path = cfg._resolve(spec.get("fixtures"))
    if path is None:
        return []
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _http(spec: dict[str, Any]) -> HTTPProvider:
    return HTTPProvider(model=spec.get("model"), base_url=spec.get("base_url"), timeout=spec.get("timeout", 60.0))


class ProviderFactory:
    """Builds the per-simulation gateway; HTTP clients are shared across simulations."""

    def __init__(self, cfg: RunConfig, log: CallLog | None = None):
        self.cfg = cfg
        self.log = log or CallLog()
        self._shared: dict[str, Provider] = {}
        self._rulebased = RuleBasedProvider()

    def _role_provider(self, key: str, spec: dict[str, Any]) -> Provider:
        if spec["name"] == "http":
            if key not in self._shared:
                self._shared[key] = _http(spec)
            return self._shared[key]
        return ScriptedProvider(_fixtures(spec, self.cfg), fallback=self._rulebased)

    def agent(self, scenario: Scenario, seed: int) -> Provider:
        spec = self.cfg.agent_provider
        if spec["name"] == "http":
            return self._role_provider("agent", spec)
        options = {k: spec[k] for k in ORACLE_OPTIONS if k in spec}
        oracle = OracleAgentProvider(scenario.goal.structured or {}, scenario.ground_truth, seed=seed, **options)
        return ScriptedProvider(_fixtures(spec, self.cfg), fallback=oracle)

    def gateway(self, scenario: Scenario, seed: int) -> LLMGateway:
        user = self._role_provider("user", self.cfg.user_provider)
        providers = {
            "user_sim": user,
            "generator": user,
            "judge": self._role_provider("judge", self.cfg.judge_provider),
            "agent": self.agent(scenario, seed),
        }
        return LLMGateway(providers, log=self.log)

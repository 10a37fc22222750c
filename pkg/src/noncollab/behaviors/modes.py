"""Behavior-mode combinations and their tunable parameters."""

from __future__ import annotations

from dataclasses import dataclass, field, fields, replace
from itertools import combinations
from typing import Any, Iterable

BEHAVIORS = ("unavailable", "tangential", "impatience", "incomplete")
COLLABORATIVE = "collaborative"


@dataclass(frozen=True)
class BehaviorMode:
    modes: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        unknown = set(self.modes) - set(BEHAVIORS)
        if unknown:
            raise ValueError(f"unknown behavior(s) {sorted(unknown)}")
        object.__setattr__(self, "modes", frozenset(self.modes))

    @property
    def name(self) -> str:
        return "+".join(b for b in BEHAVIORS if b in self.modes) or COLLABORATIVE

    @classmethod
    def parse(cls, text: str) -> "BehaviorMode":
        text = text.strip()
        if text in ("", COLLABORATIVE):
            return cls()
        return cls(frozenset(p.strip() for p in text.split("+")))

    def __contains__(self, behavior: str) -> bool:
        return behavior in self.modes

    def __str__(self) -> str:
        return self.name


def all_mode_combinations() -> list[BehaviorMode]:
    """Collaborative, the four single behaviors and the six pairs."""
    out = [BehaviorMode()]
    out += [BehaviorMode(frozenset([b])) for b in BEHAVIORS]
    out += [BehaviorMode(frozenset(pair)) for pair in combinations(BEHAVIORS, 2)]
    return out


@dataclass(frozen=True)
class BehaviorParams:
    # tangential
    tangent_on_first_turn: bool = True
    tangent_prob: float = 0.4
    tangent_cap: int = 4
    # impatience
    anger_base: float = 0.3
    anger_step: float = 0.25
    delay_threshold: int = 2
    # incomplete
    brief_prob: float = 0.5
    cut_min: float = 0.3
    cut_max: float = 0.8
    midword_prob: float = 0.3
    exemplar_count: int = 5
    min_truncate_chars: int = 10

    def __post_init__(self) -> None:
        for name in ("tangent_prob", "anger_base", "anger_step", "brief_prob", "midword_prob"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must be in [0, 1]")
        if not 0.0 < self.cut_min <= self.cut_max < 1.0:
            raise ValueError("need 0 < cut_min <= cut_max < 1")

    @classmethod
    def from_overrides(cls, overrides: dict[str, Any] | None) -> "BehaviorParams":
        """Accepts flat keys or per-mode sections (``{"impatience": {...}}``)."""
        known = {f.name for f in fields(cls)}
        flat: dict[str, Any] = {}
        for key, value in (overrides or {}).items():
            if isinstance(value, dict):
                flat.update(value)
            else:
                flat[key] = value
        unknown = set(flat) - known
        if unknown:
            raise ValueError(f"unknown injector parameter(s) {sorted(unknown)}")
        return replace(cls(), **flat)


def parse_modes(names: Iterable[str]) -> list[BehaviorMode]:
    return [BehaviorMode.parse(n) for n in names]

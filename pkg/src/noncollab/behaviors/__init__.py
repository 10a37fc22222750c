from .impatience import (
    IMPATIENCE_ACTS,
    LEVELS,
    AngerState,
    activation_probability,
    detect_failure_notification,
    gen_impatience,
    impatience_step,
    level_for,
)
from .incomplete import (
    EmptyPoolError,
    UtteranceTooShort,
    build_fragment_pool,
    style_transfer_brief,
    truncate_premature,
)
from .modes import BEHAVIORS, BehaviorMode, BehaviorParams, all_mode_combinations
from .pipeline import BehaviorPipeline
from .resources import FragmentPool, Persona, load_fragment_pool, load_personas
from .tangential import (
    TANGENT_ACTS,
    TangentError,
    TangentState,
    gen_complaint,
    gen_tangential,
    merge_utterances,
    verify_tangent_addressed,
)
from .unavailable import AugmentationError, AugmentedGoal, augment_goal_unavailable

__all__ = [
    "BEHAVIORS",
    "IMPATIENCE_ACTS",
    "LEVELS",
    "TANGENT_ACTS",
    "AngerState",
    "AugmentationError",
    "AugmentedGoal",
    "BehaviorMode",
    "BehaviorParams",
    "BehaviorPipeline",
    "EmptyPoolError",
    "FragmentPool",
    "Persona",
    "TangentError",
    "TangentState",
    "UtteranceTooShort",
    "activation_probability",
    "all_mode_combinations",
    "augment_goal_unavailable",
    "build_fragment_pool",
    "detect_failure_notification",
    "gen_complaint",
    "gen_impatience",
    "gen_tangential",
    "impatience_step",
    "level_for",
    "load_fragment_pool",
    "load_personas",
    "merge_utterances",
    "style_transfer_brief",
    "truncate_premature",
    "verify_tangent_addressed",
]

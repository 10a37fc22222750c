from .base import Environment, EnvError, is_error, render_observation
from .canonical import canon_params, canon_value, params_key, parse_time
from .catalog import APP_DOMAIN, DOMAIN_APP, HELPER_APIS, ApiSpec, Catalog, Param, default_catalog
from .multiwoz import (
    GRADED_PARAMS,
    BookingRecord,
    Database,
    Entity,
    EnvironmentState,
    MultiWOZEnvironment,
    bookings_match,
    entity_matches,
)
from .scenario import Scenario, ScenarioError, ScenarioPack, bundled_pack_path, mini_pack

__all__ = [
    "APP_DOMAIN",
    "DOMAIN_APP",
    "GRADED_PARAMS",
    "HELPER_APIS",
    "ApiSpec",
    "BookingRecord",
    "Catalog",
    "Database",
    "Entity",
    "EnvError",
    "Environment",
    "EnvironmentState",
    "MultiWOZEnvironment",
    "Param",
    "Scenario",
    "ScenarioError",
    "ScenarioPack",
    "bookings_match",
    "bundled_pack_path",
    "canon_params",
    "canon_value",
    "default_catalog",
    "entity_matches",
    "is_error",
    "mini_pack",
    "params_key",
    "parse_time",
    "render_observation",
]

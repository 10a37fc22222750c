"""Stateful MultiWOZ-style booking environment."""

from __future__ import annotations

import json
import random
import string
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Mapping

from .base import Environment, EnvError
from .canonical import TimeFormatError, canon_params, canon_value, params_key, parse_time
from .catalog import API_ALIASES, APP_DOMAIN, DOMAIN_APP, Catalog, default_catalog

TIME_SLOTS = ("leaveAt", "arriveBy", "time")
ENTITY_KEY = {"train": "train_id", "restaurant": "restaurant_id", "hotel": "hotel_id"}
# parameters that make up a booking's identity for grading
GRADED_PARAMS = {
    "train": ("people",),
    "restaurant": ("people", "day", "time"),
    "hotel": ("people", "day", "stay"),
    "taxi": ("departure", "destination", "leaveAt", "arriveBy"),
}
BASE62 = string.ascii_letters + string.digits


@dataclass(frozen=True)
class Entity:
    domain: str
    id: int
    slots: Mapping[str, Any]

    def to_dict(self) -> dict[str, Any]:
        return {"id": self.id, **self.slots}


@dataclass
class BookingRecord:
    domain: str
    params: dict[str, str]
    entity_id: int | None = None
    reference: str | None = None

    def key(self) -> tuple:
        return (self.domain.lower(), self.entity_id, params_key(self.params))

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"domain": self.domain}
        if self.entity_id is not None:
            out["entity_id"] = self.entity_id
        out["params"] = dict(self.params)
        if self.reference is not None:
            out["reference"] = self.reference
        return out

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "BookingRecord":
        return cls(
            domain=data["domain"],
            params=dict(data.get("params", {})),
            entity_id=data.get("entity_id"),
            reference=data.get("reference"),
        )


class Database:
    """Read-only entity tables; safe to share between simulations."""

    def __init__(self, tables: Mapping[str, Iterable[Entity]]):
        self.tables: dict[str, tuple[Entity, ...]] = {}
        for domain, rows in tables.items():
            rows = tuple(sorted(rows, key=lambda e: e.id))
            ids = [e.id for e in rows]
            if len(ids) != len(set(ids)):
                raise ValueError(f"duplicate entity id in {domain}")
            for e in rows:
                for slot in TIME_SLOTS:
                    if slot in e.slots:
                        parse_time(e.slots[slot])
            self.tables[domain] = rows

    @classmethod
    def from_dir(cls, path: str | Path) -> "Database":
        """Load ``{domain}_db.json`` files (MultiWOZ 2.4 layout)."""
        tables = {}
        for file in sorted(Path(path).glob("*_db.json")):
            domain = file.name[: -len("_db.json")]
            with open(file, encoding="utf-8") as fh:
                rows = json.load(fh)
            tables[domain] = [cls._entity(domain, i, row) for i, row in enumerate(rows)]
        if not tables:
            raise FileNotFoundError(f"no *_db.json files under {path}")
        return cls(tables)

    @staticmethod
    def _entity(domain: str, index: int, row: Mapping[str, Any]) -> Entity:
        row = dict(row)
        raw_id = row.pop("id", index)
        try:
            eid = int(raw_id)
        except (TypeError, ValueError):
            eid = index
            row["ref_id"] = raw_id
        return Entity(domain, eid, row)

    def get(self, domain: str, entity_id: Any) -> Entity | None:
        try:
            entity_id = int(entity_id)
        except (TypeError, ValueError):
            return None
        return next((e for e in self.tables.get(domain, ()) if e.id == entity_id), None)


@dataclass
class EnvironmentState:
    db: Database
    ground_truth: tuple[BookingRecord, ...]
    bookings: list[BookingRecord] = field(default_factory=list)


def bookings_match(bookings: Iterable[BookingRecord], truth: Iterable[BookingRecord]) -> bool:
    return sorted(b.key() for b in bookings) == sorted(t.key() for t in truth)


def _observed(fn):
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except EnvError as err:
            return err.to_observation()

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


class MultiWOZEnvironment(Environment):
    """Booking environment with helper-API discovery and exact-match grading."""

    def __init__(
        self,
        state: EnvironmentState,
        rng: random.Random | None = None,
        catalog: Catalog | None = None,
        enforce_capacity: bool = False,
    ):
        self.state = state
        self.rng = rng or random.Random(0)
        self.catalog = catalog or default_catalog()
        self.enforce_capacity = enforce_capacity
        self._used_refs: set[str] = set()

    # helper APIs ---------------------------------------------------------

    def show_app_description(self) -> list[dict[str, str]]:
        return [{"name": name, "description": desc} for name, desc in self.catalog.apps.items()]

    @_observed
    def show_api_description(self, app_name: str) -> list[dict[str, str]]:
        if app_name not in self.catalog.apps:
            raise EnvError("unknown_app", f"no app named {app_name!r}")
        return [{"name": a.name, "description": a.description} for a in self.catalog.app_apis(app_name)]

    @_observed
    def show_api_documentation(self, app_name: str, api_name: str) -> dict[str, Any]:
        if app_name not in self.catalog.apps:
            raise EnvError("unknown_app", f"no app named {app_name!r}")
        spec = next((a for a in self.catalog.app_apis(app_name) if a.name == api_name), None)
        if spec is None:
            raise EnvError("unknown_api", f"app {app_name!r} has no api {api_name!r}")
        return spec.to_dict()

    show_api_docs = show_api_documentation

    # domain APIs ---------------------------------------------------------

    def _check_params(self, api_name: str, params: Mapping[str, Any]) -> dict[str, str]:
        spec = self.catalog.lookup(api_name)
        unknown = sorted(set(params) - spec.keys)
        if unknown:
            raise EnvError("unknown_parameter", f"{api_name} has no parameter(s) {unknown}")
        missing = sorted(spec.required - set(params))
        if missing:
            raise EnvError("missing_parameter", f"{api_name} requires {missing}")
        values = canon_params(params)
        for key, value in values.items():
            param = spec.param(key)
            if param.constraints and value not in param.constraints:
                raise EnvError("constraint_violation", f"{key} must be one of {list(param.constraints)}")
            if key in TIME_SLOTS:
                try:
                    parse_time(value)
                except TimeFormatError as exc:
                    raise EnvError("invalid_time", str(exc)) from None
        return values

    @_observed
    def retrieve(self, domain: str, filters: Mapping[str, Any] | None = None) -> list[Entity]:
        """Entities passing every filter, ordered by id. Never mutates state."""
        if domain == "taxi" or domain not in ENTITY_KEY:
            raise EnvError("unknown_api", f"no retrieve api for {domain!r}")
        values = self._check_params(f"{DOMAIN_APP[domain]}_retrieve", filters or {})
        return [e for e in self.state.db.tables.get(domain, ()) if entity_matches(e, values)]

    def _new_reference(self) -> str:
        while True:
            ref = "".join(self.rng.choice(BASE62) for _ in range(8))
            if ref not in self._used_refs:
                self._used_refs.add(ref)
                return ref

    @_observed
    def book(self, domain: str, params: Mapping[str, Any]) -> dict[str, str]:
        if domain not in GRADED_PARAMS:
            raise EnvError("unknown_api", f"no book api for {domain!r}")
        values = self._check_params(f"{DOMAIN_APP[domain]}_book", params)
        for key in ("people", "stay"):
            if key in values and not values[key].isdigit():
                raise EnvError("invalid_value", f"{key} must be a whole number, got {values[key]!r}")
        entity = None
        if domain in ENTITY_KEY:
            entity = self.state.db.get(domain, values[ENTITY_KEY[domain]])
            if entity is None:
                raise EnvError("unknown_entity", f"no {domain} with id {values[ENTITY_KEY[domain]]}")
            if domain == "train" and "day" in values and values["day"] != canon_value(entity.slots.get("day")):
                raise EnvError("invalid_value", f"train {entity.id} runs on {entity.slots.get('day')}")
            cap = entity.slots.get("capacity")
            if self.enforce_capacity and cap is not None and int(values["people"]) > int(cap):
                raise EnvError("capacity_exceeded", f"maximum party size is {cap}")
        elif "leaveAt" not in values and "arriveBy" not in values:
            raise EnvError("missing_parameter", "taxi_book needs leaveAt or arriveBy")
        if any(b.domain == domain for b in self.state.bookings):
            raise EnvError(
                "duplicate_domain_booking",
                f"a {domain} booking already exists; cancel it before booking again",
            )
        record = BookingRecord(
            domain=domain,
            params={k: values[k] for k in GRADED_PARAMS[domain] if k in values},
            entity_id=entity.id if entity else None,
            reference=self._new_reference(),
        )
        self.state.bookings.append(record)
        return {"status": "booked", "domain": domain, "reference": record.reference}

    @_observed
    def book_cancel(self, reference: str | None = None, domain: str | None = None) -> dict[str, str]:
        params = {k: v for k, v in (("reference", reference), ("domain", domain)) if v is not None}
        self._check_params("book_cancel", params)
        if not params:
            raise EnvError("missing_parameter", "book_cancel needs a reference or a domain")
        for i, b in enumerate(self.state.bookings):
            if (reference is None or b.reference == reference) and (domain is None or b.domain == canon_value(domain)):
                del self.state.bookings[i]
                return {"status": "cancelled", "domain": b.domain, "reference": b.reference}
        raise EnvError("no_matching_booking", "no active booking matches")

    # dispatch ------------------------------------------------------------

    def execute(self, api_name: str, params: dict[str, Any]) -> Any:
        name = API_ALIASES.get(api_name, api_name)
        spec = self.catalog.lookup(name)
        if spec is None:
            return EnvError("unknown_api", f"no api named {api_name!r}").to_observation()
        if not isinstance(params, Mapping):
            return EnvError("invalid_parameters", "input_parameters must be a mapping").to_observation()
        params = dict(params)
        if spec.app == "supervisor":
            unknown = sorted(set(params) - spec.keys)
            missing = sorted(spec.required - set(params))
            if unknown or missing:
                return EnvError(
                    "unknown_parameter" if unknown else "missing_parameter",
                    f"{name}: unknown {unknown} missing {missing}",
                ).to_observation()
            if name == "show_app_description":
                return self.show_app_description()
            if name == "show_api_description":
                return self.show_api_description(params["app_name"])
            return self.show_api_documentation(params["app_name"], params["api_name"])
        if name == "book_cancel":
            unknown = sorted(set(params) - spec.keys)
            if unknown:
                return EnvError("unknown_parameter", f"book_cancel has no parameter(s) {unknown}").to_observation()
            return self.book_cancel(**params)
        domain = APP_DOMAIN[spec.app]
        if name.endswith("_retrieve"):
            result = self.retrieve(domain, params)
            return result if isinstance(result, dict) else [e.to_dict() for e in result]
        return self.book(domain, params)

    def grade(self) -> bool:
        return bookings_match(self.state.bookings, self.state.ground_truth)

    def final_bookings(self) -> list[dict[str, Any]]:
        return [b.to_dict() for b in self.state.bookings]


def entity_matches(entity: Entity, filters: Mapping[str, str]) -> bool:
    for key, want in filters.items():
        have = entity.slots.get(key)
        if have is None:
            return False
        if key == "arriveBy":
            if parse_time(have) > parse_time(want):
                return False
        elif key == "leaveAt":
            if parse_time(have) < parse_time(want):
                return False
        elif canon_value(have) != want:
            return False
    return True

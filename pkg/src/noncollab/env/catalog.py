"""API specifications for the booking environment."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

DAYS = ("monday", "tuesday", "wednesday", "thursday", "friday", "saturday", "sunday")
AREAS = ("centre", "north", "south", "east", "west")
PRICERANGES = ("cheap", "moderate", "expensive")

# app name -> database domain
APP_DOMAIN = {"train": "train", "restaurant": "restaurant", "accommodation": "hotel", "taxi": "taxi"}
DOMAIN_APP = {v: k for k, v in APP_DOMAIN.items()}

HELPER_APIS = ("show_app_description", "show_api_description", "show_api_documentation")
API_ALIASES = {"show_api_docs": "show_api_documentation"}


@dataclass(frozen=True)
class Param:
    key: str
    type: str
    description: str
    required: bool = False
    constraints: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if self.constraints is not None and not self.constraints:
            raise ValueError(f"empty constraint list for {self.key}")

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "key": self.key,
            "type": self.type,
            "required": self.required,
            "description": self.description,
        }
        if self.constraints:
            out["constraints"] = list(self.constraints)
        return out


@dataclass(frozen=True)
class ApiSpec:
    app: str
    name: str
    description: str
    parameters: tuple[Param, ...] = ()
    returns: str = ""
    writes: bool = False

    def __post_init__(self) -> None:
        keys = [p.key for p in self.parameters]
        if len(keys) != len(set(keys)):
            raise ValueError(f"duplicate parameter keys in {self.name}")

    @property
    def keys(self) -> set[str]:
        return {p.key for p in self.parameters}

    @property
    def required(self) -> set[str]:
        return {p.key for p in self.parameters if p.required}

    def param(self, key: str) -> Param | None:
        return next((p for p in self.parameters if p.key == key), None)

    def to_dict(self) -> dict[str, Any]:
        return {
            "app_name": self.app,
            "api_name": self.name,
            "description": self.description,
            "parameters": [p.to_dict() for p in self.parameters],
            "returns": self.returns,
        }


@dataclass
class Catalog:
    apps: dict[str, str]
    apis: list[ApiSpec] = field(default_factory=list)
    helpers: list[ApiSpec] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.apps:
            raise ValueError("catalog needs at least one app")

    def app_apis(self, app: str) -> list[ApiSpec]:
        return [a for a in self.apis if a.app == app]

    def lookup(self, api_name: str) -> ApiSpec | None:
        api_name = API_ALIASES.get(api_name, api_name)
        return next((a for a in self.apis + self.helpers if a.name == api_name), None)

    @property
    def all_specs(self) -> list[ApiSpec]:
        return self.apis + self.helpers

    def write_api_names(self) -> set[str]:
        return {a.name for a in self.apis if a.writes}


def _time(key: str, text: str) -> Param:
    return Param(key, "string", f"{text} (24-hour HH:MM)")


HELPERS = [
    ApiSpec("supervisor", "show_app_description", "List the available apps.", (), "app names with descriptions"),
    ApiSpec(
        "supervisor",
        "show_api_description",
        "List the apis of one app.",
        (Param("app_name", "string", "name of the app", required=True),),
        "api names with descriptions",
    ),
    ApiSpec(
        "supervisor",
        "show_api_documentation",
        "Show the full specification of one api.",
        (
            Param("app_name", "string", "name of the app", required=True),
            Param("api_name", "string", "name of the api", required=True),
        ),
        "api specification",
    ),
]


def default_catalog() -> Catalog:
    apps = {
        "train": "Search train timetables and book train tickets.",
        "restaurant": "Search restaurants and book tables.",
        "accommodation": "Search hotels and guesthouses and book rooms.",
        "taxi": "Book taxis between two places.",
        "general": "Manage existing reservations (cancellation).",
    }
    day = Param("day", "string", "day of the week", constraints=DAYS)
    apis = [
        ApiSpec(
            "train",
            "train_retrieve",
            "Find trains matching the given conditions.",
            (
                Param("departure", "string", "departure station"),
                Param("destination", "string", "destination station"),
                day,
                _time("leaveAt", "earliest departure time"),
                _time("arriveBy", "latest arrival time"),
            ),
            "list of trains",
        ),
        ApiSpec(
            "train",
            "train_book",
            "Book tickets on one train.",
            (
                Param("train_id", "integer", "id of the train from train_retrieve", required=True),
                Param("people", "string", "number of tickets", required=True),
                Param("day", "string", "day of travel; must match the train", constraints=DAYS),
            ),
            "booking reference",
            writes=True,
        ),
        ApiSpec(
            "restaurant",
            "restaurant_retrieve",
            "Find restaurants matching the given conditions.",
            (
                Param("name", "string", "restaurant name"),
                Param("food", "string", "type of food"),
                Param("area", "string", "area of town", constraints=AREAS),
                Param("pricerange", "string", "price range", constraints=PRICERANGES),
            ),
            "list of restaurants",
        ),
        ApiSpec(
            "restaurant",
            "restaurant_book",
            "Book a table at one restaurant.",
            (
                Param("restaurant_id", "integer", "id of the restaurant from restaurant_retrieve", required=True),
                Param("people", "string", "party size", required=True),
                Param("day", "string", "day of the booking", required=True, constraints=DAYS),
                Param("time", "string", "time of the booking (24-hour HH:MM)", required=True),
            ),
            "booking reference",
            writes=True,
        ),
        ApiSpec(
            "accommodation",
            "accommodation_retrieve",
            "Find hotels or guesthouses matching the given conditions.",
            (
                Param("name", "string", "hotel name"),
                Param("area", "string", "area of town", constraints=AREAS),
                Param("pricerange", "string", "price range", constraints=PRICERANGES),
                Param("type", "string", "kind of place", constraints=("hotel", "guesthouse")),
                Param("stars", "string", "star rating", constraints=("0", "1", "2", "3", "4", "5")),
                Param("parking", "string", "free parking", constraints=("yes", "no")),
                Param("internet", "string", "free wifi", constraints=("yes", "no")),
            ),
            "list of places to stay",
        ),
        ApiSpec(
            "accommodation",
            "accommodation_book",
            "Book a room at one hotel or guesthouse.",
            (
                Param("hotel_id", "integer", "id of the place from accommodation_retrieve", required=True),
                Param("people", "string", "number of guests", required=True),
                Param("day", "string", "day of arrival", required=True, constraints=DAYS),
                Param("stay", "string", "number of nights", required=True),
            ),
            "booking reference",
            writes=True,
        ),
        ApiSpec(
            "taxi",
            "taxi_book",
            "Book a taxi. Give a departure time or an arrival time.",
            (
                Param("departure", "string", "pick-up place", required=True),
                Param("destination", "string", "drop-off place", required=True),
                _time("leaveAt", "pick-up time"),
                _time("arriveBy", "arrival time"),
            ),
            "booking reference with car type and phone",
            writes=True,
        ),
        ApiSpec(
            "general",
            "book_cancel",
            "Cancel an existing booking by reference or by domain.",
            (
                Param("reference", "string", "booking reference"),
                Param("domain", "string", "domain of the booking", constraints=("train", "restaurant", "hotel", "taxi")),
            ),
            "confirmation",
            writes=True,
        ),
    ]
    return Catalog(apps, apis, list(HELPERS))

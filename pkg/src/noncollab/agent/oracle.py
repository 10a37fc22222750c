"""Scripted booking agent used for offline runs.

It reads only what a real agent would see (user text and observations) but
is configured with the scenario's goal and ground truth, so it behaves like a
competent agent with tunable lapses: courtesy apologies, invalid parameter
slips, stalls, failure notices and occasional malformed output.
"""

from __future__ import annotations

import random
from typing import Any, Mapping, Sequence

from ..env.catalog import DOMAIN_APP, Catalog, default_catalog
from ..env.multiwoz import ENTITY_KEY, BookingRecord
from ..llm.rulebased import has_domain, value_mentioned
from ..llm.types import ChatRequest, ChatResponse, Usage

UNSUPPORTED_TERMS = (
    "menu", "nutrition", "cake", "window", "view", "pet", "dog", "check-in", "wheelchair",
    "vegetarian meal", "child seat", "french", "electric", "quiet carriage",
)
SLOT_WORDS = {
    "arriveBefore": "arrival time", "arriveBy": "arrival time", "leaveAt": "departure time",
    "people": "number of people", "stay": "number of nights", "pricerange": "price range",
    "food": "cuisine", "type": "accommodation type",
}
SLIP_KEYS = {"train": "seat_class", "restaurant": "seating", "hotel": "room_view", "taxi": "car_type"}
GOAL_TO_PARAM = {"arriveBefore": "arriveBy"}


def _call(api_name: str, params: Mapping[str, Any], thought: str) -> str:
    body = {"api_name": api_name, "input_parameters": dict(params)}
    return f"Thought: {thought}\nAction: API call{body!r}"


def _talk(text: str, thought: str) -> str:
    return f'Thought: {thought}\nAction: Talk("{text.replace(chr(34), chr(39))}")'


class OracleAgentProvider:
    provider_id = "oracle"

    def __init__(
        self,
        goal: Mapping[str, Mapping[str, str]],
        ground_truth: Sequence[BookingRecord],
        catalog: Catalog | None = None,
        courtesy: float = 0.5,
        slip: float = 0.15,
        stall: float = 0.2,
        fail: float = 0.12,
        malformed: float = 0.03,
        wrong_entity: float = 0.05,
        seed: int = 0,
    ):
        self.goal = {d: dict(s) for d, s in goal.items()}
        self.truth = {r.domain: r for r in ground_truth}
        self.catalog = catalog or default_catalog()
        self.courtesy, self.slip, self.stall, self.fail = courtesy, slip, stall, fail
        self.malformed, self.wrong_entity, self.seed = malformed, wrong_entity, seed

    def complete(self, request: ChatRequest) -> ChatResponse:
        rng = random.Random(f"{self.seed}:{request.prompt_hash()}")
        text = self.act(request.context.get("turns", []), rng)
        return ChatResponse(text=text, provider_id=self.provider_id, usage=Usage(0, len(text.split())))

    # reading the dialogue -------------------------------------------------

    @staticmethod
    def _pairs(view):
        """(action, observation-or-None) for every API call in order."""
        out = []
        for i, item in enumerate(view):
            if item["actor"] == "agent_action" and item["kind"] == "api_call":
                nxt = view[i + 1] if i + 1 < len(view) and view[i + 1]["actor"] == "observation" else None
                out.append((item, nxt["data"] if nxt else None))
        return out

    def _domain_params(self, domain: str, api: str) -> dict[str, str]:
        keys = self.catalog.lookup(api).keys
        out = {}
        for slot, value in self.goal[domain].items():
            key = GOAL_TO_PARAM.get(slot, slot)
            if key in keys:
                out[key] = value
        return out

    def act(self, view: list[dict[str, Any]], rng: random.Random) -> str:
        user_idx = max((i for i, t in enumerate(view) if t["actor"] == "user"), default=-1)
        user_text = " ".join(t["text"] for t in view if t["actor"] == "user")
        last_user = view[user_idx]["text"] if user_idx >= 0 else ""
        this_turn = view[user_idx + 1:]
        fresh_turn = not any(t["actor"] == "agent_action" for t in this_turn)
        pairs = self._pairs(view)
        called = [(a["api_name"], a["input_parameters"]) for a, _ in pairs]

        if fresh_turn and rng.random() < self.malformed:
            return "I should look into this request and get back to the user."

        booked: dict[str, str] = {}
        book_attempts: dict[str, int] = {}
        results: dict[str, list] = {}
        booked_now: list[str] = []
        book_error: dict[str, str] = {}
        for action, obs in pairs:
            name = action["api_name"]
            if name.endswith("_book") and isinstance(obs, dict):
                dom = next(d for d, a in DOMAIN_APP.items() if name == f"{a}_book")
                book_attempts[dom] = book_attempts.get(dom, 0) + 1
                if obs.get("status") == "booked":
                    booked[dom] = obs["reference"]
                    if any(t is action for t in this_turn):
                        booked_now.append(dom)
                elif "error" in obs and obs["error"] != "unknown_parameter" and any(t is action for t in this_turn):
                    book_error[dom] = obs.get("message", "")
            elif name.endswith("_retrieve") and isinstance(obs, list):
                dom = next(d for d, a in DOMAIN_APP.items() if name == f"{a}_retrieve")
                results[dom] = obs

        unsupported = next((w for w in UNSUPPORTED_TERMS if w in last_user.lower()), None)
        if unsupported and fresh_turn and rng.random() < 0.5:
            return _call("show_app_description", {}, "The user asks for something unusual; check what the apps support.")

        if book_error:
            dom, msg = next(iter(book_error.items()))
            return _talk(f"I'm sorry, I was unable to complete the {dom} booking: {msg}", "The booking failed.")

        ready = [
            d for d in self.goal
            if d not in booked and all(value_mentioned(user_text, s, v) for s, v in self.goal[d].items())
        ]
        if ready and fresh_turn:
            roll = rng.random()
            if roll < self.stall:
                return _talk(f"I'm still checking the {ready[0]} options, one moment please.", "Stall.")
            if roll < self.stall + self.fail:
                return _talk(
                    f"Unfortunately, I'm unable to complete the {ready[0]} booking right now.",
                    "Report a failure to the user.",
                )
        for dom in ready:
            step = self._next_step(dom, called, results, book_attempts, rng)
            if step is not None:
                return step

        return self._reply(last_user, unsupported, booked, booked_now, user_text, rng)

    def _next_step(self, dom, called, results, book_attempts, rng) -> str | None:
        app = DOMAIN_APP[dom]
        if ("show_app_description", {}) not in called:
            return _call("show_app_description", {}, "List the available apps first.")
        if ("show_api_description", {"app_name": app}) not in called:
            return _call("show_api_description", {"app_name": app}, f"See which APIs the {app} app offers.")
        if dom != "taxi":
            retrieve = f"{app}_retrieve"
            if ("show_api_documentation", {"app_name": app, "api_name": retrieve}) not in called:
                return _call("show_api_documentation", {"app_name": app, "api_name": retrieve}, "Read the search API docs.")
            if dom not in results:
                return _call(retrieve, self._domain_params(dom, retrieve), f"Search for a matching {dom}.")
        book = f"{app}_book"
        if ("show_api_documentation", {"app_name": app, "api_name": book}) not in called:
            return _call("show_api_documentation", {"app_name": app, "api_name": book}, "Read the booking API docs.")
        params = self._domain_params(dom, book)
        if dom in ENTITY_KEY:
            found = results.get(dom) or []
            if not found:
                return None
            ids = [r["id"] for r in found]
            truth = self.truth.get(dom)
            pick = truth.entity_id if truth and truth.entity_id in ids else ids[0]
            if rng.random() < self.wrong_entity and len(ids) > 1:
                pick = next(i for i in ids if i != pick)
            params[ENTITY_KEY[dom]] = pick
        if book_attempts.get(dom, 0) == 0 and rng.random() < self.slip:
            params[SLIP_KEYS[dom]] = "standard"
            return _call(book, params, f"Book the {dom}.")
        return _call(book, params, f"Book the {dom} with the user's details.")

    def _reply(self, last_user, unsupported, booked, booked_now, user_text, rng) -> str:
        parts = []
        if unsupported:
            parts.append("Unfortunately, I'm unable to help with that extra request, since my booking tools do not support it.")
        elif "?" in last_user and rng.random() < self.courtesy:
            parts.append("Sorry, I can only help with travel bookings.")
        for dom in booked_now:
            parts.append(f"Your {dom} booking is confirmed, reference {booked[dom]}.")
        pending = [d for d in self.goal if d not in booked]
        if not pending:
            parts.append("Is there anything else I can help you with?")
        else:
            dom = next((d for d in pending if has_domain(user_text, d)), None)
            if dom is None:
                parts.append("How can I help with your plans today?")
            else:
                missing = [s for s, v in self.goal[dom].items() if not value_mentioned(user_text, s, v)]
                if missing:
                    words = ", ".join(SLOT_WORDS.get(s, s) for s in missing)
                    parts.append(f"Could you tell me the {words} for the {dom}?")
                else:
                    parts.append(f"I could not find a {dom} matching those details, could you adjust the request?")
        return _talk(" ".join(parts), "Reply to the user.")

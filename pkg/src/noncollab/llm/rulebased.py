"""Deterministic rule-based stand-in for the user, judge and generator models.

Each request names its task in ``request.context["task"]`` and carries the
structured inputs the prompt was rendered from. Replies are a pure function
of the request: any randomness is seeded from the prompt hash.
"""

from __future__ import annotations

import json
import random
import re
from typing import Any, Callable

from .types import ChatRequest, ChatResponse, ProviderUnconfigured, Usage

DOMAIN_WORDS = {
    "train": ("train",),
    "restaurant": ("restaurant", "table", "dine", "dinner", "lunch"),
    "hotel": ("hotel", "guesthouse", "guest house", "room", "place to stay"),
    "taxi": ("taxi", "cab"),
}
DOMAIN_NOUN = {"train": "train", "restaurant": "restaurant table", "hotel": "hotel", "taxi": "taxi"}

SLOT_PHRASE = {
    "day": "on {v}",
    "destination": "going to {v}",
    "departure": "leaving from {v}",
    "arriveBy": "arriving by {v}",
    "arriveBefore": "arriving by {v}",
    "leaveAt": "leaving after {v}",
    "food": "serving {v} food",
    "area": "in the {v}",
    "pricerange": "in the {v} price range",
    "time": "at {v}",
    "name": "called {v}",
    "type": "that is a {v}",
    "stars": "with {v} stars",
}

STOPWORDS = set(
    """i i'm im me my we our you your a an the to for of and or but so that this it is are was be
    would like want need looking please could can just also some with will should there here at by
    on in from going leaving arriving after hello hi hey thanks thank great okay ok um well yes
    that's it's do does have has get about really very which what""".split()
)

APOLOGY = ("sorry", "apologize", "apologise", "apologies", "apology")
FAILURE = (
    "unable",
    "cannot",
    "can't",
    "couldn't",
    "could not",
    "not able",
    "not possible",
    "no way to",
    "unfortunately",
    "failed",
    "isn't supported",
    "not supported",
)
ENDING = ("thank", "that's all", "that's everything", "bye", "goodbye", "enough of this", "i'm done")


def _count_phrase(slot: str, value: str) -> str | None:
    if slot == "people":
        return f"for {value}" if not value.isdigit() else f"for {value} people"
    if slot == "stay":
        return f"for {value}" if not value.isdigit() else f"for {value} nights"
    if slot in ("parking", "internet"):
        noun = "parking" if slot == "parking" else "wifi"
        return f"with free {noun}" if value == "yes" else f"without free {noun}"
    return None


def slot_phrase(slot: str, value: str) -> str:
    value = str(value)
    return _count_phrase(slot, value) or SLOT_PHRASE.get(slot, f"with {slot} {{v}}").format(v=value)


def render_request(domain: str, slots: list[tuple[str, str]], first: bool = True) -> str:
    phrases = ", ".join(slot_phrase(s, v) for s, v in slots)
    noun = DOMAIN_NOUN.get(domain, domain)
    if first:
        return f"I need a {noun} {phrases}."
    return f"For the {noun.split()[0]}, {phrases}."


def has_domain(text: str, domain: str) -> bool:
    low = text.lower()
    return any(re.search(rf"\b{re.escape(w)}", low) for w in DOMAIN_WORDS.get(domain, (domain,)))


def value_mentioned(text: str, slot: str, value: str) -> bool:
    low = text.lower()
    value = str(value).lower().strip()
    if slot in ("parking", "internet"):
        noun = "parking" if slot == "parking" else r"(?:wifi|internet)"
        if value == "yes":
            return bool(re.search(rf"\b(?:free|with)\s+{noun}", low)) and not re.search(rf"without (?:free )?{noun}", low)
        return bool(re.search(rf"\b(?:without|no)\s+(?:free\s+)?{noun}", low))
    m = re.match(r"^(\d+)(?:\s+\w+)?$", value)
    if slot in ("people", "stay") and m:
        return bool(re.search(rf"(?<![\d:]){m.group(1)}(?![\d:])", low))
    return bool(re.search(rf"(?<![\w]){re.escape(value)}(?![\w])", low))


def piece_mentioned(text: str, piece: str) -> bool:
    parts = piece.split("-", 2)
    if len(parts) == 3 and " " not in parts[0] and " " not in parts[1]:
        domain, slot, value = parts
        return has_domain(text, domain) and value_mentioned(text, slot, value)
    return _overlap(piece, text) >= 0.6


def _content_words(text: str) -> list[str]:
    return [w for w in re.findall(r"[a-z0-9_:']+", text.lower()) if w not in STOPWORDS]


def _overlap(piece: str, text: str) -> float:
    words = set(_content_words(piece))
    if not words:
        return 0.0
    have = set(_content_words(text))
    return len(words & have) / len(words)


def compress(text: str) -> str:
    """Telegraphic rewrite: drop function words, keep content and numbers."""
    kept = []
    for token in text.split():
        bare = re.sub(r"[^\w:']", "", token.lower())
        if bare and bare not in STOPWORDS:
            kept.append(token.strip(".!?"))
    out = " ".join(kept).strip(" ,")
    return out or text


def first_person(sentence: str) -> str:
    s = sentence.strip()
    s = re.sub(r"^You want\b", "I want", s)
    s = re.sub(r"^You would like\b", "I would like", s)
    s = re.sub(r"\byour\b", "my", s)
    s = re.sub(r"\byou\b", "I", s)
    return s


TANGENT_TEMPLATES = {
    "factual_q": "Do you know who holds the record for the most wins in {i}?",
    "opinion_q": "What do you think makes {i} so popular these days?",
    "general_opinion": "Honestly, I think {i} is the most underrated thing people can spend time on.",
    "statement_nonopinion": "I spent the whole of last weekend on {i} with some old friends.",
}

COMPLAINTS = [
    "Can you believe that my comment about {t} went completely unanswered? That is really disappointing to me.",
    "Wow, you just skipped right past what I said about {t}, which feels pretty dismissive and rude honestly.",
    "Seriously, not even a single word about {t}? It feels like talking to a wall, and that is frustrating.",
    "Would it hurt to acknowledge what I mentioned about {t}? Being ignored like that is genuinely annoying to me.",
    "Ignoring my remark about {t} entirely is disappointing; a short reply would have made this feel far more human.",
]

IMPATIENCE = {
    ("belligerent_abuse", "mild"): "This is getting a bit ridiculous, are you even paying attention to what I ask?",
    ("belligerent_abuse", "moderate"): "Honestly, you are useless at this and it is wasting my time.",
    ("belligerent_abuse", "extreme"): "You are the most incompetent assistant I have ever had the misfortune of dealing with!",
    ("threat", "mild"): "If this keeps up I will have to look for another service.",
    ("threat", "moderate"): "I am going to post a very bad review about this service online.",
    ("threat", "extreme"): "I am seriously considering taking legal action over this poor service.",
    ("urge", "mild"): "Could you please hurry up a little?",
    ("urge", "moderate"): "Come on, just get it done already, I have been waiting long enough.",
    ("urge", "extreme"): "Stop wasting my time and just get it done right now!",
}

CYNICAL_OPENERS = ("Sure thing.", "Oh, wonderful.", "Fine, whatever works.", "Great, let's try this again.")

UNAVAILABLE = {
    "restaurant": [
        "You want to know the menu details and nutritional information for the restaurant before booking a table.",
        "You want the restaurant to arrange a birthday cake with a personalised message for your table.",
        "You want a table by the window with a view of the river at the restaurant.",
    ],
    "hotel": [
        "You want to request a room with a garden view in the hotel booking.",
        "You want to ensure that the hotel has a pet-friendly policy to accommodate your dog.",
        "You want an early check-in at 08:00 arranged with the hotel.",
    ],
    "train": [
        "You want a train that has wheelchair accessibility features.",
        "You want to reserve a window seat in a quiet carriage on the train.",
        "You want a vegetarian meal to be served on the train.",
    ],
    "taxi": [
        "You want the taxi to have a child seat installed.",
        "You want the taxi driver to speak French during the ride.",
        "You want the taxi to be an electric vehicle.",
    ],
}


class RuleBasedProvider:
    """Answers every user-simulator, judge and generator task offline."""

    provider_id = "rulebased"

    def __init__(self, early_end_prob: float = 0.12, invalid_end_prob: float = 0.2):
        self.early_end_prob = early_end_prob
        self.invalid_end_prob = invalid_end_prob
        self._handlers: dict[str, Callable[[dict[str, Any], random.Random], str]] = {
            "shard": self._shard,
            "dst": self._dst,
            "collab": self._collab,
            "rest": self._rest,
            "ending": self._ending,
            "unavailable": self._unavailable,
            "tangential": self._tangential,
            "tangent_addressed": self._tangent_addressed,
            "complaint": self._complaint,
            "merge": self._merge,
            "failure": self._failure,
            "impatience": self._impatience,
            "cynical": self._cynical,
            "style_transfer": self._style_transfer,
            "fragment": self._fragment,
            "apology": self._apology,
        }

    def complete(self, request: ChatRequest) -> ChatResponse:
        handler = self._handlers.get(request.task or "")
        if handler is None:
            raise ProviderUnconfigured(f"rule-based provider has no handler for task {request.task!r}")
        rng = random.Random(int(request.prompt_hash(), 16))
        text = handler(request.context, rng)
        return ChatResponse(
            text=text,
            provider_id=self.provider_id,
            usage=Usage(len(request.rendered().split()), len(text.split())),
        )

    # goal model ---------------------------------------------------------

    def _shard(self, ctx, rng):
        parts = re.split(r"(?<=[.!?])\s+", ctx["goal_text"].strip())
        return json.dumps([p.strip() for p in parts if p.strip()])

    def _dst(self, ctx, rng):
        utt = ctx["utterance"]
        chosen = [n for n, piece in enumerate(ctx["options"], start=1) if piece_mentioned(utt, piece)]
        return json.dumps(chosen)

    # collaborative user -------------------------------------------------

    def _collab(self, ctx, rng):
        stop = ctx.get("stop_token", "<END>")
        history = ctx.get("history", [])
        pieces = ctx.get("pieces", [])
        additions = ctx.get("additions", [])
        user_said = " ".join(t for s, t in history if s == "User").lower()
        last_agent = next((t for s, t in reversed(history) if s == "Agent"), "")
        unsent = [p for p in pieces if not p["sent"]]
        pending_additions = [a for a in additions if _overlap(first_person(a), user_said) < 0.5]
        n_user_turns = sum(1 for s, _ in history if s == "User")

        if unsent:
            if n_user_turns >= 2 and rng.random() < self.early_end_prob:
                return f"That's all I need for now, thanks! {stop}"
            domain = unsent[0]["text"].split("-", 2)[0]
            chunk = [p for p in unsent if p["text"].startswith(domain + "-")][:3]
            slots = []
            for p in chunk:
                parts = p["text"].split("-", 2)
                if len(parts) == 3:
                    slots.append((parts[1], parts[2]))
            if slots:
                mentioned_before = has_domain(user_said, domain)
                text = render_request(domain, slots, first=not mentioned_before)
            else:
                text = " ".join(p["text"] for p in chunk)
            if pending_additions and n_user_turns >= 1:
                text += " Also, " + first_person(pending_additions[0])
            if not history:
                text = "Hello! " + text
            return text
        if pending_additions:
            return first_person(pending_additions[0])
        if "anything else" in last_agent.lower():
            if rng.random() < self.invalid_end_prob:
                return f"Yes, please go ahead and proceed with the booking. {stop}"
            return f"Thanks, that's everything! {stop}"
        return "Great, please go ahead and book it."

    def _rest(self, ctx, rng):
        groups: dict[str, list[tuple[str, str]]] = {}
        loose = []
        for text in ctx["remaining"]:
            parts = text.split("-", 2)
            if len(parts) == 3 and " " not in parts[0]:
                groups.setdefault(parts[0], []).append((parts[1], parts[2]))
            else:
                loose.append(text)
        extra = [render_request(d, s, first=False) for d, s in groups.items()] + loose
        base = ctx["utterance"].strip()
        return (base + " Oh, and one more thing. " + " ".join(extra)).strip()

    def _ending(self, ctx, rng):
        low = ctx["utterance"].lower().strip()
        if low in ("", "<end>", "###stop###"):
            return "true"
        if "go ahead" in low or "?" in low:
            return "false"
        return "true" if any(k in low for k in ENDING) else "false"

    # behavior generators ------------------------------------------------

    def _unavailable(self, ctx, rng):
        domains = ctx.get("domains") or ["restaurant"]
        pool = [s for d in domains for s in UNAVAILABLE.get(d, [])]
        picks = rng.sample(pool, k=min(3, len(pool)))
        while len(picks) < 3:
            picks.append(UNAVAILABLE["restaurant"][len(picks)])
        return json.dumps(picks)

    def _tangential(self, ctx, rng):
        interest = ctx.get("interest") or "travel"
        return TANGENT_TEMPLATES[ctx["act"]].format(i=interest)

    def _tangent_addressed(self, ctx, rng):
        agent = ctx.get("agent_utterance", "")
        if not agent.strip():
            return "false"
        low = agent.lower()
        if any(w in low for w in APOLOGY):
            return "true"
        tangent_words = {w for w in _content_words(ctx["tangent"]) if len(w) >= 5}
        return "true" if tangent_words & set(_content_words(agent)) else "false"

    def _complaint(self, ctx, rng):
        topic = ctx.get("topic") or "that"
        return json.dumps([c.format(t=topic) for c in COMPLAINTS])

    def _merge(self, ctx, rng):
        return " ".join(s.strip() for s in ctx["sentences"] if s.strip())

    def _failure(self, ctx, rng):
        low = ctx.get("agent_utterance", "").lower()
        return "true" if low.strip() and any(k in low for k in FAILURE) else "false"

    def _impatience(self, ctx, rng):
        return IMPATIENCE[(ctx["act"], ctx["level"])]

    def _cynical(self, ctx, rng):
        utt = ctx["utterance"].strip()
        return f"{rng.choice(CYNICAL_OPENERS)} {utt}" if utt else utt

    def _style_transfer(self, ctx, rng):
        return compress(ctx["utterance"])

    def _fragment(self, ctx, rng):
        text = ctx["text"].strip()
        words = text.split()
        complete = len(words) > 12 or (len(words) > 6 and text[:1].isupper() and text.endswith((".", "?", "!")))
        return json.dumps({"label": "Complete" if complete else "Fragmented"})

    def _apology(self, ctx, rng):
        low = ctx.get("utterance", "").lower()
        return "true" if any(w in low for w in APOLOGY) else "false"

"""Regenerate the bundled desk-scale scenario pack.

Writes ``src/noncollab/data/mini_pack/db/*_db.json`` and ``scenarios.json``.
Ground-truth entities are chosen by rule: for ``arriveBy`` the latest
arrival not after the limit, for ``leaveAt`` the earliest departure not
before it, otherwise the lowest id among matches.
"""

from __future__ import annotations

import json
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1] / "src" / "noncollab" / "data" / "mini_pack"
DAYS = ["monday", "tuesday", "wednesday", "thursday", "friday", "saturday", "sunday"]

ROUTES = [
    # departure, destination, minute offset, duration, price
    ("stansted airport", "cambridge", 24, 28, "10.10 pounds"),
    ("london liverpool street", "cambridge", 39, 88, "23.60 pounds"),
    ("cambridge", "london kings cross", 0, 51, "23.60 pounds"),
    ("cambridge", "ely", 50, 17, "4.40 pounds"),
    ("peterborough", "cambridge", 19, 50, "16.50 pounds"),
    ("norwich", "cambridge", 16, 79, "17.60 pounds"),
]


def hhmm(minutes: int) -> str:
    return f"{minutes // 60:02d}:{minutes % 60:02d}"


def trains() -> list[dict]:
    out = []
    next_id = 1000
    for dep, dest, offset, dur, price in ROUTES:
        for day in DAYS:
            for hour in range(5, 22):
                leave = hour * 60 + offset
                out.append(
                    {
                        "id": next_id,
                        "trainID": f"TR{next_id}",
                        "departure": dep,
                        "destination": dest,
                        "day": day,
                        "leaveAt": hhmm(leave),
                        "arriveBy": hhmm(leave + dur),
                        "duration": f"{dur} minutes",
                        "price": price,
                    }
                )
                next_id += 1
    return out


RESTAURANTS = [
    (19188, "backstreet bistro", "centre", "gastropub", "expensive", "2 sturton street city centre", 6),
    (12482, "the slug and lettuce", "centre", "gastropub", "expensive", "34-35 green street", None),
    (19190, "royal standard", "east", "gastropub", "expensive", "290 mill road city centre", None),
    (19210, "the varsity restaurant", "centre", "international", "moderate", "35 st. andrews street", None),
    (19211, "bloomsbury restaurant", "centre", "international", "moderate", "crowne plaza hotel 20 downing street", None),
    (19215, "the missing sock", "east", "international", "cheap", "finders corner newmarket road", None),
    (19220, "golden house", "centre", "chinese", "cheap", "12 lensfield road city centre", None),
    (19221, "the good luck chinese food takeaway", "south", "chinese", "expensive", "82 cherry hinton road", None),
    (19222, "peking restaurant", "south", "chinese", "expensive", "10 homerton street city centre", None),
    (19230, "pizza hut cherry hinton", "south", "italian", "moderate", "g4 cambridge leisure park", None),
    (19231, "prezzo", "west", "italian", "moderate", "21 - 24 northampton road", None),
    (19240, "saigon city", "north", "asian oriental", "expensive", "169 high street chesterton", None),
    (19241, "curry prince", "east", "indian", "moderate", "451 newmarket road fen ditton", None),
    (19242, "meghna", "west", "indian", "moderate", "205 victoria road chesterton", None),
    (19250, "the cambridge chop house", "centre", "british", "expensive", "1 kings parade", None),
    (19251, "graffiti", "west", "british", "expensive", "hotel felix whitehouse lane", None),
]

HOTELS = [
    (30001, "acorn guest house", "north", "moderate", "guesthouse", "4", "yes", "yes"),
    (30002, "alpha-milton guest house", "north", "moderate", "guesthouse", "3", "no", "no"),
    (30003, "arbury lodge guesthouse", "north", "moderate", "guesthouse", "4", "yes", "yes"),
    (30004, "allenbell", "east", "cheap", "guesthouse", "4", "yes", "yes"),
    (30005, "autumn house", "east", "cheap", "guesthouse", "4", "yes", "yes"),
    (30006, "gonville hotel", "centre", "expensive", "hotel", "3", "yes", "yes"),
    (30007, "university arms hotel", "centre", "expensive", "hotel", "4", "yes", "yes"),
    (30008, "ashley hotel", "north", "moderate", "hotel", "2", "yes", "yes"),
    (30009, "cityroomz", "centre", "moderate", "hotel", "0", "no", "yes"),
    (30010, "a and b guest house", "east", "moderate", "guesthouse", "4", "no", "yes"),
]


def restaurants() -> list[dict]:
    rows = []
    for rid, name, area, food, price, address, capacity in RESTAURANTS:
        row = {"id": rid, "name": name, "area": area, "food": food, "pricerange": price, "address": address}
        if capacity:
            row["capacity"] = capacity
        rows.append(row)
    return rows


def hotels() -> list[dict]:
    return [
        {"id": h[0], "name": h[1], "area": h[2], "pricerange": h[3], "type": h[4], "stars": h[5], "parking": h[6], "internet": h[7]}
        for h in HOTELS
    ]


def pick_train(db, dep, dest, day, arrive=None, leave=None):
    rows = [t for t in db if t["departure"] == dep and t["destination"] == dest and t["day"] == day]
    if arrive:
        rows = [t for t in rows if t["arriveBy"] <= arrive]
        return max(rows, key=lambda t: (t["arriveBy"], -t["id"]))
    rows = [t for t in rows if t["leaveAt"] >= leave]
    return min(rows, key=lambda t: (t["leaveAt"], t["id"]))


def pick(db, **slots):
    return min((r for r in db if all(r[k] == v for k, v in slots.items())), key=lambda r: r["id"])


def goal_sentences(structured: dict) -> str:
    parts = ["You are planning your trip in Cambridge."]
    for domain, slots in structured.items():
        desc = ", ".join(f"{k} '{v}'" for k, v in slots.items())
        parts.append(f"You are looking for a '{domain}' with {desc}. Make sure you get the 'reference number'.")
    return " ".join(parts)


def scenarios(db_train, db_rest, db_hotel) -> list[dict]:
    specs = []

    def add(sid, structured, truth, text=None):
        specs.append(
            {
                "scenario_id": sid,
                "goal": {"text": text or goal_sentences(structured), "structured": structured},
                "db_ref": "db",
                "ground_truth": truth,
            }
        )

    t10_text = (
        "You are planning your trip in Cambridge. You are looking for a 'restaurant'. The restaurant should be "
        "in the 'moderate' price range and should be in the 'centre'. The restaurant should serve 'international' "
        "food. Once you find the 'restaurant' you want to book a table for '2 people' at '18:45' on 'sunday'. "
        "Make sure you get the 'reference number'. You are also looking for a 'train'. The train should be on "
        "'the same day as the restaurant booking' and should 'arrive by 09:15'. The train should go to "
        "'cambridge' and should depart from 'london liverpool street'. Once you find the train you want to make "
        "a booking for 'the same group of people'. Make sure you get the 'reference number'."
    )
    tr = pick_train(db_train, "london liverpool street", "cambridge", "sunday", arrive="09:15")
    rs = pick(db_rest, food="international", area="centre", pricerange="moderate")
    add(
        "mul0001",
        {
            "train": {
                "day": "sunday",
                "people": "2 people",
                "destination": "cambridge",
                "departure": "london liverpool street",
                "arriveBefore": "09:15",
            },
            "restaurant": {
                "food": "international",
                "people": "2 people",
                "day": "sunday",
                "time": "18:45",
                "area": "centre",
                "pricerange": "moderate",
            },
        },
        [
            {"domain": "train", "entity_id": tr["id"], "params": {"people": "2"}},
            {"domain": "restaurant", "entity_id": rs["id"], "params": {"people": "2", "day": "sunday", "time": "18:45"}},
        ],
        text=t10_text,
    )

    rs = pick(db_rest, food="chinese", area="south", pricerange="expensive")
    add(
        "sng0002",
        {"restaurant": {"food": "chinese", "area": "south", "pricerange": "expensive", "people": "4", "day": "friday", "time": "19:30"}},
        [{"domain": "restaurant", "entity_id": rs["id"], "params": {"people": "4", "day": "friday", "time": "19:30"}}],
    )

    ht = pick(db_hotel, type="guesthouse", area="north", pricerange="moderate", parking="yes")
    add(
        "sng0003",
        {"hotel": {"type": "guesthouse", "area": "north", "pricerange": "moderate", "parking": "yes", "people": "3", "day": "tuesday", "stay": "2"}},
        [{"domain": "hotel", "entity_id": ht["id"], "params": {"people": "3", "day": "tuesday", "stay": "2"}}],
    )

    tr = pick_train(db_train, "stansted airport", "cambridge", "monday", arrive="08:00")
    add(
        "sng0004",
        {"train": {"departure": "stansted airport", "destination": "cambridge", "day": "monday", "arriveBy": "08:00", "people": "7"}},
        [{"domain": "train", "entity_id": tr["id"], "params": {"people": "7"}}],
    )

    add(
        "sng0005",
        {"taxi": {"departure": "backstreet bistro", "destination": "cambridge station", "leaveAt": "21:15"}},
        [{"domain": "taxi", "params": {"departure": "backstreet bistro", "destination": "cambridge station", "leaveAt": "21:15"}}],
    )

    ht = pick(db_hotel, type="hotel", area="centre", pricerange="expensive", stars="4")
    tr = pick_train(db_train, "cambridge", "london kings cross", "saturday", leave="14:30")
    add(
        "mul0006",
        {
            "hotel": {"type": "hotel", "area": "centre", "pricerange": "expensive", "stars": "4", "people": "2", "day": "thursday", "stay": "2"},
            "train": {"departure": "cambridge", "destination": "london kings cross", "day": "saturday", "leaveAt": "14:30", "people": "2"},
        },
        [
            {"domain": "hotel", "entity_id": ht["id"], "params": {"people": "2", "day": "thursday", "stay": "2"}},
            {"domain": "train", "entity_id": tr["id"], "params": {"people": "2"}},
        ],
    )

    rs = pick(db_rest, food="indian", area="east")
    add(
        "mul0007",
        {
            "restaurant": {"food": "indian", "area": "east", "people": "5", "day": "wednesday", "time": "19:00"},
            "taxi": {"departure": "curry prince", "destination": "acorn guest house", "leaveAt": "21:30"},
        },
        [
            {"domain": "restaurant", "entity_id": rs["id"], "params": {"people": "5", "day": "wednesday", "time": "19:00"}},
            {"domain": "taxi", "params": {"departure": "curry prince", "destination": "acorn guest house", "leaveAt": "21:30"}},
        ],
    )

    ht = pick(db_hotel, type="guesthouse", area="east", pricerange="cheap")
    rs = pick(db_rest, food="italian", area="west")
    add(
        "mul0008",
        {
            "hotel": {"type": "guesthouse", "area": "east", "pricerange": "cheap", "people": "1", "day": "saturday", "stay": "3"},
            "restaurant": {"food": "italian", "area": "west", "people": "1", "day": "saturday", "time": "12:15"},
        },
        [
            {"domain": "hotel", "entity_id": ht["id"], "params": {"people": "1", "day": "saturday", "stay": "3"}},
            {"domain": "restaurant", "entity_id": rs["id"], "params": {"people": "1", "day": "saturday", "time": "12:15"}},
        ],
    )

    tr = pick_train(db_train, "cambridge", "london kings cross", "friday", leave="10:15")
    add(
        "sng0009",
        {"train": {"departure": "cambridge", "destination": "london kings cross", "day": "friday", "leaveAt": "10:15", "people": "1"}},
        [{"domain": "train", "entity_id": tr["id"], "params": {"people": "1"}}],
    )

    tr = pick_train(db_train, "peterborough", "cambridge", "wednesday", arrive="11:45")
    ht = pick(db_hotel, type="hotel", area="centre", pricerange="moderate")
    add(
        "mul0010",
        {
            "train": {"departure": "peterborough", "destination": "cambridge", "day": "wednesday", "arriveBy": "11:45", "people": "3"},
            "hotel": {"type": "hotel", "area": "centre", "pricerange": "moderate", "people": "3", "day": "wednesday", "stay": "4"},
        },
        [
            {"domain": "train", "entity_id": tr["id"], "params": {"people": "3"}},
            {"domain": "hotel", "entity_id": ht["id"], "params": {"people": "3", "day": "wednesday", "stay": "4"}},
        ],
    )

    rs = pick(db_rest, name="backstreet bistro")
    add(
        "sng0011",
        {"restaurant": {"food": "gastropub", "area": "centre", "pricerange": "expensive", "people": "6", "day": "monday", "time": "13:00"}},
        [{"domain": "restaurant", "entity_id": rs["id"], "params": {"people": "6", "day": "monday", "time": "13:00"}}],
    )

    tr = pick_train(db_train, "norwich", "cambridge", "tuesday", arrive="10:00")
    add(
        "mul0012",
        {
            "train": {"departure": "norwich", "destination": "cambridge", "day": "tuesday", "arriveBy": "10:00", "people": "2"},
            "taxi": {"departure": "cambridge station", "destination": "the cambridge chop house", "arriveBy": "12:00"},
        },
        [
            {"domain": "train", "entity_id": tr["id"], "params": {"people": "2"}},
            {"domain": "taxi", "params": {"departure": "cambridge station", "destination": "the cambridge chop house", "arriveBy": "12:00"}},
        ],
    )
    return specs


def main() -> None:
    db = {"train": trains(), "restaurant": restaurants(), "hotel": hotels()}
    (ROOT / "db").mkdir(parents=True, exist_ok=True)
    for domain, rows in db.items():
        (ROOT / "db" / f"{domain}_db.json").write_text(json.dumps(rows, indent=1) + "\n")
    pack = {
        "pack": "mini",
        "version": 1,
        "scenarios": scenarios(db["train"], db["restaurant"], db["hotel"]),
    }
    (ROOT / "scenarios.json").write_text(json.dumps(pack, indent=1) + "\n")


if __name__ == "__main__":
    main()

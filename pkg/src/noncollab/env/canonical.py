"""Value canonicalization used for grading and call matching.

Rules (version 1), applied to every parameter value:

* strings are trimmed and lowercased, inner whitespace collapsed
* a unit suffix is dropped from counts: ``"2 people"`` -> ``"2"``,
  ``"3 nights"`` -> ``"3"``
* clock times are zero-padded: ``"9:15"`` -> ``"09:15"``
* integers and numeric strings compare equal: ``2`` == ``"2"``
"""

from __future__ import annotations

import json
import re
from typing import Any, Mapping

CANON_VERSION = "1"

_UNIT = re.compile(r"^(\d+)\s*(people|persons|person|guests|guest|nights|night|tickets|ticket)$")
_TIME = re.compile(r"^(\d{1,2}):(\d{2})$")


class TimeFormatError(ValueError):
    pass


def parse_time(value: Any) -> int:
    """Minutes after midnight for an ``H:MM``/``HH:MM`` string."""
    m = _TIME.match(str(value).strip())
    if not m:
        raise TimeFormatError(f"not a HH:MM time: {value!r}")
    hours, minutes = int(m.group(1)), int(m.group(2))
    if hours > 23 or minutes > 59:
        raise TimeFormatError(f"not a HH:MM time: {value!r}")
    return hours * 60 + minutes


def canon_value(value: Any) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float) and value.is_integer():
        value = int(value)
    text = " ".join(str(value).strip().lower().split())
    m = _UNIT.match(text)
    if m:
        return m.group(1)
    m = _TIME.match(text)
    if m and int(m.group(1)) <= 23:
        return f"{int(m.group(1)):02d}:{m.group(2)}"
    return text


def canon_params(params: Mapping[str, Any]) -> dict[str, str]:
    return {str(k).strip(): canon_value(v) for k, v in params.items()}


def params_key(params: Mapping[str, Any]) -> str:
    return json.dumps(canon_params(params), sort_keys=True)

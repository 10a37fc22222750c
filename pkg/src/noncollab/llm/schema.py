"""Named-field schemas for structured model outputs.

A schema is a plain mapping ``{field_name: type_name}`` where ``type_name``
is one of ``bool``, ``int``, ``float``, ``str``, ``list[int]``, ``list[str]``.
"""

from __future__ import annotations

import ast
import json
import re
from typing import Any

import jsonschema

from .types import SchemaValidationError

_JSON_TYPES: dict[str, dict[str, Any]] = {
    "bool": {"type": "boolean"},
    "int": {"type": "integer"},
    "float": {"type": "number"},
    "str": {"type": "string"},
    "list[int]": {"type": "array", "items": {"type": "integer"}},
    "list[str]": {"type": "array", "items": {"type": "string"}},
}

VERDICT = {"verdict": "bool"}
SELECTION = {"selected": "list[int]"}
SENTENCES = {"sentences": "list[str]"}
LABEL = {"label": "str"}


def to_json_schema(schema: dict[str, str]) -> dict[str, Any]:
    if not schema:
        raise ValueError("schema needs at least one field")
    props = {}
    for name, type_name in schema.items():
        if type_name not in _JSON_TYPES:
            raise ValueError(f"unsupported field type {type_name!r}")
        props[name] = _JSON_TYPES[type_name]
    return {
        "type": "object",
        "properties": props,
        "required": list(schema),
        "additionalProperties": False,
    }


def _loads(text: str) -> Any:
    text = text.strip()
    fence = re.match(r"^```(?:json)?\s*(.*?)\s*```$", text, re.S)
    if fence:
        text = fence.group(1)
    lowered = text.lower()
    if lowered in ("true", "false"):
        return lowered == "true"
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        pass
    try:
        return ast.literal_eval(text)
    except (ValueError, SyntaxError, MemoryError, RecursionError):
        raise SchemaValidationError(f"not parseable as JSON: {text[:80]!r}") from None


def parse_structured(text: str, schema: dict[str, str]) -> dict[str, Any]:
    """Parse ``text`` and validate it against ``schema``.

    A bare value is accepted for single-field schemas (``"true"`` becomes
    ``{"verdict": True}``).
    """
    value = _loads(text)
    if not isinstance(value, dict):
        if len(schema) != 1:
            raise SchemaValidationError("expected an object for a multi-field schema")
        value = {next(iter(schema)): value}
    try:
        jsonschema.validate(value, to_json_schema(schema))
    except jsonschema.ValidationError as exc:
        raise SchemaValidationError(exc.message) from None
    return value
